use rand::Rng;
use rand_distr::{Beta, Distribution};

use crate::error::{Error, Result};
use crate::poly::rational::{int, rat, to_f64};
use crate::poly::{gen_binomial, Rational};
use crate::quadrature::integrate;

/// `k`-th moment of the `(a, b)` density on `[1, 4]`:
/// `sum_r 4^r C(-(2a+1)/2, r) C(-(b+1), k-r) / C(-(2a+2b+3)/2, k)`.
pub fn cross_moment(a: u32, b: u32, k: u32) -> Rational {
    let (a, b, k) = (a as i64, b as i64, k as i64);
    let top = rat(-(2 * a + 1), 2);
    let rest = int(-(b + 1));
    let mut sum = Rational::from_integer(0.into());
    let mut four = int(1);
    for r in 0..=k {
        sum += &four * gen_binomial(&top, r) * gen_binomial(&rest, k - r);
        four *= int(4);
    }
    sum / gen_binomial(&rat(-(2 * a + 2 * b + 3), 2), k)
}

pub fn cross_sequence(a: u32, b: u32, k_max: u32) -> Vec<Rational> {
    (0..=k_max).map(|k| cross_moment(a, b, k)).collect()
}

/// Density `(2a+1)/6 C(a+b+1/2, b) ((s-1)/3)^{(2a-1)/2} ((4-s)/3)^b` on `[1, 4]`.
///
/// `(0, n-2)` is complex projective space, `(1, 2n-3)` quaternionic
/// projective space and `(3, 3)` the Cayley plane, each normalized to
/// sectional curvature in `[1, 4]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossDensity {
    pub a: u32,
    pub b: u32,
}

impl CrossDensity {
    pub fn new(a: u32, b: u32) -> Self {
        CrossDensity { a, b }
    }

    pub fn cpn(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, found: n as usize });
        }
        Ok(CrossDensity::new(0, n - 2))
    }

    pub fn hpn(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, found: n as usize });
        }
        Ok(CrossDensity::new(1, 2 * n - 3))
    }

    pub fn op2() -> Self {
        CrossDensity::new(3, 3)
    }

    pub fn prefactor(&self) -> Rational {
        rat(2 * self.a as i64 + 1, 6) * gen_binomial(&(rat(1, 2) + int((self.a + self.b) as i64)), self.b as i64)
    }

    pub fn support(&self) -> (f64, f64) {
        (1.0, 4.0)
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(1.0..=4.0).contains(&s) {
            return Err(Error::OutsideSupport { value: s, lo: 1.0, hi: 4.0 });
        }
        let u = ((s - 1.0) / 3.0).sqrt();
        if u == 0.0 {
            return Ok(if self.a == 0 { f64::INFINITY } else { 0.0 });
        }
        let v = (4.0 - s) / 3.0;
        Ok(to_f64(&self.prefactor()) * u.powi(2 * self.a as i32 - 1) * v.powi(self.b as i32))
    }

    /// `int s^k density(s) ds`, computed in `u = sqrt((s-1)/3)` where the
    /// integrand `6 pref (1+3u^2)^k u^{2a} (1-u^2)^b` is a polynomial.
    pub fn moment_quadrature(&self, k: u32) -> f64 {
        let pref = 6.0 * to_f64(&self.prefactor());
        let (a, b) = (self.a as i32, self.b as i32);
        integrate(
            |u| {
                let u2 = u * u;
                pref * (1.0 + 3.0 * u2).powi(k as i32) * u.powi(2 * a) * (1.0 - u2).powi(b)
            },
            0.0,
            1.0,
            1e-15,
            1e-14,
        )
        .value
    }

    pub fn moment(&self, k: u32) -> Rational {
        cross_moment(self.a, self.b, k)
    }

    /// `s = 1 + 3V` with `V ~ Beta(a + 1/2, b + 1)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let beta = Beta::new(self.a as f64 + 0.5, self.b as f64 + 1.0).expect("positive parameters");
        1.0 + 3.0 * beta.sample(rng)
    }
}

pub fn cross_density_eval(a: u32, b: u32, s: f64) -> Result<f64> {
    CrossDensity::new(a, b).eval(s)
}

pub fn cross_density_moment_quadrature(a: u32, b: u32, k: u32) -> f64 {
    CrossDensity::new(a, b).moment_quadrature(k)
}
