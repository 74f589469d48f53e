//! Moments of sectional curvature over the Grassmannian of 2-planes.
//!
//! For an algebraic curvature tensor `R` on `R^m` the `k`-th moment is
//!
//! ```text
//! Psi_k(R) = (sum d^2)^k |_0  exp( sum_{r>0} tr(J_X^r) / (2r) )  /  [m+2k-2]_{2k}
//! ```
//!
//! where `J_X = R_{.,X}X` is the Jacobi operator. Only the homogeneous
//! degree-`2k` part of the exponential survives the `k`-fold Laplacian at the
//! origin, so all products are truncated at degree `2k`.

mod integrate;

use std::env;

use num_traits::{One, Zero};

use crate::curvature::{CurvatureTensor, JacobiSpectrumModel};
use crate::error::{Error, Result};
use crate::poly::rational::{int, rat, to_f64};
use crate::poly::{falling_factorial_int, gen_binomial, Polynomial, Rational};

pub use integrate::{det_generating_check, gaussian_integrate, sphere_integrate, volumes, Volumes};

pub const DEFAULT_DEGREE_BUDGET: usize = 6;
pub const DEGREE_BUDGET_ENV: &str = "CURVMO_DEGREE_BUDGET";

/// Largest moment order the exact tensor path will attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBudget(pub usize);

impl Default for DegreeBudget {
    fn default() -> Self {
        DegreeBudget(DEFAULT_DEGREE_BUDGET)
    }
}

impl DegreeBudget {
    /// Reads `CURVMO_DEGREE_BUDGET`, falling back to the default when unset
    /// or unparsable.
    pub fn from_env() -> Self {
        env::var(DEGREE_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(DegreeBudget::default, DegreeBudget)
    }

    pub fn check(&self, k: usize) -> Result<()> {
        if k > self.0 {
            return Err(Error::DegreeBudgetExceeded { k, budget: self.0 });
        }
        Ok(())
    }
}

/// Exact moments `Psi_0 .. Psi_K` of a curvature tensor in dimension `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    dimension: usize,
    values: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(dimension: usize, values: Vec<Rational>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::DimensionTooSmall { min: 1, found: 0 });
        }
        match values.first() {
            Some(v) if v.is_one() => Ok(MomentSequence { dimension, values }),
            _ => Err(Error::InvalidParameter("zeroth moment must equal 1".into())),
        }
    }

    /// All moments equal to one (unit space form).
    pub fn ones(dimension: usize, k_max: usize) -> Self {
        MomentSequence { dimension, values: vec![Rational::one(); k_max + 1] }
    }

    /// Moments of a flat factor: `1, 0, 0, ...`.
    pub fn flat(dimension: usize, k_max: usize) -> Self {
        let mut values = vec![Rational::zero(); k_max + 1];
        values[0] = Rational::one();
        MomentSequence { dimension, values }
    }

    /// Moments `c^k` of a space form of sectional curvature `c`.
    pub fn space_form(dimension: usize, c: &Rational, k_max: usize) -> Self {
        let mut values = Vec::with_capacity(k_max + 1);
        let mut acc = Rational::one();
        for _ in 0..=k_max {
            values.push(acc.clone());
            acc *= c;
        }
        MomentSequence { dimension, values }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    /// Highest available order `K`.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn truncated(&self, k_max: usize) -> MomentSequence {
        MomentSequence { dimension: self.dimension, values: self.values[..=k_max.min(self.max_order())].to_vec() }
    }

    /// Power means `Psi_{2j}^{1/(2j)}` for `j = 1 .. K/2`.
    pub fn even_power_means(&self) -> Vec<f64> {
        (1..=self.max_order() / 2)
            .map(|j| to_f64(&self.values[2 * j]).max(0.0).powf(1.0 / (2 * j) as f64))
            .collect()
    }

    /// Jensen: the even power means never decrease.
    pub fn power_means_monotone(&self) -> bool {
        self.even_power_means().windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

/// Traces `tr J^r`, `r = 1 ..= k_max`, as homogeneous polynomials of degree `2r`.
fn jacobi_power_traces(jacobi: &[Vec<Polynomial>], k_max: usize) -> Result<Vec<Polynomial>> {
    let m = jacobi.len();
    let trace = |p: &[Vec<Polynomial>]| -> Result<Polynomial> {
        let mut t = Polynomial::zero(m);
        for (a, row) in p.iter().enumerate() {
            t.add_scaled(&row[a], &Rational::one())?;
        }
        Ok(t)
    };
    let mut traces = Vec::with_capacity(k_max);
    if k_max == 0 {
        return Ok(traces);
    }
    traces.push(trace(jacobi)?);
    let mut power: Vec<Vec<Polynomial>> = jacobi.to_vec();
    for r in 2..=k_max {
        let last = r == k_max;
        let mut next = vec![vec![Polynomial::zero(m); m]; m];
        for a in 0..m {
            for c in 0..m {
                // the final power only contributes through its trace
                if last && a != c {
                    continue;
                }
                let entry = &mut next[a][c];
                for b in 0..m {
                    if !power[a][b].is_zero() && !jacobi[b][c].is_zero() {
                        entry.add_product(&power[a][b], &jacobi[b][c], None)?;
                    }
                }
            }
        }
        traces.push(trace(&next)?);
        power = next;
    }
    Ok(traces)
}

/// `Psi_0 ..= Psi_{k_max}` of `r` by the exact polynomial route.
pub fn psi_sequence(r: &CurvatureTensor, k_max: usize, budget: DegreeBudget) -> Result<MomentSequence> {
    budget.check(k_max)?;
    let m = r.dimension();
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    let jacobi = r.jacobi_matrix()?;
    let traces = jacobi_power_traces(&jacobi, k_max)?;
    let mut log_series = Polynomial::zero(m);
    for (i, t) in traces.iter().enumerate() {
        let order = i as i64 + 1;
        log_series.add_scaled(t, &rat(1, 2 * order))?;
    }
    let generating = log_series.exp_truncated(2 * k_max as u32)?;
    let mut values = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let part = generating.homogeneous_part(2 * k as u32);
        let top = part.laplacian_power(k as u32).eval_at_zero();
        let norm = falling_factorial_int(m as i64 + 2 * k as i64 - 2, 2 * k as i64);
        values.push(top / norm);
    }
    MomentSequence::new(m, values)
}

/// The `k`-th sectional curvature moment, exact, within the default budget.
pub fn psi(r: &CurvatureTensor, k: usize) -> Result<Rational> {
    psi_with_budget(r, k, DegreeBudget::default())
}

pub fn psi_with_budget(r: &CurvatureTensor, k: usize, budget: DegreeBudget) -> Result<Rational> {
    Ok(psi_sequence(r, k, budget)?.values[k].clone())
}

/// `(-1)^k / C(-(m-1)/2, k)`: the normalized `k`-fold Laplacian of `g(X,X)^k`.
pub fn norm_power_weight(m: usize, k: usize) -> Rational {
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    sign / gen_binomial(&rat(-(m as i64 - 1), 2), k as i64)
}

/// Moments from an `X`-independent Jacobi spectrum via the Newton series of
/// `prod_i (1 - lambda_i u)^{-mult_i / 2}`.
pub fn psi_sequence_from_spectrum(model: &JacobiSpectrumModel, k_max: usize) -> Result<MomentSequence> {
    let m = model.dimension();
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    let mut series = vec![Rational::zero(); k_max + 1];
    series[0] = Rational::one();
    for (scale, mult) in model.pairs() {
        if scale.is_zero() {
            continue;
        }
        let exponent = rat(-(*mult as i64), 2);
        let neg = -scale;
        let mut factor = Vec::with_capacity(k_max + 1);
        let mut power = Rational::one();
        for j in 0..=k_max {
            factor.push(gen_binomial(&exponent, j as i64) * &power);
            power *= &neg;
        }
        let mut next = vec![Rational::zero(); k_max + 1];
        for (i, a) in series.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().enumerate().take(k_max + 1 - i) {
                next[i + j] += a * b;
            }
        }
        series = next;
    }
    let values = series.into_iter().enumerate().map(|(k, c)| c * norm_power_weight(m, k)).collect();
    MomentSequence::new(m, values)
}

pub fn psi_from_spectrum(model: &JacobiSpectrumModel, k: usize) -> Result<Rational> {
    Ok(psi_sequence_from_spectrum(model, k)?.values[k].clone())
}

/// Lower estimate of `max |sec|` from the last even moment.
#[derive(Clone, Debug, PartialEq)]
pub struct SupEstimate {
    pub value: f64,
    /// `Psi_{2j}^{1/(2j)}` for `j = 1, 2, ...`; nondecreasing.
    pub sequence: Vec<f64>,
}

pub fn sup_sec_estimate(moments: &MomentSequence) -> Result<SupEstimate> {
    if moments.max_order() < 2 {
        return Err(Error::InsufficientMoments { needed: 3, available: moments.values.len() });
    }
    let sequence = moments.even_power_means();
    let value = *sequence.last().expect("at least one even moment");
    Ok(SupEstimate { value, sequence })
}
