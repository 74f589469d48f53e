use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::rational::{factorial, int, pow, rat};
use crate::poly::{falling_factorial, Polynomial, Rational};

/// Expectation of `p` under the standard Gaussian on `R^m`:
/// `sum_j (sum d^2)^j p |_0 / (2^j j!)`.
pub fn gaussian_integrate(p: &Polynomial) -> Rational {
    let Some(top) = p.degree() else {
        return Rational::zero();
    };
    let mut total = p.eval_at_zero();
    let mut current = p.clone();
    for j in 1..=top / 2 {
        current = current.laplacian();
        let denom = pow(&int(2), j) * factorial(j as u64);
        total += current.eval_at_zero() / denom;
    }
    total
}

/// Average of a homogeneous `p` over the unit sphere of `R^m`.
pub fn sphere_integrate(p: &Polynomial) -> Result<Rational> {
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    let degree = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if degree % 2 == 1 {
        return Ok(Rational::zero());
    }
    let half = degree / 2;
    let m = p.dimension() as i64;
    let norm = pow(&int(4), half)
        * factorial(half as u64)
        * falling_factorial(&(rat(m, 2) + int(half as i64 - 1)), half as i64);
    Ok(p.laplacian_power(half).eval_at_zero() / norm)
}

/// Compares `exp(sum_{r>0} (2t)^r tr(F^r) / (2r))` against `det(I - 2tF)^{-1/2}`.
///
/// Returns `(series, closed_form)`.
pub fn det_generating_check(f: &DMatrix<f64>, t: f64) -> Result<(f64, f64)> {
    let m = f.nrows();
    if f.ncols() != m {
        return Err(Error::DimensionMismatch { expected: m, found: f.ncols() });
    }
    let scaled = f * (2.0 * t);
    let radius = scaled
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if radius >= 1.0 {
        return Err(Error::SeriesDivergent { radius });
    }
    let mut sum = 0.0;
    let mut power = scaled.clone();
    let mut r = 1usize;
    loop {
        let term = power.trace() / (2 * r) as f64;
        sum += term;
        // |tr A^r| <= m rho^r bounds every later term
        let tail_bound = m as f64 * radius.powi(r as i32 + 1) / (1.0 - radius);
        if radius == 0.0 || (term.abs() < 1e-16 && tail_bound < 1e-16) || r > 100_000 {
            break;
        }
        power = &power * &scaled;
        r += 1;
    }
    let det = (DMatrix::<f64>::identity(m, m) - scaled).determinant();
    Ok((sum.exp(), det.powf(-0.5)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Volumes {
    pub sphere: f64,
    pub stiefel: f64,
    pub grassmannian: f64,
}

/// `Gamma(n/2)` for positive integers `n`.
fn gamma_half(n: usize) -> f64 {
    let (mut value, mut x) = if n % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while x + 0.5 < n as f64 / 2.0 {
        value *= x;
        x += 1.0;
    }
    value
}

fn sphere_volume(m: usize) -> f64 {
    2.0 * PI.powf(m as f64 / 2.0) / gamma_half(m)
}

/// Volumes of the unit sphere `S^{m-1}`, the Stiefel manifold of orthonormal
/// 2-frames and the Grassmannian of 2-planes in `R^m`.
pub fn volumes(m: usize) -> Result<Volumes> {
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    let sphere = sphere_volume(m);
    let stiefel = sphere * sphere_volume(m - 1);
    Ok(Volumes { sphere, stiefel, grassmannian: stiefel / (4.0 * PI) })
}

