use num_traits::Zero;

use crate::error::{Error, Result};
use crate::moments::MomentSequence;
use crate::poly::rational::{factorial, int, rat};
use crate::poly::{falling_factorial_int, gen_binomial, Rational};

/// `C(k,r) [m+2r-2]_{2r} [n+2(k-r)-2]_{2(k-r)} / [m+n+2k-2]_{2k}`.
///
/// This is also `E[x^{2r} y^{2(k-r)}]` times `C(k,r)` on the 2-simplex
/// with density proportional to `x^{m-2} y^{n-2}`. A one-dimensional factor
/// (`m = 1`) gives zero for every `r > 0`.
pub fn product_weight(m: usize, n: usize, k: usize, r: usize) -> Rational {
    let (m, n, k, r) = (m as i64, n as i64, k as i64, r as i64);
    gen_binomial(&int(k), r) * falling_factorial_int(m + 2 * r - 2, 2 * r)
        * falling_factorial_int(n + 2 * (k - r) - 2, 2 * (k - r))
        / falling_factorial_int(m + n + 2 * k - 2, 2 * k)
}

/// `k`-th sectional curvature moment of a Riemannian product from the
/// moments of its factors.
pub fn product_moment(psi_m: &MomentSequence, m: usize, psi_n: &MomentSequence, n: usize, k: usize) -> Result<Rational> {
    for (seq, dim) in [(psi_m, m), (psi_n, n)] {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { min: 1, found: 0 });
        }
        if seq.dimension() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: seq.dimension() });
        }
        if seq.max_order() < k {
            return Err(Error::InsufficientMoments { needed: k + 1, available: seq.values().len() });
        }
    }
    let mut sum = Rational::zero();
    for r in 0..=k {
        let w = product_weight(m, n, k, r);
        if !w.is_zero() {
            sum += w * &psi_m.values()[r] * &psi_n.values()[k - r];
        }
    }
    Ok(sum)
}

pub fn product_sequence(psi_m: &MomentSequence, psi_n: &MomentSequence, k_max: usize) -> Result<MomentSequence> {
    let (m, n) = (psi_m.dimension(), psi_n.dimension());
    let values = (0..=k_max).map(|k| product_moment(psi_m, m, psi_n, n, k)).collect::<Result<Vec<_>>>()?;
    MomentSequence::new(m + n, values)
}

/// `int x_1^{k_1} ... x_n^{k_n} (1 - x_1 - ... - x_n)^{k_0}` over the
/// standard simplex: `k_0! k_1! ... k_n! / (n + sum k_i)!`.
pub fn simplex_integral(exponents: &[u32]) -> Result<Rational> {
    if exponents.is_empty() {
        return Err(Error::InvalidParameter("at least one exponent required".into()));
    }
    let n = exponents.len() as u64 - 1;
    let num = exponents.iter().fold(int(1), |acc, &k| acc * factorial(k as u64));
    let total: u64 = exponents.iter().map(|&k| k as u64).sum();
    Ok(num / factorial(n + total))
}

/// Moments of the Grassmannian of 2-planes in `R^n` with its symmetric
/// metric of sectional curvature in `[0, 2]` (dimension `2(n-2)`).
pub fn gr2rn_moment(n: usize, k: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { min: 4, found: n });
    }
    let (n, k) = (n as i64, k as i64);
    let mut sum = Rational::zero();
    let mut quarter = int(1);
    for mu in 0..=k / 2 {
        for nu in 0..=(k / 2 - mu) {
            let sign = if nu % 2 == 0 { int(1) } else { int(-1) };
            let term = sign
                * &quarter
                * rat(n - 3, n + 2 * mu + 2 * nu - 3)
                * gen_binomial(&rat(-(n - 4), 2), mu)
                * gen_binomial(&rat(-1, 2), nu)
                * gen_binomial(&rat(-(n + 2 * mu + 4 * nu - 2), 2), k - 2 * mu - 2 * nu);
            sum += term;
        }
        quarter /= int(4);
    }
    Ok(sum / gen_binomial(&rat(-(2 * n - 5), 2), k))
}

pub fn gr2rn_sequence(n: usize, k_max: usize) -> Result<MomentSequence> {
    let values = (0..=k_max).map(|k| gr2rn_moment(n, k)).collect::<Result<Vec<_>>>()?;
    MomentSequence::new(2 * (n.max(4) - 2), values)
}
