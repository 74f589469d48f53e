//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Polynomials live in a fixed number of variables `x_1 .. x_m` (orthonormal
//! coordinates of a euclidean space). Besides ring arithmetic the module
//! provides the flat Laplacian `sum_mu d^2/dx_mu^2` and a degree-truncated
//! exponential, which together evaluate the Grassmannian moment integrals.

mod binomial;
pub mod rational;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use binomial::{falling_factorial, falling_factorial_int, gen_binomial};
pub use rational::Rational;

/// Exponent vector of a monomial `x_1^{a_1} ... x_m^{a_m}`.
///
/// Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dimension: usize) -> Self {
        MultiIndex(vec![0; dimension])
    }

    pub fn unit(dimension: usize, index: usize) -> Self {
        let mut e = vec![0; dimension];
        e[index] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Polynomial in `dimension` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dimension: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

fn accumulate(terms: &mut BTreeMap<MultiIndex, Rational>, index: MultiIndex, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(index) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Polynomial {
    pub fn zero(dimension: usize) -> Self {
        Polynomial { dimension, terms: BTreeMap::new() }
    }

    pub fn constant(dimension: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(dimension);
        accumulate(&mut p.terms, MultiIndex::zero(dimension), c);
        p
    }

    pub fn one(dimension: usize) -> Self {
        Polynomial::constant(dimension, Rational::one())
    }

    /// The coordinate function `x_index` (zero based).
    pub fn variable(dimension: usize, index: usize) -> Result<Self> {
        if index >= dimension {
            return Err(Error::VariableOutOfRange { index, dimension });
        }
        Ok(Polynomial::monomial(MultiIndex::unit(dimension, index), Rational::one()))
    }

    pub fn monomial(index: MultiIndex, coeff: Rational) -> Self {
        let mut p = Polynomial::zero(index.len());
        accumulate(&mut p.terms, index, coeff);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Polynomial::zero(dimension);
        for (exps, c) in terms {
            if exps.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: exps.len() });
            }
            accumulate(&mut p.terms, MultiIndex(exps), c);
        }
        Ok(p)
    }

    /// `g(X, X) = x_1^2 + ... + x_m^2`.
    pub fn norm_squared(dimension: usize) -> Self {
        let mut p = Polynomial::zero(dimension);
        for i in 0..dimension {
            let mut e = vec![0; dimension];
            e[i] = 2;
            accumulate(&mut p.terms, MultiIndex(e), Rational::one());
        }
        p
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Lowest total degree of a stored term, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).min()
    }

    /// `Some(d)` if every term has degree `d`. The zero polynomial is
    /// homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    fn check_dimension(&self, other: &Polynomial) -> Result<()> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: other.dimension });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dimension(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            accumulate(&mut out.terms, k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dimension(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            accumulate(&mut out.terms, k.clone(), -v);
        }
        Ok(out)
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) -> Result<()> {
        self.check_dimension(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (k, v) in &other.terms {
            accumulate(&mut self.terms, k.clone(), v * c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dimension);
        }
        Polynomial {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// In-place `self += a * b`, discarding terms of degree above `max_degree`.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial, max_degree: Option<u32>) -> Result<()> {
        self.check_dimension(a)?;
        self.check_dimension(b)?;
        a.mul_into(b, max_degree, &mut self.terms);
        Ok(())
    }

    /// Product, discarding every term of total degree above `max_degree`.
    pub fn checked_mul(&self, other: &Polynomial, max_degree: Option<u32>) -> Result<Polynomial> {
        self.check_dimension(other)?;
        let mut out = Polynomial::zero(self.dimension);
        self.mul_into(other, max_degree, &mut out.terms);
        Ok(out)
    }

    fn mul_into(
        &self,
        other: &Polynomial,
        max_degree: Option<u32>,
        out: &mut BTreeMap<MultiIndex, Rational>,
    ) {
        let limit = max_degree.unwrap_or(u32::MAX);
        let rhs: Vec<(&MultiIndex, u32, &Rational)> =
            other.terms.iter().map(|(k, v)| (k, k.degree(), v)).collect();
        for (a, ca) in &self.terms {
            let da = a.degree();
            if da > limit {
                continue;
            }
            for &(b, db, cb) in &rhs {
                if da + db <= limit {
                    accumulate(out, a.plus(b), ca * cb);
                }
            }
        }
    }

    /// `sum_mu d^2 p / dx_mu^2`. This is the positive operator, i.e. minus the
    /// geometer's Laplace-Beltrami operator.
    pub fn laplacian(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dimension);
        for (k, v) in &self.terms {
            for mu in 0..self.dimension {
                let a = k.0[mu];
                if a >= 2 {
                    let mut e = k.0.clone();
                    e[mu] -= 2;
                    accumulate(&mut out.terms, MultiIndex(e), v * Rational::from_integer((a * (a - 1)).into()));
                }
            }
        }
        out
    }

    /// The Laplacian applied `times` times.
    pub fn laplacian_power(&self, times: u32) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..times {
            if p.is_zero() {
                break;
            }
            p = p.laplacian();
        }
        p
    }

    pub fn eval_at_zero(&self) -> Rational {
        self.coefficient(&MultiIndex::zero(self.dimension))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: point.len() });
        }
        let mut acc = Rational::zero();
        for (k, v) in &self.terms {
            let mut term = v.clone();
            for (x, &a) in point.iter().zip(&k.0) {
                if a > 0 {
                    term *= rational::pow(x, a);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(k, v)| {
                k.0.iter()
                    .zip(point)
                    .fold(rational::to_f64(v), |acc, (&a, &x)| acc * x.powi(a as i32))
            })
            .sum())
    }

    /// `sum_j p^j / j!` with every product truncated at `max_degree`.
    ///
    /// `p` must have zero constant term. The homogeneous components `E_d` of
    /// `E = exp(p)` are generated by the Euler-operator recursion
    /// `d E_d = sum_{i=1}^{d} i p_i E_{d-i}`, which yields exactly the
    /// truncated power series without forming the powers `p^j`.
    pub fn exp_truncated(&self, max_degree: u32) -> Result<Polynomial> {
        if !self.eval_at_zero().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let dim = self.dimension;
        let max = max_degree as usize;
        let parts: Vec<Polynomial> = (0..=max).map(|d| self.homogeneous_part(d as u32)).collect();
        let mut exp_parts: Vec<Polynomial> = Vec::with_capacity(max + 1);
        exp_parts.push(Polynomial::one(dim));
        for d in 1..=max {
            let mut acc = BTreeMap::new();
            for i in 1..=d {
                if parts[i].is_zero() || exp_parts[d - i].is_zero() {
                    continue;
                }
                let weighted = parts[i].scale(&Rational::from_integer((i as i64).into()));
                weighted.mul_into(&exp_parts[d - i], None, &mut acc);
            }
            let inv_d = Rational::new(1.into(), (d as i64).into());
            let e_d = Polynomial { dimension: dim, terms: acc }.scale(&inv_d);
            exp_parts.push(e_d);
        }
        let mut out = Polynomial::zero(dim);
        for part in exp_parts {
            for (k, v) in part.terms {
                accumulate(&mut out.terms, k, v);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, lexicographic within a degree
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        for (n, (k, v)) in entries.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = k
                .0
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                .collect();
            if vars.is_empty() {
                write!(f, "{v}")?;
            } else if v.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{v}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_add(q)
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial, max_degree: Option<u32>) -> Result<Polynomial> {
    p.checked_mul(q, max_degree)
}

pub fn laplacian(p: &Polynomial) -> Polynomial {
    p.laplacian()
}

pub fn eval_at_zero(p: &Polynomial) -> Rational {
    p.eval_at_zero()
}

pub fn exp_truncated(p: &Polynomial, max_degree: u32) -> Result<Polynomial> {
    p.exp_truncated(max_degree)
}

#[cfg(test)]
mod tests;
