//! Algebraic curvature tensors on euclidean vector spaces.
//!
//! Components are stored in a fixed orthonormal basis with the convention
//! `R[i][j][k][l] = g(R_{e_i,e_j} e_k, e_l)`. With this convention the unit
//! sphere has `R_{Y,X}X = g(X,X) Y - g(X,Y) X`, sectional curvature `+1` and
//! Ricci tensor `(m-1) g`, where `Ric(X,Y) = tr(Z -> R_{Z,X} Y)`.

mod float;
mod json;
mod models;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::rational::{int, rat};
use crate::poly::{Polynomial, Rational};

pub use float::FloatTensor;
pub use json::TensorDocument;
pub use models::{
    direct_sum, make_constant_curvature, make_cpn, make_hpn, make_op2_spectrum, random_tensor,
};

/// Dense `m x m x m x m` array of exact components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    dimension: usize,
    components: Vec<Rational>,
}

/// A failed symmetry check at a specific index quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry([usize; 4]),
    SkewRange([usize; 4]),
    Bianchi([usize; 4]),
    PairSymmetry([usize; 4]),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, [i, j, k, l]) = match self {
            Violation::Antisymmetry(ix) => ("R[i][j][k][l] != -R[j][i][k][l]", ix),
            Violation::SkewRange(ix) => ("R[i][j][k][l] != -R[i][j][l][k]", ix),
            Violation::Bianchi(ix) => ("first Bianchi identity fails", ix),
            Violation::PairSymmetry(ix) => ("R[i][j][k][l] != R[k][l][i][j]", ix),
        };
        write!(f, "{name} at ({i},{j},{k},{l})")
    }
}

impl CurvatureTensor {
    pub fn zero(dimension: usize) -> Self {
        CurvatureTensor { dimension, components: vec![Rational::zero(); dimension.pow(4)] }
    }

    /// Wraps a row-major component array without checking the symmetries.
    pub fn from_components(dimension: usize, components: Vec<Rational>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::DimensionTooSmall { min: 1, found: 0 });
        }
        if components.len() != dimension.pow(4) {
            return Err(Error::DimensionMismatch { expected: dimension.pow(4), found: components.len() });
        }
        Ok(CurvatureTensor { dimension, components })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let m = self.dimension;
        ((i * m + j) * m + k) * m + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.components[self.offset(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, value: Rational) {
        let o = self.offset(i, j, k, l);
        self.components[o] = value;
    }

    pub fn scaled(&self, c: &Rational) -> CurvatureTensor {
        CurvatureTensor {
            dimension: self.dimension,
            components: self.components.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    /// Every violated symmetry; empty iff `self` is an algebraic curvature tensor.
    pub fn validate(&self) -> Vec<Violation> {
        let m = self.dimension;
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let r = self.get(i, j, k, l);
                        let ix = [i, j, k, l];
                        if *r != -self.get(j, i, k, l) {
                            out.push(Violation::Antisymmetry(ix));
                        }
                        if *r != -self.get(i, j, l, k) {
                            out.push(Violation::SkewRange(ix));
                        }
                        if !(r + self.get(j, k, i, l) + self.get(k, i, j, l)).is_zero() {
                            out.push(Violation::Bianchi(ix));
                        }
                        if r != self.get(k, l, i, j) {
                            out.push(Violation::PairSymmetry(ix));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTensor(v))
        }
    }

    /// The Jacobi operator `Y -> R_{Y,X} X` with polynomial entries in the
    /// coordinates of `X`: entry `(a, b)` is `g(R_{e_a,X} X, e_b)`.
    pub fn jacobi_matrix(&self) -> Result<Vec<Vec<Polynomial>>> {
        self.ensure_valid()?;
        Ok(self.jacobi_matrix_unchecked())
    }

    pub(crate) fn jacobi_matrix_unchecked(&self) -> Vec<Vec<Polynomial>> {
        let m = self.dimension;
        let mut out = vec![vec![Polynomial::zero(m); m]; m];
        for (a, row) in out.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let mut terms = Vec::new();
                for i in 0..m {
                    for j in i..m {
                        let mut c = self.get(a, i, j, b).clone();
                        if i != j {
                            c += self.get(a, j, i, b);
                        }
                        if !c.is_zero() {
                            let mut e = vec![0u32; m];
                            e[i] += 1;
                            e[j] += 1;
                            terms.push((e, c));
                        }
                    }
                }
                *entry = Polynomial::from_terms(m, terms).expect("exponent length equals dimension");
            }
        }
        out
    }

    /// Jacobi operator at a concrete vector `X`.
    pub fn jacobi_at(&self, x: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let m = self.dimension;
        if x.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: x.len() });
        }
        let mut out = vec![vec![Rational::zero(); m]; m];
        for (a, row) in out.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let mut acc = Rational::zero();
                for i in 0..m {
                    if x[i].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let r = self.get(a, i, j, b);
                        if !r.is_zero() && !x[j].is_zero() {
                            acc += r * &x[i] * &x[j];
                        }
                    }
                }
                *entry = acc;
            }
        }
        Ok(out)
    }

    /// `g(R_{Y,X} X, Y)` without normalization.
    pub fn curvature_form(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let j = self.jacobi_at(x)?;
        if y.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: y.len() });
        }
        let mut acc = Rational::zero();
        for (a, row) in j.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                acc += &y[a] * v * &y[b];
            }
        }
        Ok(acc)
    }

    /// Sectional curvature of the plane spanned by `plane`.
    pub fn sectional_curvature(&self, plane: &TwoPlaneSpan) -> Result<Rational> {
        self.ensure_valid()?;
        if plane.dimension() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: plane.dimension() });
        }
        Ok(self.curvature_form(&plane.x, &plane.y)? / plane.gram_determinant())
    }

    /// `Ric(a, b) = sum_mu R[mu][a][b][mu]`.
    pub fn ricci(&self) -> Result<Vec<Vec<Rational>>> {
        self.ensure_valid()?;
        let m = self.dimension;
        Ok((0..m)
            .map(|a| (0..m).map(|b| (0..m).map(|mu| self.get(mu, a, b, mu).clone()).sum()).collect())
            .collect())
    }

    pub fn scalar_curvature(&self) -> Result<Rational> {
        let ric = self.ricci()?;
        Ok(ric.iter().enumerate().map(|(a, row)| row[a].clone()).sum())
    }

    /// `|Ric°|^2 = |Ric|^2 - kappa^2 / (2m)` for the half-normalized norm
    /// `|h|^2 = 1/2 sum h(E_mu, E_nu)^2`.
    pub fn ric0_norm_sq(&self) -> Result<Rational> {
        let ric = self.ricci()?;
        let m = self.dimension as i64;
        let kappa: Rational = ric.iter().enumerate().map(|(a, row)| row[a].clone()).sum();
        let norm: Rational = ric.iter().flatten().map(|v| v * v).sum::<Rational>() * rat(1, 2);
        Ok(norm - &kappa * &kappa / int(2 * m))
    }
}

pub fn sectional_curvature(r: &CurvatureTensor, plane: &TwoPlaneSpan) -> Result<Rational> {
    r.sectional_curvature(plane)
}

pub fn ricci(r: &CurvatureTensor) -> Result<Vec<Vec<Rational>>> {
    r.ricci()
}

pub fn scalar_curvature(r: &CurvatureTensor) -> Result<Rational> {
    r.scalar_curvature()
}

pub fn ric0_norm_sq(r: &CurvatureTensor) -> Result<Rational> {
    r.ric0_norm_sq()
}

pub fn validate(r: &CurvatureTensor) -> Vec<Violation> {
    r.validate()
}

pub fn jacobi_matrix(r: &CurvatureTensor) -> Result<Vec<Vec<Polynomial>>> {
    r.jacobi_matrix()
}

/// Two linearly independent vectors spanning a 2-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPlaneSpan {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

impl TwoPlaneSpan {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
        }
        let span = TwoPlaneSpan { x, y };
        if span.gram_determinant() <= Rational::zero() {
            return Err(Error::DegenerateSpan);
        }
        Ok(span)
    }

    /// The plane spanned by basis vectors `e_a`, `e_b` of `R^m`.
    pub fn coordinate(m: usize, a: usize, b: usize) -> Result<Self> {
        let unit = |i: usize| (0..m).map(|n| if n == i { Rational::one() } else { Rational::zero() }).collect();
        if a >= m || b >= m {
            return Err(Error::VariableOutOfRange { index: a.max(b), dimension: m });
        }
        TwoPlaneSpan::new(unit(a), unit(b))
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    /// `g(X,X) g(Y,Y) - g(X,Y)^2`.
    pub fn gram_determinant(&self) -> Rational {
        let xy = dot(&self.x, &self.y);
        dot(&self.x, &self.x) * dot(&self.y, &self.y) - &xy * &xy
    }
}

/// Jacobi spectrum of a rank-one model: at `X` the Jacobi operator has
/// eigenvalue `scale * g(X,X)` with the given multiplicity, for each pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiSpectrumModel {
    pairs: Vec<(Rational, usize)>,
}

impl JacobiSpectrumModel {
    pub fn new(pairs: Vec<(Rational, usize)>) -> Result<Self> {
        if pairs.iter().any(|(_, mult)| *mult == 0) {
            return Err(Error::InvalidParameter("spectrum multiplicities must be positive".into()));
        }
        if !pairs.iter().any(|(s, mult)| s.is_zero() && *mult >= 1) {
            return Err(Error::InvalidParameter("spectrum must contain the kernel eigenvalue 0".into()));
        }
        Ok(JacobiSpectrumModel { pairs })
    }

    /// Spectrum `{0: 1, c: m-1}` of the constant curvature `c` space form.
    pub fn space_form(m: usize, c: Rational) -> Result<Self> {
        if m < 2 {
            return Err(Error::DimensionTooSmall { min: 2, found: m });
        }
        JacobiSpectrumModel::new(vec![(Rational::zero(), 1), (c, m - 1)])
    }

    /// Spectrum of complex projective space with sectional curvature in `[1, 4]`.
    pub fn cpn(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, found: n });
        }
        JacobiSpectrumModel::new(vec![(Rational::zero(), 1), (int(4), 1), (int(1), 2 * n - 2)])
    }

    /// Spectrum of quaternionic projective space with sectional curvature in `[1, 4]`.
    pub fn hpn(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, found: n });
        }
        JacobiSpectrumModel::new(vec![(Rational::zero(), 1), (int(4), 3), (int(1), 4 * n - 4)])
    }

    pub fn pairs(&self) -> &[(Rational, usize)] {
        &self.pairs
    }

    /// Total multiplicity, the dimension of the underlying space.
    pub fn dimension(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    pub fn scaled(&self, c: &Rational) -> JacobiSpectrumModel {
        JacobiSpectrumModel { pairs: self.pairs.iter().map(|(s, m)| (s * c, *m)).collect() }
    }
}
