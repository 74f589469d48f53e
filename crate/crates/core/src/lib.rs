//! Moments and distributions of sectional curvature.
//!
//! The exact path works with [`CurvatureTensor`]s over rational numbers and
//! the [`Polynomial`] calculus in [`poly`]; closed forms for model spaces live
//! in [`closed_forms`], and [`mc`] provides Monte Carlo oracles.

pub mod closed_forms;
pub mod curvature;
pub mod error;
pub mod invariants;
mod linalg;
pub mod mc;
pub mod moments;
pub mod poly;
pub mod quadrature;

pub use curvature::{
    direct_sum, make_constant_curvature, make_cpn, make_hpn, make_op2_spectrum, random_tensor, CurvatureTensor,
    JacobiSpectrumModel, TwoPlaneSpan, Violation,
};
pub use error::{Error, Result};
pub use moments::{psi, psi_from_spectrum, psi_sequence, psi_sequence_from_spectrum, DegreeBudget, MomentSequence};
pub use poly::{MultiIndex, Polynomial, Rational};
