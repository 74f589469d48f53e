//! Quadratic curvature invariants in four dimensions.
//!
//! Every quadratic natural invariant of a 4-dimensional curvature tensor is
//! a combination of `Psi_1^2`, `Psi_2` and the squared trace-free Ricci norm.
//! The coefficients are fixed by evaluating on four model spaces; for the
//! Gauss–Bonnet integrand this gives
//! `(4 pi^2 / 3) pf_2 = 5 Psi_2 - 4 Psi_1^2 - (4/9) |Ric0|^2`.

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::curvature::{direct_sum, make_constant_curvature, make_cpn, CurvatureTensor};
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, row_reduce};
use crate::moments::{psi_sequence, DegreeBudget};
use crate::poly::rational::{int, rat};
use crate::poly::Rational;

fn as_string<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn as_strings<S: Serializer>(v: &[Rational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// `(Psi_1^2, Psi_2, |Ric0|^2)` of a 4-dimensional tensor. The last entry is
/// the squared norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantVector {
    pub label: String,
    #[serde(serialize_with = "as_string")]
    pub psi1_sq: Rational,
    #[serde(serialize_with = "as_string")]
    pub psi2: Rational,
    #[serde(serialize_with = "as_string")]
    pub ric0_sq: Rational,
}

impl InvariantVector {
    pub fn of(label: impl Into<String>, r: &CurvatureTensor) -> Result<Self> {
        let seq = psi_sequence(r, 2, DegreeBudget(DegreeBudget::default().0.max(2)))?;
        let psi1 = &seq.values()[1];
        Ok(InvariantVector {
            label: label.into(),
            psi1_sq: psi1 * psi1,
            psi2: seq.values()[2].clone(),
            ric0_sq: r.ric0_norm_sq()?,
        })
    }

    pub fn as_array(&self) -> [Rational; 3] {
        [self.psi1_sq.clone(), self.psi2.clone(), self.ric0_sq.clone()]
    }

    pub fn variance(&self) -> Rational {
        &self.psi2 - &self.psi1_sq
    }
}

/// One model space with its scaled Euler integrand `(4 pi^2 / 3) pf_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelRow {
    pub invariants: InvariantVector,
    #[serde(serialize_with = "as_string")]
    pub pf2_scaled: Rational,
}

pub fn model_tensors() -> Result<Vec<(&'static str, CurvatureTensor, Rational)>> {
    let s2 = make_constant_curvature(2, int(1))?;
    Ok(vec![
        ("CP2", make_cpn(2, int(24))?, int(8)),
        ("S4", make_constant_curvature(4, int(1))?, int(1)),
        ("S2xS2", direct_sum(&s2, &s2), rat(1, 3)),
        ("S1xS3", direct_sum(&CurvatureTensor::zero(1), &make_constant_curvature(3, int(1))?), int(0)),
    ])
}

/// Invariants of `CP^2`, `S^4`, `S^2 x S^2` and `S^1 x S^3`, computed from
/// their curvature tensors.
pub fn model_table() -> Result<Vec<ModelRow>> {
    model_tensors()?
        .into_iter()
        .map(|(label, r, pf2_scaled)| Ok(ModelRow { invariants: InvariantVector::of(label, &r)?, pf2_scaled }))
        .collect()
}

/// Solution of `c1 Psi_1^2 + c2 Psi_2 + c3 |Ric0|^2 = value` over the rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interpolation {
    #[serde(serialize_with = "as_strings")]
    pub coefficients: [Rational; 3],
    pub rank: usize,
}

pub fn interpolate_invariant(rows: &[InvariantVector], values: &[Rational]) -> Result<Interpolation> {
    if rows.len() != values.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), found: values.len() });
    }
    let matrix: Vec<Vec<Rational>> = rows.iter().map(|r| r.as_array().to_vec()).collect();
    // fit on a maximal independent set of rows, then check every row
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..matrix.len() {
        let mut trial: Vec<Vec<Rational>> = basis.iter().chain([&i]).map(|&r| matrix[r].clone()).collect();
        if row_reduce(&mut trial).len() > basis.len() {
            basis.push(i);
        }
    }
    let mut augmented: Vec<Vec<Rational>> =
        basis.iter().map(|&r| matrix[r].iter().cloned().chain([values[r].clone()]).collect()).collect();
    let pivots = row_reduce(&mut augmented);
    let mut coefficients = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (i, &p) in pivots.iter().enumerate() {
        coefficients[p] = augmented[i][3].clone();
    }
    let fitted = mat_vec(&matrix, &coefficients);
    if let Some((row, residual)) =
        fitted.iter().zip(values).map(|(f, v)| v - f).enumerate().find(|(_, r)| !r.is_zero())
    {
        return Err(Error::Inconsistent { row, residual: residual.to_string() });
    }
    Ok(Interpolation { coefficients, rank: pivots.len() })
}

/// Pointwise Euler integrand identity for a 4-dimensional tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HtReport {
    #[serde(serialize_with = "as_string")]
    pub psi1: Rational,
    #[serde(serialize_with = "as_string")]
    pub psi2: Rational,
    #[serde(serialize_with = "as_string")]
    pub ric0_sq: Rational,
    /// `(4 pi^2 / 3) pf_2`
    #[serde(serialize_with = "as_string")]
    pub pf2_scaled: Rational,
    /// `(4 pi^2 / 3) pf_2 + (4/9) |Ric0|^2`
    #[serde(serialize_with = "as_string")]
    pub lhs: Rational,
    /// `Psi_2 + 4 (Psi_2 - Psi_1^2)`
    #[serde(serialize_with = "as_string")]
    pub rhs: Rational,
    #[serde(serialize_with = "as_string")]
    pub second_moment_term: Rational,
    #[serde(serialize_with = "as_string")]
    pub variance_term: Rational,
    pub identity_holds: bool,
    pub second_moment_nonnegative: bool,
    pub variance_nonnegative: bool,
}

pub fn hitchin_thorpe_report(r: &CurvatureTensor) -> Result<HtReport> {
    if r.dimension() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: r.dimension() });
    }
    let inv = InvariantVector::of("", r)?;
    let seq_psi1 = psi_sequence(r, 1, DegreeBudget(1))?.values()[1].clone();
    let four_ninths = rat(4, 9);
    let pf2_scaled = int(5) * &inv.psi2 - int(4) * &inv.psi1_sq - &four_ninths * &inv.ric0_sq;
    let lhs = &pf2_scaled + &four_ninths * &inv.ric0_sq;
    let variance = inv.variance();
    let rhs = &inv.psi2 + int(4) * &variance;
    Ok(HtReport {
        psi1: seq_psi1,
        psi2: inv.psi2.clone(),
        ric0_sq: inv.ric0_sq.clone(),
        identity_holds: lhs == rhs,
        second_moment_nonnegative: !inv.psi2.is_negative(),
        variance_nonnegative: !variance.is_negative(),
        second_moment_term: inv.psi2,
        variance_term: int(4) * variance,
        pf2_scaled,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::random_tensor;
    use crate::linalg::rank;

    fn table() -> Vec<ModelRow> {
        model_table().unwrap()
    }

    #[test]
    fn table_matches_expected_values() {
        let expect = [
            ("CP2", int(4), rat(24, 5), int(0), int(8)),
            ("S4", int(1), int(1), int(0), int(1)),
            ("S2xS2", rat(1, 9), rat(7, 45), int(0), rat(1, 3)),
            ("S1xS3", rat(1, 4), rat(1, 3), rat(3, 2), int(0)),
        ];
        for (row, (label, a, b, c, pf)) in table().iter().zip(expect) {
            assert_eq!(row.invariants.label, label);
            assert_eq!(row.invariants.as_array(), [a, b, c]);
            assert_eq!(row.pf2_scaled, pf);
        }
    }

    #[test]
    fn interpolation_examples() {
        let rows: Vec<InvariantVector> = table().into_iter().map(|r| r.invariants).collect();
        let pf: Vec<Rational> = table().into_iter().map(|r| r.pf2_scaled).collect();
        let sol = interpolate_invariant(&rows, &pf).unwrap();
        assert_eq!(sol.coefficients, [int(-4), int(5), rat(-4, 9)]);
        assert_eq!(sol.rank, 3);
        let psi2: Vec<Rational> = rows.iter().map(|r| r.psi2.clone()).collect();
        assert_eq!(interpolate_invariant(&rows, &psi2).unwrap().coefficients, [int(0), int(1), int(0)]);
        let zeros = vec![int(0); 4];
        assert_eq!(interpolate_invariant(&rows, &zeros).unwrap().coefficients, [int(0), int(0), int(0)]);
        // second moment plus four times the variance
        let split: Vec<Rational> = rows.iter().map(|r| &r.psi2 + int(4) * r.variance()).collect();
        assert_eq!(interpolate_invariant(&rows, &split).unwrap().coefficients, [int(-4), int(5), int(0)]);
    }

    #[test]
    fn inconsistent_values_are_rejected() {
        let rows: Vec<InvariantVector> = table().into_iter().map(|r| r.invariants).collect();
        let bad = vec![int(1), int(0), int(0), int(0)];
        assert!(matches!(interpolate_invariant(&rows, &bad), Err(Error::Inconsistent { .. })));
        // the three Einstein rows span only two dimensions, so S2xS2 is the
        // redundant row and carries the residual
        let mut pf: Vec<Rational> = table().into_iter().map(|r| r.pf2_scaled).collect();
        pf[2] += int(1);
        match interpolate_invariant(&rows, &pf) {
            Err(Error::Inconsistent { row: 2, residual }) => assert_eq!(residual, "1"),
            other => panic!("{other:?}"),
        }
        assert!(interpolate_invariant(&rows, &bad[..3]).is_err());
    }

    #[test]
    fn basis_has_full_rank() {
        let m: Vec<Vec<Rational>> = table().iter().map(|r| r.invariants.as_array().to_vec()).collect();
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn report_examples() {
        let cp2 = hitchin_thorpe_report(&make_cpn(2, int(24)).unwrap()).unwrap();
        // 24/5 + 4 (24/5 - 4) = 8, the table value of the scaled Euler integrand
        assert_eq!((cp2.lhs.clone(), cp2.rhs.clone()), (int(8), int(8)));
        let s4 = hitchin_thorpe_report(&make_constant_curvature(4, int(1)).unwrap()).unwrap();
        assert_eq!((s4.lhs, s4.rhs), (int(1), int(1)));
        let (_, s1s3, _) = model_tensors().unwrap().remove(3);
        let rep = hitchin_thorpe_report(&s1s3).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.pf2_scaled), (rat(2, 3), rat(2, 3), int(0)));
        assert!(hitchin_thorpe_report(&make_constant_curvature(3, int(1)).unwrap()).is_err());
    }

    #[test]
    fn report_on_random_tensors() {
        for seed in 0..8 {
            let rep = hitchin_thorpe_report(&random_tensor(4, seed, 5).unwrap()).unwrap();
            assert!(rep.identity_holds && rep.second_moment_nonnegative && rep.variance_nonnegative);
        }
    }

    #[test]
    fn report_serializes_exactly() {
        let rep = hitchin_thorpe_report(&make_cpn(2, int(24)).unwrap()).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["lhs"], "8");
        assert_eq!(json["identity_holds"], true);
    }
}
