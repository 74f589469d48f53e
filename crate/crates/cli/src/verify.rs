//! Self-check suites runnable from the command line.

use clap::ValueEnum;
use num_traits::One;
use serde::Serialize;

use curvmo::closed_forms::{cross_density_moment_quadrature, cross_moment, gr2rn_moment, product_moment, product_sequence};
use curvmo::curvature::{direct_sum, make_constant_curvature, make_cpn, make_hpn, random_tensor};
use curvmo::invariants::{hitchin_thorpe_report, interpolate_invariant, model_table, model_tensors};
use curvmo::mc::mc_moments;
use curvmo::moments::{psi_sequence, psi_sequence_from_spectrum};
use curvmo::poly::rational::{int, pow, rat, to_f64};
use curvmo::{CurvatureTensor, DegreeBudget, JacobiSpectrumModel, MomentSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Spheres,
    Cross,
    Products,
    Gr2,
    Mc,
    Ht,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Spheres => "spheres",
            Suite::Cross => "cross",
            Suite::Products => "products",
            Suite::Gr2 => "gr2",
            Suite::Mc => "mc",
            Suite::Ht => "ht",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { suite: self.suite, name: name.into(), passed, detail: detail.into() });
    }
}

const BUDGET: DegreeBudget = DegreeBudget(8);

fn exact(r: &CurvatureTensor, k: usize) -> MomentSequence {
    psi_sequence(r, k, BUDGET).expect("model tensors are valid")
}

fn spheres(rec: &mut Recorder) {
    for m in 2..=8 {
        let seq = exact(&make_constant_curvature(m, int(1)).unwrap(), 5);
        let ok = seq.values().iter().all(One::is_one);
        rec.record(format!("S^{m} k<=5"), ok, seq.to_strings().join(" "));
    }
}

fn cross(rec: &mut Recorder) {
    for a in 0..=4 {
        for b in 0..=4 {
            let worst = (0..=6)
                .map(|k| (cross_density_moment_quadrature(a, b, k) - to_f64(&cross_moment(a, b, k))).abs())
                .fold(0.0, f64::max);
            rec.record(format!("quadrature a={a} b={b}"), worst < 1e-10, format!("max error {worst:.2e}"));
        }
    }
    let cases = [
        ("CP2", make_cpn(2, int(24)).unwrap(), JacobiSpectrumModel::cpn(2).unwrap(), (0, 0)),
        ("CP3", make_cpn(3, int(48)).unwrap(), JacobiSpectrumModel::cpn(3).unwrap(), (0, 1)),
        ("HP2", make_hpn(2, int(128)).unwrap(), JacobiSpectrumModel::hpn(2).unwrap(), (1, 1)),
    ];
    for (label, tensor, model, (a, b)) in cases {
        let engine = exact(&tensor, 4);
        let spectral = psi_sequence_from_spectrum(&model, 4).unwrap();
        let family: Vec<_> = (0..=4).map(|k| cross_moment(a, b, k)).collect();
        let ok = engine == spectral && engine.values() == family.as_slice();
        rec.record(format!("{label} engine = spectrum = family"), ok, engine.to_strings().join(" "));
    }
}

fn products(rec: &mut Recorder) {
    let factors = [
        ("S2", make_constant_curvature(2, int(1)).unwrap()),
        ("S3", make_constant_curvature(3, int(1)).unwrap()),
        ("R3", random_tensor(3, 2024, 5).unwrap()),
        ("R1", CurvatureTensor::zero(1)),
    ];
    for (la, a) in &factors[..3] {
        for (lb, b) in &factors {
            let seq_b = if b.dimension() == 1 { MomentSequence::flat(1, 3) } else { exact(b, 3) };
            let combined = product_sequence(&exact(a, 3), &seq_b, 3).unwrap();
            let direct = exact(&direct_sum(a, b), 3);
            rec.record(format!("{la}x{lb} k<=3"), combined == direct, combined.to_strings().join(" "));
        }
    }
}

fn gr2(rec: &mut Recorder) {
    let s2 = MomentSequence::ones(2, 4);
    for k in 0..=4 {
        let cover = product_moment(&s2, 2, &s2, 2, k).unwrap() * pow(&int(2), k as u32);
        let value = gr2rn_moment(4, k).unwrap();
        rec.record(format!("Gr2R4 cover k={k}"), value == cover, value.to_string());
    }
    for n in 4..=8i64 {
        let value = gr2rn_moment(n as usize, 1).unwrap();
        rec.record(format!("Gr2R{n} mean"), value == rat(n - 2, 2 * n - 5), value.to_string());
    }
}

fn mc(rec: &mut Recorder, seed: u64, samples: u64) {
    let s2 = make_constant_curvature(2, int(1)).unwrap();
    let cases = [
        ("CP2", make_cpn(2, int(24)).unwrap(), 2u32),
        ("HP2", make_hpn(2, int(128)).unwrap(), 1),
        ("S2xS2", direct_sum(&s2, &s2), 2),
    ];
    for (label, r, k_max) in cases {
        let values = exact(&r, k_max as usize);
        let estimates = mc_moments(&r, k_max, samples, seed).unwrap();
        for (i, est) in estimates.iter().enumerate() {
            let k = i + 1;
            let target = to_f64(&values.values()[k]);
            let sigmas = (est.mean - target).abs() / est.std_error.max(f64::MIN_POSITIVE);
            rec.record(
                format!("{label} k={k}"),
                est.agrees_with(target, 4.0),
                format!("mc {:.6} +- {:.6}, exact {}, {sigmas:.2} SE", est.mean, est.std_error, values.values()[k]),
            );
        }
    }
}

fn ht(rec: &mut Recorder) {
    for (label, r, pf2) in model_tensors().unwrap() {
        let rep = hitchin_thorpe_report(&r).unwrap();
        let ok = rep.identity_holds && rep.pf2_scaled == pf2 && rep.variance_nonnegative;
        rec.record(format!("{label} identity"), ok, format!("lhs {} rhs {}", rep.lhs, rep.rhs));
    }
    let table = model_table().unwrap();
    let rows: Vec<_> = table.iter().map(|r| r.invariants.clone()).collect();
    let values: Vec<_> = table.iter().map(|r| r.pf2_scaled.clone()).collect();
    match interpolate_invariant(&rows, &values) {
        Ok(sol) => {
            let ok = sol.coefficients == [int(-4), int(5), rat(-4, 9)];
            let text: Vec<String> = sol.coefficients.iter().map(ToString::to_string).collect();
            rec.record("pf2 interpolation", ok, text.join(" "));
        }
        Err(e) => rec.record("pf2 interpolation", false, e.to_string()),
    }
}

pub fn run(suite: Suite, seed: u64, samples: u64) -> Vec<CheckResult> {
    let suites = if suite == Suite::All {
        vec![Suite::Spheres, Suite::Cross, Suite::Products, Suite::Gr2, Suite::Mc, Suite::Ht]
    } else {
        vec![suite]
    };
    let mut out = Vec::new();
    for s in suites {
        let mut rec = Recorder { suite: s.name(), checks: Vec::new() };
        match s {
            Suite::Spheres => spheres(&mut rec),
            Suite::Cross => cross(&mut rec),
            Suite::Products => products(&mut rec),
            Suite::Gr2 => gr2(&mut rec),
            Suite::Mc => mc(&mut rec, seed, samples),
            Suite::Ht => ht(&mut rec),
            Suite::All => unreachable!(),
        }
        out.extend(rec.checks);
    }
    out
}
