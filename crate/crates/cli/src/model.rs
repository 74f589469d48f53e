//! Model specifications: what the user asked for, resolved to tensors,
//! moment sequences and densities.

use std::fmt;
use std::fs;
use std::path::PathBuf;

use curvmo::closed_forms::{gr2rn_sequence, product_density, product_sequence, CrossDensity, DensityModel, HistogramOptions};
use curvmo::curvature::{direct_sum, make_constant_curvature, make_cpn, make_hpn, make_op2_spectrum, random_tensor};
use curvmo::moments::{psi_sequence, psi_sequence_from_spectrum};
use curvmo::poly::rational::{int, parse_rational};
use curvmo::{CurvatureTensor, DegreeBudget, Error, JacobiSpectrumModel, MomentSequence, Rational, Result};

/// One factor of a product, written `kind:arg:...` on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorSpec {
    Sphere { m: usize, c: Rational },
    Flat { m: usize },
    Cpn { n: usize, kappa: Rational },
    Hpn { n: usize, kappa: Rational },
    Op2,
    Random { m: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Factor(FactorSpec),
    Gr2rn { n: usize },
    Product { left: FactorSpec, right: FactorSpec },
    File { path: PathBuf },
}

pub fn cpn_kappa(n: usize) -> Rational {
    int((4 * n * (n + 1)) as i64)
}

pub fn hpn_kappa(n: usize) -> Rational {
    int((16 * n * (n + 2)) as i64)
}

fn parse_usize(field: &str, v: &str) -> Result<usize> {
    v.trim().parse().map_err(|_| Error::Parse(format!("{field}: expected a nonnegative integer, got {v:?}")))
}

impl FactorSpec {
    pub fn parse(text: &str) -> Result<FactorSpec> {
        let parts: Vec<&str> = text.split(':').collect();
        let arity = |n: std::ops::RangeInclusive<usize>| -> Result<()> {
            if n.contains(&(parts.len() - 1)) {
                Ok(())
            } else {
                Err(Error::Parse(format!("factor {text:?}: wrong number of fields")))
            }
        };
        let spec = match parts[0] {
            "sphere" => {
                arity(1..=2)?;
                let c = parts.get(2).map_or(Ok(int(1)), |c| parse_rational(c))?;
                FactorSpec::Sphere { m: parse_usize("m", parts[1])?, c }
            }
            "flat" => {
                arity(1..=1)?;
                FactorSpec::Flat { m: parse_usize("m", parts[1])? }
            }
            "cpn" | "hpn" => {
                arity(1..=2)?;
                let n = parse_usize("n", parts[1])?;
                let default = if parts[0] == "cpn" { cpn_kappa(n) } else { hpn_kappa(n) };
                let kappa = parts.get(2).map_or(Ok(default), |k| parse_rational(k))?;
                if parts[0] == "cpn" {
                    FactorSpec::Cpn { n, kappa }
                } else {
                    FactorSpec::Hpn { n, kappa }
                }
            }
            "op2" => {
                arity(0..=0)?;
                FactorSpec::Op2
            }
            "random" => {
                arity(2..=2)?;
                let seed = parts[2].trim().parse().map_err(|_| Error::Parse(format!("seed in {text:?}")))?;
                FactorSpec::Random { m: parse_usize("m", parts[1])?, seed }
            }
            other => return Err(Error::Parse(format!("unknown factor kind {other:?}"))),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        let too_small = |min: usize, found: usize| Err(Error::DimensionTooSmall { min, found });
        match self {
            FactorSpec::Sphere { m, .. } | FactorSpec::Random { m, .. } if *m < 2 => too_small(2, *m),
            FactorSpec::Flat { m } if *m < 1 => too_small(1, *m),
            FactorSpec::Cpn { n, .. } | FactorSpec::Hpn { n, .. } if *n < 2 => too_small(2, *n),
            _ => Ok(()),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            FactorSpec::Sphere { m, .. } | FactorSpec::Flat { m } | FactorSpec::Random { m, .. } => *m,
            FactorSpec::Cpn { n, .. } => 2 * n,
            FactorSpec::Hpn { n, .. } => 4 * n,
            FactorSpec::Op2 => 16,
        }
    }

    pub fn tensor(&self) -> Result<Option<CurvatureTensor>> {
        Ok(Some(match self {
            FactorSpec::Sphere { m, c } => make_constant_curvature(*m, c.clone())?,
            FactorSpec::Flat { m } => CurvatureTensor::zero(*m),
            FactorSpec::Cpn { n, kappa } => make_cpn(*n, kappa.clone())?,
            FactorSpec::Hpn { n, kappa } => make_hpn(*n, kappa.clone())?,
            FactorSpec::Random { m, seed } => random_tensor(*m, *seed, 6)?,
            FactorSpec::Op2 => return Ok(None),
        }))
    }

    /// Jacobi spectrum when it does not depend on the direction.
    pub fn spectrum(&self) -> Result<Option<JacobiSpectrumModel>> {
        Ok(match self {
            FactorSpec::Sphere { m, c } => Some(JacobiSpectrumModel::space_form(*m, c.clone())?),
            FactorSpec::Cpn { n, kappa } => Some(JacobiSpectrumModel::cpn(*n)?.scaled(&(kappa / cpn_kappa(*n)))),
            FactorSpec::Hpn { n, kappa } => Some(JacobiSpectrumModel::hpn(*n)?.scaled(&(kappa / hpn_kappa(*n)))),
            FactorSpec::Op2 => Some(make_op2_spectrum()),
            FactorSpec::Flat { .. } | FactorSpec::Random { .. } => None,
        })
    }

    /// Moments `0 ..= k_max`. Spectrum models bypass the degree budget.
    pub fn moments(&self, k_max: usize, budget: DegreeBudget) -> Result<MomentSequence> {
        if let FactorSpec::Flat { m } = self {
            return Ok(MomentSequence::flat(*m, k_max));
        }
        if let Some(spectrum) = self.spectrum()? {
            if k_max > budget.0 || matches!(self, FactorSpec::Op2) {
                return psi_sequence_from_spectrum(&spectrum, k_max);
            }
        }
        let tensor = self.tensor()?.expect("non-spectral factors have tensors");
        psi_sequence(&tensor, k_max, budget)
    }

    pub fn density(&self) -> Result<DensityModel> {
        let normalized = |given: &Rational, canonical: Rational| -> Result<()> {
            if *given == canonical {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("density is tabulated for kappa = {canonical} only")))
            }
        };
        match self {
            FactorSpec::Sphere { c, .. } => Ok(DensityModel::Atom(curvmo::poly::rational::to_f64(c))),
            FactorSpec::Flat { .. } => Ok(DensityModel::Atom(0.0)),
            FactorSpec::Cpn { n, kappa } => {
                normalized(kappa, cpn_kappa(*n))?;
                Ok(DensityModel::Cross(CrossDensity::cpn(*n as u32)?))
            }
            FactorSpec::Hpn { n, kappa } => {
                normalized(kappa, hpn_kappa(*n))?;
                Ok(DensityModel::Cross(CrossDensity::hpn(*n as u32)?))
            }
            FactorSpec::Op2 => Ok(DensityModel::Cross(CrossDensity::op2())),
            FactorSpec::Random { .. } => Err(Error::InvalidParameter("random tensors have no closed-form density".into())),
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Sphere { m, c } => write!(f, "sphere:{m}:{c}"),
            FactorSpec::Flat { m } => write!(f, "flat:{m}"),
            FactorSpec::Cpn { n, kappa } => write!(f, "cpn:{n}:{kappa}"),
            FactorSpec::Hpn { n, kappa } => write!(f, "hpn:{n}:{kappa}"),
            FactorSpec::Op2 => write!(f, "op2"),
            FactorSpec::Random { m, seed } => write!(f, "random:{m}:{seed}"),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Factor(spec) => write!(f, "{spec}"),
            ModelSpec::Gr2rn { n } => write!(f, "gr2rn:{n}"),
            ModelSpec::Product { left, right } => write!(f, "product:{left}x{right}"),
            ModelSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

/// Raw flag values, validated per kind.
#[derive(Clone, Debug, Default)]
pub struct ModelFlags {
    pub model: String,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub kappa: Option<String>,
    pub c: Option<String>,
    pub seed: Option<u64>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub path: Option<PathBuf>,
}

impl ModelFlags {
    fn need<T: Copy>(&self, v: Option<T>, flag: &str) -> Result<T> {
        v.ok_or_else(|| Error::InvalidParameter(format!("--model {} requires --{flag}", self.model)))
    }

    fn rational(v: &Option<String>, default: Rational) -> Result<Rational> {
        v.as_deref().map_or(Ok(default), parse_rational)
    }

    pub fn resolve(&self) -> Result<ModelSpec> {
        let factor = |spec: FactorSpec| -> Result<ModelSpec> {
            spec.check()?;
            Ok(ModelSpec::Factor(spec))
        };
        match self.model.as_str() {
            "sphere" => factor(FactorSpec::Sphere { m: self.need(self.m, "m")?, c: Self::rational(&self.c, int(1))? }),
            "flat" => factor(FactorSpec::Flat { m: self.need(self.m, "m")? }),
            "cpn" => {
                let n = self.need(self.n, "n")?;
                factor(FactorSpec::Cpn { n, kappa: Self::rational(&self.kappa, cpn_kappa(n))? })
            }
            "hpn" => {
                let n = self.need(self.n, "n")?;
                factor(FactorSpec::Hpn { n, kappa: Self::rational(&self.kappa, hpn_kappa(n))? })
            }
            "op2" => factor(FactorSpec::Op2),
            "random" => factor(FactorSpec::Random { m: self.need(self.m, "m")?, seed: self.seed.unwrap_or(0) }),
            "gr2rn" => {
                let n = self.need(self.n, "n")?;
                if n < 4 {
                    return Err(Error::DimensionTooSmall { min: 4, found: n });
                }
                Ok(ModelSpec::Gr2rn { n })
            }
            "product" => {
                let side = |v: &Option<String>, flag: &str| -> Result<FactorSpec> {
                    let text = v.as_deref().ok_or_else(|| Error::InvalidParameter(format!("--model product requires --{flag}")))?;
                    FactorSpec::parse(text)
                };
                Ok(ModelSpec::Product { left: side(&self.left, "left")?, right: side(&self.right, "right")? })
            }
            "file" => Ok(ModelSpec::File { path: self.path.clone().ok_or_else(|| Error::InvalidParameter("--model file requires --path".into()))? }),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

impl ModelSpec {
    pub fn tensor(&self) -> Result<CurvatureTensor> {
        let missing = || Error::InvalidParameter(format!("model {self} has no explicit curvature tensor"));
        match self {
            ModelSpec::Factor(f) => f.tensor()?.ok_or_else(missing),
            ModelSpec::Product { left, right } => {
                let (a, b) = (left.tensor()?.ok_or_else(missing)?, right.tensor()?.ok_or_else(missing)?);
                Ok(direct_sum(&a, &b))
            }
            ModelSpec::File { path } => {
                let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let r = CurvatureTensor::from_json(&text)?;
                r.ensure_valid()?;
                Ok(r)
            }
            ModelSpec::Gr2rn { .. } => Err(missing()),
        }
    }

    pub fn moments(&self, k_max: usize, budget: DegreeBudget) -> Result<MomentSequence> {
        match self {
            ModelSpec::Factor(f) => f.moments(k_max, budget),
            ModelSpec::Gr2rn { n } => gr2rn_sequence(*n, k_max),
            ModelSpec::Product { left, right } => {
                product_sequence(&left.moments(k_max, budget)?, &right.moments(k_max, budget)?, k_max)
            }
            ModelSpec::File { .. } => psi_sequence(&self.tensor()?, k_max, budget),
        }
    }

    pub fn density(&self, options: &HistogramOptions) -> Result<DensityModel> {
        match self {
            ModelSpec::Factor(f) => match f.density()? {
                DensityModel::Atom(_) => Err(Error::InvalidParameter(format!("{self} is a point mass, it has no density"))),
                d => Ok(d),
            },
            ModelSpec::Product { left, right } => {
                product_density(&left.density()?, left.dimension(), &right.density()?, right.dimension(), options)
            }
            _ => Err(Error::InvalidParameter(format!("model {self} has no closed-form density"))),
        }
    }
}
