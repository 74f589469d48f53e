//! Monte Carlo oracles.
//!
//! Sampling is split into fixed-size chunks. Chunk `c` draws from a ChaCha8
//! generator seeded with the user seed and switched to stream `c`, so results
//! depend only on `(seed, samples)` and not on the number of worker threads.
//! Chunk statistics are merged in chunk order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{CurvatureTensor, FloatTensor};
use crate::error::{Error, Result};
use crate::poly::rational::to_f64;
use crate::poly::Polynomial;

pub const CHUNK_SIZE: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `|mean - value| <= sigmas * std_error`, with a float-rounding allowance
    /// for zero-variance estimates.
    pub fn agrees_with(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.std_error + 1e-12 * value.abs().max(1.0)
    }
}

/// Generator for chunk `chunk` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn merge(self, other: Moments) -> Moments {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Mean and standard error of `f` over `samples` draws.
pub fn estimate<F>(samples: u64, seed: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    Ok(estimate_powers(samples, seed, 1, f)?.remove(0))
}

/// Estimates of `E[v^k]`, `k = 1 ..= k_max`, where `v = f(rng)`; all powers
/// share the same draws.
pub fn estimate_powers<F>(samples: u64, seed: u64, k_max: u32, f: F) -> Result<Vec<McEstimate>>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let k_max = k_max.max(1) as usize;
    let empty = Moments { count: 0.0, mean: 0.0, m2: 0.0 };
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let parts: Vec<Vec<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let n = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            let mut acc = vec![empty; k_max];
            for _ in 0..n {
                let v = f(&mut rng);
                let mut p = 1.0;
                for a in acc.iter_mut() {
                    p *= v;
                    a.count += 1.0;
                    let delta = p - a.mean;
                    a.mean += delta / a.count;
                    a.m2 += delta * (p - a.mean);
                }
            }
            acc
        })
        .collect();
    Ok((0..k_max)
        .map(|k| {
            let total = parts.iter().fold(empty, |acc, part| acc.merge(part[k]));
            let variance = if samples > 1 { total.m2 / (total.count - 1.0) } else { 0.0 };
            McEstimate { mean: total.mean, std_error: (variance.max(0.0) / total.count).sqrt(), samples, seed }
        })
        .collect())
}

fn gaussian_vector(m: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..m).map(|_| rng.sample(StandardNormal)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

/// Uniform point on the unit sphere of `R^m`.
pub fn sample_sphere(m: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut x = gaussian_vector(m, rng);
        let norm = dot(&x, &x).sqrt();
        if norm > 1e-12 {
            x.iter_mut().for_each(|v| *v /= norm);
            return x;
        }
    }
}

/// Haar-distributed orthonormal 2-frame in `R^m`.
pub fn sample_two_frame(m: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<f64>, Vec<f64>)> {
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    loop {
        let mut x = gaussian_vector(m, rng);
        let mut y = gaussian_vector(m, rng);
        let (xx, yy, xy) = (dot(&x, &x), dot(&y, &y), dot(&x, &y));
        if xx * yy - xy * xy < 1e-12 {
            continue;
        }
        let nx = xx.sqrt();
        x.iter_mut().for_each(|v| *v /= nx);
        let p = dot(&x, &y);
        y.iter_mut().zip(&x).for_each(|(v, u)| *v -= p * u);
        let ny = dot(&y, &y).sqrt();
        y.iter_mut().for_each(|v| *v /= ny);
        return Ok((x, y));
    }
}

/// Estimate of `E[sec^k]` over uniformly random 2-planes.
pub fn mc_moment(r: &CurvatureTensor, k: u32, samples: u64, seed: u64) -> Result<McEstimate> {
    r.ensure_valid()?;
    let m = r.dimension();
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    let tensor = FloatTensor::from(r);
    estimate(samples, seed, |rng| {
        let (x, y) = sample_two_frame(m, rng).expect("m >= 2");
        tensor.curvature_form(&x, &y).powi(k as i32)
    })
}

/// Moments `E[sec^k]` for `k = 1 ..= k_max` from one stream of frames.
pub fn mc_moments(r: &CurvatureTensor, k_max: u32, samples: u64, seed: u64) -> Result<Vec<McEstimate>> {
    r.ensure_valid()?;
    let m = r.dimension();
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    let tensor = FloatTensor::from(r);
    estimate_powers(samples, seed, k_max, |rng| {
        let (x, y) = sample_two_frame(m, rng).expect("m >= 2");
        tensor.curvature_form(&x, &y)
    })
}

/// Average of `p` over the unit sphere.
pub fn mc_sphere_poly(p: &Polynomial, samples: u64, seed: u64) -> Result<McEstimate> {
    let m = p.dimension();
    let terms: Vec<(Vec<u32>, f64)> = p.terms().map(|(idx, c)| (idx.exponents().to_vec(), to_f64(c))).collect();
    estimate(samples, seed, |rng| {
        let x = sample_sphere(m, rng);
        terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(&x).map(|(&a, v)| v.powi(a as i32)).product::<f64>())
            .sum()
    })
}

/// Point `(x, y)` of the 2-simplex with density proportional to
/// `x^{m-2} y^{n-2}`, i.e. `(x, y, 1-x-y)` Dirichlet with parameters
/// `(m-1, n-1, 1)`. A one-dimensional factor pins its coordinate to 0.
pub fn sample_simplex(m: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    if m == 0 || n == 0 {
        return Err(Error::DimensionTooSmall { min: 1, found: m.min(n) });
    }
    let draw = |shape: usize, rng: &mut ChaCha8Rng| -> f64 {
        if shape == 0 {
            0.0
        } else {
            Gamma::new(shape as f64, 1.0).expect("positive shape").sample(rng)
        }
    };
    loop {
        let a = draw(m - 1, rng);
        let b = draw(n - 1, rng);
        let c = draw(1, rng);
        let total = a + b + c;
        if total > 0.0 {
            return Ok((a / total, b / total));
        }
    }
}

/// Estimate of `E[(x^2 mu + y^2 nu)^k]` on the 2-simplex.
pub fn mc_simplex(m: usize, n: usize, mu: f64, nu: f64, k: u32, samples: u64, seed: u64) -> Result<McEstimate> {
    if m == 0 || n == 0 {
        return Err(Error::DimensionTooSmall { min: 1, found: m.min(n) });
    }
    estimate(samples, seed, |rng| {
        let (x, y) = sample_simplex(m, n, rng).expect("checked dimensions");
        (x * x * mu + y * y * nu).powi(k as i32)
    })
}
