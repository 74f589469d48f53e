use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cross::CrossDensity;
use super::product::product_weight;
use crate::error::{Error, Result};
use crate::mc::{chunk_rng, sample_simplex, CHUNK_SIZE};
use crate::poly::rational::{factorial, to_f64};
use crate::quadrature::integrate;

/// Law of `x^2 mu + y^2 nu` on the 2-simplex with density proportional to
/// `x^{m-2} y^{n-2}`: the sectional curvature distribution of a product of
/// space forms of curvatures `mu` and `nu` and dimensions `m` and `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductKernel {
    pub m: usize,
    pub n: usize,
    pub mu: f64,
    pub nu: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HistogramOptions {
    pub bins: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for HistogramOptions {
    fn default() -> Self {
        HistogramOptions { bins: 512, samples: 1 << 20, seed: 0 }
    }
}

impl ProductKernel {
    pub fn new(m: usize, n: usize, mu: f64, nu: f64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::DimensionTooSmall { min: 1, found: m.min(n) });
        }
        if !(mu.is_finite() && nu.is_finite()) {
            return Err(Error::InvalidParameter("kernel curvatures must be finite".into()));
        }
        for (dim, c) in [(m, mu), (n, nu)] {
            if dim == 1 && c != 0.0 {
                return Err(Error::InvalidParameter("a one-dimensional factor is flat".into()));
            }
        }
        Ok(ProductKernel { m, n, mu, nu })
    }

    /// Convex hull of `{0, mu, nu}`.
    pub fn support(&self) -> (f64, f64) {
        (self.mu.min(self.nu).min(0.0), self.mu.max(self.nu).max(0.0))
    }

    /// The kernel is degenerate (a point mass at 0) when both curvatures vanish.
    pub fn is_atomic(&self) -> bool {
        self.mu == 0.0 && self.nu == 0.0
    }

    /// With one curvature zero the density is elementary.
    pub fn has_closed_form(&self) -> bool {
        !self.is_atomic() && (self.mu == 0.0 || self.nu == 0.0)
    }

    /// `(m, n, mu)` with the curved factor first.
    fn oriented(&self) -> (usize, usize, f64) {
        if self.nu == 0.0 {
            (self.m, self.n, self.mu)
        } else {
            (self.n, self.m, self.nu)
        }
    }

    fn closed_prefactor(m: usize, n: usize) -> f64 {
        to_f64(&(factorial((m + n - 2) as u64) / (factorial((m - 2) as u64) * factorial((n - 1) as u64))))
    }

    /// `(m+n-2)!/((m-2)!(n-1)!) sqrt(s/mu)^{m-3} (1 - sqrt(s/mu))^{n-1} / (2|mu|)`.
    pub fn closed_density(&self, s: f64) -> Result<f64> {
        if !self.has_closed_form() {
            return Err(Error::InvalidParameter("kernel has no closed form; tabulate it".into()));
        }
        let (lo, hi) = self.support();
        if s < lo || s > hi {
            return Err(Error::OutsideSupport { value: s, lo, hi });
        }
        let (m, n, mu) = self.oriented();
        let w = (s / mu).sqrt();
        if w == 0.0 && m < 3 {
            return Ok(f64::INFINITY);
        }
        Ok(Self::closed_prefactor(m, n) * w.powi(m as i32 - 3) * (1.0 - w).powi(n as i32 - 1) / (2.0 * mu.abs()))
    }

    /// `E[s^k]` by quadrature in `w = sqrt(s/mu)` (closed form only).
    pub fn closed_moment_quadrature(&self, k: u32) -> Result<f64> {
        if !self.has_closed_form() {
            return Err(Error::InvalidParameter("kernel has no closed form; tabulate it".into()));
        }
        let (m, n, mu) = self.oriented();
        let c = Self::closed_prefactor(m, n);
        let f = |w: f64| c * (mu * w * w).powi(k as i32) * w.powi(m as i32 - 2) * (1.0 - w).powi(n as i32 - 1);
        Ok(integrate(f, 0.0, 1.0, 1e-15, 1e-14).value)
    }

    /// Exact moment `sum_r w(m,n,k,r) mu^r nu^{k-r}`.
    pub fn moment(&self, k: usize) -> f64 {
        (0..=k)
            .map(|r| to_f64(&product_weight(self.m, self.n, k, r)) * self.mu.powi(r as i32) * self.nu.powi((k - r) as i32))
            .sum()
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (x, y) = sample_simplex(self.m, self.n, rng).expect("validated dimensions");
        x * x * self.mu + y * y * self.nu
    }

    /// Histogram of the pushforward from `options.samples` draws.
    pub fn tabulate(&self, options: &HistogramOptions) -> Result<Histogram> {
        let (lo, hi) = self.support();
        let kernel = *self;
        Histogram::from_sampler(lo, hi, options, move |rng| {
            let (x, y) = sample_simplex(kernel.m, kernel.n, rng).expect("validated dimensions");
            x * x * kernel.mu + y * y * kernel.nu
        })
    }
}

/// Piecewise constant density on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn from_sampler<F>(lo: f64, hi: f64, options: &HistogramOptions, sampler: F) -> Result<Histogram>
    where
        F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
    {
        if options.bins == 0 || options.samples == 0 {
            return Err(Error::InvalidParameter("bins and samples must be positive".into()));
        }
        if hi <= lo {
            return Err(Error::InvalidParameter("histogram needs a nondegenerate interval".into()));
        }
        let bins = options.bins;
        let width = (hi - lo) / bins as f64;
        let samples = options.samples;
        let chunks = samples.div_ceil(CHUNK_SIZE);
        let counts = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = chunk_rng(options.seed, c);
                let mut counts = vec![0u64; bins];
                for _ in 0..CHUNK_SIZE.min(samples - c * CHUNK_SIZE) {
                    let s = sampler(&mut rng);
                    let b = (((s - lo) / width) as usize).min(bins - 1);
                    counts[b] += 1;
                }
                counts
            })
            .reduce(
                || vec![0u64; bins],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        let scale = 1.0 / (samples as f64 * width);
        Ok(Histogram { lo, hi, densities: counts.into_iter().map(|c| c as f64 * scale).collect() })
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.densities.len() as f64
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        if s < self.lo || s > self.hi {
            return Err(Error::OutsideSupport { value: s, lo: self.lo, hi: self.hi });
        }
        let b = (((s - self.lo) / self.width()) as usize).min(self.densities.len() - 1);
        Ok(self.densities[b])
    }

    /// Bin-midpoint moment.
    pub fn moment(&self, k: u32) -> f64 {
        let w = self.width();
        self.densities
            .iter()
            .enumerate()
            .map(|(i, d)| d * w * (self.lo + (i as f64 + 0.5) * w).powi(k as i32))
            .sum()
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let w = self.width();
        let mut u: f64 = rng.random::<f64>();
        for (i, d) in self.densities.iter().enumerate() {
            let p = d * w;
            if u < p {
                return self.lo + (i as f64 + u / p) * w;
            }
            u -= p;
        }
        self.hi
    }
}

/// A probability density on the real line, possibly atomic.
#[derive(Clone, Debug, PartialEq)]
pub enum DensityModel {
    /// Point mass, the curvature law of a space form.
    Atom(f64),
    Cross(CrossDensity),
    Kernel(ProductKernel),
    Histogram(Histogram),
}

impl DensityModel {
    pub fn support(&self) -> (f64, f64) {
        match self {
            DensityModel::Atom(c) => (*c, *c),
            DensityModel::Cross(d) => d.support(),
            DensityModel::Kernel(k) => k.support(),
            DensityModel::Histogram(h) => (h.lo, h.hi),
        }
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        match self {
            DensityModel::Atom(_) => Err(Error::InvalidParameter("point mass has no density".into())),
            DensityModel::Cross(d) => d.eval(s),
            DensityModel::Kernel(k) => k.closed_density(s),
            DensityModel::Histogram(h) => h.eval(s),
        }
    }

    pub fn moment(&self, k: u32) -> Result<f64> {
        match self {
            DensityModel::Atom(c) => Ok(c.powi(k as i32)),
            DensityModel::Cross(d) => Ok(d.moment_quadrature(k)),
            DensityModel::Kernel(kern) => kern.closed_moment_quadrature(k),
            DensityModel::Histogram(h) => Ok(h.moment(k)),
        }
    }

    /// Total mass, 1 for a normalized density.
    pub fn mass(&self) -> Result<f64> {
        match self {
            DensityModel::Histogram(h) => Ok(h.densities.iter().sum::<f64>() * h.width()),
            other => other.moment(0),
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            DensityModel::Atom(c) => *c,
            DensityModel::Cross(d) => d.sample(rng),
            DensityModel::Kernel(k) => k.sample(rng),
            DensityModel::Histogram(h) => h.sample(rng),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, DensityModel::Atom(_))
    }
}

/// Density of the product kernel at `s`: closed form when one curvature is
/// zero, otherwise read off a Monte Carlo histogram.
pub fn product_kernel_density(kernel: &ProductKernel, s: f64, options: &HistogramOptions) -> Result<f64> {
    if kernel.has_closed_form() {
        return kernel.closed_density(s);
    }
    if kernel.is_atomic() {
        return Err(Error::InvalidParameter("point mass has no density".into()));
    }
    if kernel.m < 2 || kernel.n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: kernel.m.min(kernel.n) });
    }
    kernel.tabulate(options)?.eval(s)
}

/// Sectional curvature law of a product from the laws of its factors.
pub fn product_density(
    density_m: &DensityModel,
    m: usize,
    density_n: &DensityModel,
    n: usize,
    options: &HistogramOptions,
) -> Result<DensityModel> {
    for d in [density_m, density_n] {
        let mass = d.mass()?;
        if (mass - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized { mass });
        }
    }
    if let (DensityModel::Atom(mu), DensityModel::Atom(nu)) = (density_m, density_n) {
        let kernel = ProductKernel::new(m, n, *mu, *nu)?;
        if kernel.is_atomic() {
            return Ok(DensityModel::Atom(0.0));
        }
        if kernel.has_closed_form() {
            return Ok(DensityModel::Kernel(kernel));
        }
        return Ok(DensityModel::Histogram(kernel.tabulate(options)?));
    }
    if m == 0 || n == 0 {
        return Err(Error::DimensionTooSmall { min: 1, found: 0 });
    }
    let (lo_m, hi_m) = density_m.support();
    let (lo_n, hi_n) = density_n.support();
    let lo = lo_m.min(lo_n).min(0.0);
    let hi = hi_m.max(hi_n).max(0.0);
    let hist = Histogram::from_sampler(lo, hi, options, |rng| {
        let mu = density_m.sample(rng);
        let nu = density_n.sample(rng);
        let (x, y) = sample_simplex(m, n, rng).expect("checked dimensions");
        x * x * mu + y * y * nu
    })?;
    Ok(DensityModel::Histogram(hist))
}
