//! Closed-form moments and densities: the CROSS family on `[1, 4]`, the
//! Riemannian product combinator, the real Grassmannian of 2-planes, and
//! product kernels on the 2-simplex.

mod cross;
mod density;
mod product;

pub use cross::{cross_density_eval, cross_density_moment_quadrature, cross_moment, cross_sequence, CrossDensity};
pub use density::{product_density, product_kernel_density, DensityModel, Histogram, HistogramOptions, ProductKernel};
pub use product::{gr2rn_moment, gr2rn_sequence, product_moment, product_sequence, product_weight, simplex_integral};
