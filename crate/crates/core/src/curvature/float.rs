use nalgebra::DMatrix;

use super::CurvatureTensor;
use crate::poly::rational::to_f64;

/// Floating-point copy of a curvature tensor for sampling and rotation checks.
#[derive(Clone, Debug)]
pub struct FloatTensor {
    dimension: usize,
    components: Vec<f64>,
    nonzero: Vec<([usize; 4], f64)>,
}

impl From<&CurvatureTensor> for FloatTensor {
    fn from(r: &CurvatureTensor) -> Self {
        FloatTensor::new(r.dimension(), r.components().iter().map(to_f64).collect())
    }
}

impl FloatTensor {
    pub fn new(dimension: usize, components: Vec<f64>) -> Self {
        assert_eq!(components.len(), dimension.pow(4));
        let m = dimension;
        let mut nonzero = Vec::new();
        for (o, &v) in components.iter().enumerate() {
            if v != 0.0 {
                nonzero.push(([o / (m * m * m), (o / (m * m)) % m, (o / m) % m, o % m], v));
            }
        }
        FloatTensor { dimension, components, nonzero }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let m = self.dimension;
        self.components[((i * m + j) * m + k) * m + l]
    }

    /// Number of nonzero components.
    pub fn support_size(&self) -> usize {
        self.nonzero.len()
    }

    /// `g(R_{Y,X} X, Y) = sum R[i][j][k][l] y_i x_j x_k y_l`.
    pub fn curvature_form(&self, x: &[f64], y: &[f64]) -> f64 {
        self.nonzero.iter().map(|&([i, j, k, l], v)| v * y[i] * x[j] * x[k] * y[l]).sum()
    }

    pub fn sectional_curvature(&self, x: &[f64], y: &[f64]) -> f64 {
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(u, v)| u * v).sum::<f64>();
        let xy = dot(x, y);
        self.curvature_form(x, y) / (dot(x, x) * dot(y, y) - xy * xy)
    }

    /// Pushforward under the orthogonal map `q`:
    /// `R'[a][b][c][d] = sum q[a][i] q[b][j] q[c][k] q[d][l] R[i][j][k][l]`.
    pub fn rotated(&self, q: &DMatrix<f64>) -> FloatTensor {
        let m = self.dimension;
        let mut cur = self.components.clone();
        // contract one slot at a time
        for slot in 0..4 {
            let mut next = vec![0.0; m.pow(4)];
            let stride = m.pow(3 - slot as u32);
            for (o, value) in next.iter_mut().enumerate() {
                let a = (o / stride) % m;
                let base = o - a * stride;
                *value = (0..m).map(|i| q[(a, i)] * cur[base + i * stride]).sum();
            }
            cur = next;
        }
        FloatTensor::new(m, cur)
    }
}
