//! Model tensors: space forms, projective spaces, direct sums and random tensors.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CurvatureTensor, JacobiSpectrumModel};
use crate::error::{Error, Result};
use crate::poly::rational::{int, rat};
use crate::poly::Rational;

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Constant sectional curvature `c` on `R^m`: `R_{X,Y}Z = c (g(Y,Z) X - g(X,Z) Y)`.
pub fn make_constant_curvature(m: usize, c: Rational) -> Result<CurvatureTensor> {
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    let mut r = CurvatureTensor::zero(m);
    if c.is_zero() {
        return Ok(r);
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let v = delta(j, k) * delta(i, l) - delta(i, k) * delta(j, l);
                    if v != 0 {
                        r.set(i, j, k, l, &c * int(v));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Integer matrix of an orthogonal complex structure, `s[b][a] = g(S e_a, e_b)`.
type Structure = Vec<Vec<i64>>;

/// Kähler-type tensor
/// `R_{X,Y}Z = -scale * (g(X,Z)Y - g(Y,Z)X + sum_S [g(SX,Z)SY - g(SY,Z)SX + 2 g(SX,Y)SZ])`.
fn kahler_type(m: usize, structures: &[Structure], scale: &Rational) -> CurvatureTensor {
    let mut r = CurvatureTensor::zero(m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let mut v = delta(i, k) * delta(j, l) - delta(j, k) * delta(i, l);
                    for s in structures {
                        v += s[k][i] * s[l][j] - s[k][j] * s[l][i] + 2 * s[j][i] * s[l][k];
                    }
                    if v != 0 {
                        r.set(i, j, k, l, -scale * int(v));
                    }
                }
            }
        }
    }
    r
}

/// `I e_{2p} = e_{2p+1}`, `I e_{2p+1} = -e_{2p}` (zero based) on `R^{2n}`.
fn complex_structure(n: usize) -> Structure {
    let m = 2 * n;
    let mut s = vec![vec![0; m]; m];
    for p in 0..n {
        s[2 * p + 1][2 * p] = 1;
        s[2 * p][2 * p + 1] = -1;
    }
    s
}

/// Left multiplication by the units `i`, `j`, `k` on `H^n = R^{4n}`,
/// each quaternion block in the basis `1, i, j, k`.
fn quaternionic_structures(n: usize) -> [Structure; 3] {
    let m = 4 * n;
    // image of basis element a under left multiplication: (target index, sign)
    let tables: [[(usize, i64); 4]; 3] = [
        [(1, 1), (0, -1), (3, 1), (2, -1)],  // i: 1->i, i->-1, j->k, k->-j
        [(2, 1), (3, -1), (0, -1), (1, 1)],  // j: 1->j, i->-k, j->-1, k->i
        [(3, 1), (2, 1), (1, -1), (0, -1)],  // k: 1->k, i->j, j->-i, k->-1
    ];
    tables.map(|table| {
        let mut s = vec![vec![0; m]; m];
        for block in 0..n {
            for (a, &(b, sign)) in table.iter().enumerate() {
                s[4 * block + b][4 * block + a] = sign;
            }
        }
        s
    })
}

/// Symmetric Kähler tensor on `R^{2n}` with scalar curvature `kappa`.
///
/// For `kappa = 4n(n+1)` the sectional curvature ranges over `[1, 4]`.
pub fn make_cpn(n: usize, kappa: Rational) -> Result<CurvatureTensor> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: n });
    }
    let scale = kappa / int(4 * (n * (n + 1)) as i64);
    Ok(kahler_type(2 * n, &[complex_structure(n)], &scale))
}

/// Symmetric quaternion-Kähler tensor on `R^{4n}` with scalar curvature `kappa`.
///
/// For `kappa = 16n(n+2)` the sectional curvature ranges over `[1, 4]`.
pub fn make_hpn(n: usize, kappa: Rational) -> Result<CurvatureTensor> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: n });
    }
    let scale = kappa / int(16 * (n * (n + 2)) as i64);
    Ok(kahler_type(4 * n, &quaternionic_structures(n), &scale))
}

/// Jacobi spectrum of the Cayley plane at scalar curvature 576.
pub fn make_op2_spectrum() -> JacobiSpectrumModel {
    JacobiSpectrumModel::new(vec![(Rational::zero(), 1), (int(4), 7), (int(1), 8)])
        .expect("static spectrum is well formed")
}

/// Block-diagonal tensor of a Riemannian product.
pub fn direct_sum(a: &CurvatureTensor, b: &CurvatureTensor) -> CurvatureTensor {
    let (m, n) = (a.dimension(), b.dimension());
    let mut r = CurvatureTensor::zero(m + n);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let v = a.get(i, j, k, l);
                    if !v.is_zero() {
                        r.set(i, j, k, l, v.clone());
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = b.get(i, j, k, l);
                    if !v.is_zero() {
                        r.set(m + i, m + j, m + k, m + l, v.clone());
                    }
                }
            }
        }
    }
    r
}

/// Projects an arbitrary 4-index array onto algebraic curvature tensors:
/// antisymmetrize in `(i,j)` and `(k,l)`, symmetrize under pair exchange and
/// subtract the cyclic (Bianchi) average.
pub fn project_to_curvature(m: usize, raw: &[Rational]) -> CurvatureTensor {
    let t = CurvatureTensor::from_components(m, raw.to_vec()).expect("length m^4");
    let half = rat(1, 2);
    let third = rat(1, 3);
    let map = |f: &dyn Fn(usize, usize, usize, usize) -> Rational| {
        let mut out = CurvatureTensor::zero(m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        out.set(i, j, k, l, f(i, j, k, l));
                    }
                }
            }
        }
        out
    };
    let t1 = map(&|i, j, k, l| (t.get(i, j, k, l) - t.get(j, i, k, l)) * &half);
    let t2 = map(&|i, j, k, l| (t1.get(i, j, k, l) - t1.get(i, j, l, k)) * &half);
    let t3 = map(&|i, j, k, l| (t2.get(i, j, k, l) + t2.get(k, l, i, j)) * &half);
    map(&|i, j, k, l| {
        let cyclic = t3.get(i, j, k, l) + t3.get(j, k, i, l) + t3.get(k, i, j, l);
        t3.get(i, j, k, l) - cyclic * &third
    })
}

/// Deterministic pseudo-random curvature tensor; raw entries are integers in
/// `[-magnitude, magnitude]` drawn from ChaCha8 seeded with `seed`.
pub fn random_tensor(m: usize, seed: u64, magnitude: u32) -> Result<CurvatureTensor> {
    if m < 2 {
        return Err(Error::DimensionTooSmall { min: 2, found: m });
    }
    if magnitude == 0 {
        return Ok(CurvatureTensor::zero(m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = i64::from(magnitude);
    let raw: Vec<Rational> = (0..m.pow(4)).map(|_| int(rng.random_range(-bound..=bound))).collect();
    Ok(project_to_curvature(m, &raw))
}
