//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::poly::Rational;

pub type RationalMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(a: &mut RationalMatrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for v in a[r].iter_mut() {
            *v /= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
pub fn rank(a: &RationalMatrix) -> usize {
    let mut work = a.clone();
    row_reduce(&mut work).len()
}

pub fn mat_vec(a: &RationalMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{int, rat};

    #[test]
    fn rank_of_small_matrices() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&a), 1);
        let b = vec![vec![int(1), rat(1, 2)], vec![int(0), int(3)], vec![int(1), int(1)]];
        assert_eq!(rank(&b), 2);
        assert_eq!(rank(&vec![vec![int(0); 3]; 3]), 0);
    }

    #[test]
    fn reduced_form_solves_system() {
        // x + y = 3, x - y = 1
        let mut a = vec![vec![int(1), int(1), int(3)], vec![int(1), int(-1), int(1)]];
        let pivots = row_reduce(&mut a);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a[0][2], int(2));
        assert_eq!(a[1][2], int(1));
    }
}
