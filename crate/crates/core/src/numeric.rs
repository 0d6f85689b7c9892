//! Small complex-matrix helpers: tolerance-aware rank and norms.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Rank by Gaussian elimination with full pivoting; entries below
/// `tol * max(1, initial max modulus)` count as zero.
pub fn rank_with_tol(m: &DMatrix<Complex64>, tol: f64) -> usize {
    let mut a = m.clone();
    let scale = max_abs(&a).max(1.0);
    let threshold = tol * scale;
    let (rows, cols) = a.shape();
    let mut rank = 0;
    let mut col_perm: Vec<usize> = (0..cols).collect();
    for k in 0..rows.min(cols) {
        let mut best = (k, k, 0.0f64);
        for i in k..rows {
            for j in k..cols {
                let v = a[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= threshold {
            break;
        }
        a.swap_rows(k, best.0);
        a.swap_columns(k, best.1);
        col_perm.swap(k, best.1);
        let piv = a[(k, k)];
        for i in k + 1..rows {
            let f = a[(i, k)] / piv;
            if f.norm() > 0.0 {
                for j in k..cols {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Treats each matrix in `mats` as a flat vector and returns the dimension
/// of their span at tolerance `tol`.
pub fn span_dimension(mats: &[DMatrix<Complex64>], tol: f64) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].len();
    let stacked = DMatrix::from_fn(mats.len(), len, |i, j| mats[i].as_slice()[j]);
    rank_with_tol(&stacked, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_projector_sum() {
        let n = 4;
        let j = DMatrix::from_element(n, n, Complex64::new(1.0, 0.0));
        assert_eq!(rank_with_tol(&j, 1e-9), 1);
        let id = DMatrix::identity(n, n);
        assert_eq!(rank_with_tol(&id, 1e-9), 4);
        let sum = &id - &j * Complex64::new(0.25, 0.0);
        assert_eq!(rank_with_tol(&sum, 1e-9), 3);
    }

    #[test]
    fn span_dimension_counts_independent_matrices() {
        let a = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let b = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let c = &a + &b;
        assert_eq!(span_dimension(&[a, b, c], 1e-9), 2);
    }
}
