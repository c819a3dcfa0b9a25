//! Dense complex linear algebra on top of nalgebra.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ZERO};

pub type Mat = DMatrix<Scalar>;

pub fn inverse(m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    m.clone().try_inverse()
}

/// Least-squares solution of `a·x = b` plus the residual max-norm.
pub fn lstsq(a: &Mat, b: &Mat) -> Result<(Mat, f64)> {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let x = svd.solve(b, smax * 1e-12).map_err(|e| Error::Singular(e.to_string()))?;
    let r = a * &x - b;
    let res = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((x, res))
}

pub fn rank(m: &Mat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > tol)
        .count()
}

/// Orthonormal basis of the span of the given column vectors.
pub fn span_basis(vectors: &[Vec<Scalar>], tol: f64) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let n = vectors[0].len();
    let m = Mat::from_fn(n, vectors.len(), |i, j| vectors[j][i]);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > tol)
        .map(|(k, _)| u.column(k).iter().cloned().collect())
        .collect()
}

/// Eigenvalues of a square complex matrix (Schur diagonal).
pub fn eigenvalues(m: &Mat) -> Result<Vec<Scalar>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), 1e-14, 10_000)
        .ok_or_else(|| Error::Singular("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity(n: usize) -> Mat {
    Mat::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> Mat {
    Mat::from_element(r, c, ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;

    #[test]
    fn inverse_and_rank() {
        let m = Mat::from_row_slice(2, 2, &[real(1.0), real(2.0), real(3.0), real(4.0)]);
        let inv = inverse(&m).unwrap();
        assert!(max_abs(&(&m * &inv - identity(2))) < 1e-12);
        let sing = Mat::from_row_slice(2, 2, &[real(1.0), real(2.0), real(2.0), real(4.0)]);
        assert!(inverse(&sing).is_none());
        assert_eq!(rank(&sing, 1e-9), 1);
    }

    #[test]
    fn eigenvalues_of_fib_adjacency() {
        let m = Mat::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(1.0)]);
        let mut ev: Vec<f64> = eigenvalues(&m).unwrap().iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((ev[1] - phi).abs() < 1e-12 && (ev[0] + 1.0 / phi).abs() < 1e-12);
    }

    #[test]
    fn lstsq_recovers_solution() {
        let a = Mat::from_row_slice(
            3,
            2,
            &[real(1.0), real(0.0), real(0.0), real(1.0), real(1.0), real(1.0)],
        );
        let b = Mat::from_row_slice(3, 1, &[real(1.0), real(2.0), real(3.0)]);
        let (x, res) = lstsq(&a, &b).unwrap();
        assert!(res < 1e-12);
        assert!((x[(0, 0)].re - 1.0).abs() < 1e-12 && (x[(1, 0)].re - 2.0).abs() < 1e-12);
    }
}
