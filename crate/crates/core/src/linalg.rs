//! Dense Hermitian eigen-solves for the small matrices used throughout.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Imaginary parts below this are treated as zero when choosing the real path.
const REAL_TOL: f64 = 1e-14;

fn is_real(m: &DMatrix<Complex64>) -> bool {
    m.iter().all(|z| z.im.abs() <= REAL_TOL)
}

/// Real symmetric embedding `[[A, -B], [B, A]]` of `A + iB`.
fn real_embedding(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = m.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = m[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if is_real(m) {
        sorted_eigen(m.map(|z| z.re)).0
    } else {
        // every eigenvalue of the embedding appears twice
        sorted_eigen(real_embedding(m)).0.into_iter().step_by(2).collect()
    }
}

/// Lowest eigenpair plus the gap to the next level.
pub struct Ground {
    pub energy: f64,
    pub gap: f64,
    pub vector: DVector<Complex64>,
}

pub fn ground_state(m: &DMatrix<Complex64>) -> Ground {
    let n = m.nrows();
    if is_real(m) {
        let (vals, vecs) = sorted_eigen(m.map(|z| z.re));
        let gap = vals.get(1).map_or(f64::INFINITY, |v| v - vals[0]);
        let vector = DVector::from_fn(n, |r, _| Complex64::new(vecs[(r, 0)], 0.0));
        Ground {
            energy: vals[0],
            gap,
            vector,
        }
    } else {
        let (vals, vecs) = sorted_eigen(real_embedding(m));
        let gap = vals.get(2).map_or(f64::INFINITY, |v| v - vals[0]);
        let mut vector = DVector::from_fn(n, |r, _| Complex64::new(vecs[(r, 0)], vecs[(r + n, 0)]));
        let norm = vector.norm();
        vector /= Complex64::new(norm, 0.0);
        Ground {
            energy: vals[0],
            gap,
            vector,
        }
    }
}
