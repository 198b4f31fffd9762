use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::integrals::MolecularSystem;
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;
const DENSITY_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct RhfSolution {
    /// Columns are molecular orbitals in ascending orbital energy.
    pub mo_coefficients: DMatrix<f64>,
    pub orbital_energies: DVector<f64>,
    /// Total energy including nuclear repulsion.
    pub e_hf: f64,
    pub iterations: usize,
}

/// Solves the generalized eigenproblem `F C = S C e` via symmetric orthogonalization.
fn diagonalize_fock(fock: &DMatrix<f64>, x: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let fp = x.transpose() * fock * x;
    let eig = SymmetricEigen::new(fp);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies = DVector::from_fn(n, |i, _| eig.eigenvalues[order[i]]);
    let cp = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let mut c = x * cp;
    // sign convention: first non-negligible AO coefficient of every MO is positive
    for mut col in c.column_iter_mut() {
        let lead = col.iter().copied().find(|v| v.abs() > 1e-12).unwrap_or(1.0);
        if lead < 0.0 {
            col.neg_mut();
        }
    }
    (energies, c)
}

fn density(c: &DMatrix<f64>, n_occ: usize) -> DMatrix<f64> {
    let occ = c.columns(0, n_occ);
    2.0 * &occ * occ.transpose()
}

fn two_electron_part(sys: &MolecularSystem, p: &DMatrix<f64>) -> DMatrix<f64> {
    let n = sys.n_orbitals();
    let g = &sys.two_electron;
    DMatrix::from_fn(n, n, |mu, nu| {
        let mut acc = 0.0;
        for la in 0..n {
            for si in 0..n {
                acc += p[(la, si)] * (g.get(mu, nu, si, la) - 0.5 * g.get(mu, la, si, nu));
            }
        }
        acc
    })
}

/// Closed-shell Hartree-Fock for the two-electron system, starting from the
/// core-Hamiltonian guess.
pub fn solve_rhf(sys: &MolecularSystem) -> Result<RhfSolution> {
    let n_occ = 1;
    let h = sys.core_hamiltonian();

    let s_eig = SymmetricEigen::new(sys.overlap.clone());
    if s_eig.eigenvalues.iter().any(|&v| v <= 1e-12) {
        return Err(Error::InvalidInput("overlap matrix is not positive definite".into()));
    }
    let inv_sqrt = DMatrix::from_diagonal(&s_eig.eigenvalues.map(|v| 1.0 / v.sqrt()));
    let x = &s_eig.eigenvectors * inv_sqrt * s_eig.eigenvectors.transpose();

    let (_, c0) = diagonalize_fock(&h, &x);
    let mut p = density(&c0, n_occ);
    let mut last_change = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let f = &h + two_electron_part(sys, &p);
        let (e, cn) = diagonalize_fock(&f, &x);
        let pn = density(&cn, n_occ);
        last_change = (&pn - &p).abs().max();
        p = pn;
        if last_change < DENSITY_TOL {
            let f = &h + two_electron_part(sys, &p);
            let e_elec = 0.5 * p.component_mul(&(&h + &f)).sum();
            return Ok(RhfSolution {
                mo_coefficients: cn,
                orbital_energies: e,
                e_hf: e_elec + sys.nuclear_repulsion,
                iterations: it,
            });
        }
    }
    Err(Error::ScfNotConverged {
        iterations: MAX_ITERATIONS,
        last_change,
    })
}
