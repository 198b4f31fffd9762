//! Reduction of the four-qubit H2 Hamiltonian to two and one qubits.
//!
//! The reduction projects onto the two-electron, Sz = 0 sector and keeps
//! only the determinants that the spatial symmetry couples to the reference.
//!
//! Two-qubit encoding: qubit 0 flags the up electron promoted sg -> su,
//! qubit 1 flags the down electron. So `00` is the Hartree-Fock determinant
//! |1100>, `11` the double excitation |0011>, and `10`, `01` the singles
//! |0110> and |1001>. One-qubit encoding: |0> = |1100>, |1> = |0011>.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Four-qubit basis indices (bit j = qubit j) of the sector determinants.
pub const HF_INDEX: usize = 0b0011;
pub const DOUBLE_INDEX: usize = 0b1100;
pub const SINGLE_UP_INDEX: usize = 0b0110;
pub const SINGLE_DOWN_INDEX: usize = 0b1001;

/// Two-qubit sector basis, in two-qubit index order.
pub const TWO_QUBIT_SECTOR: [usize; 4] = [HF_INDEX, SINGLE_UP_INDEX, SINGLE_DOWN_INDEX, DOUBLE_INDEX];
/// One-qubit sector basis.
pub const ONE_QUBIT_SECTOR: [usize; 2] = [HF_INDEX, DOUBLE_INDEX];

const CLOSURE_TOL: f64 = 1e-10;
const DROP_TOL: f64 = 1e-14;

/// `g0 I + g1 Z + g2 X` on the {HF, double} qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneQubitParams {
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
}

impl OneQubitParams {
    pub fn from_sum(h1q: &PauliSum) -> Result<Self> {
        if h1q.width() != 1 {
            return Err(Error::WidthMismatch {
                left: 1,
                right: h1q.width(),
            });
        }
        if h1q.coefficient(&PauliString::from_sparse(1, &[(0, Pauli::Y)])?).abs() > DROP_TOL {
            return Err(Error::InvalidInput("one-qubit Hamiltonian has a Y component".into()));
        }
        Ok(OneQubitParams {
            g0: h1q.constant(),
            g1: h1q.coefficient(&PauliString::from_sparse(1, &[(0, Pauli::Z)])?),
            g2: h1q.coefficient(&PauliString::from_sparse(1, &[(0, Pauli::X)])?),
        })
    }

    pub fn to_sum(self) -> PauliSum {
        let mut h = PauliSum::constant_term(1, self.g0);
        let z = PauliString::from_sparse(1, &[(0, Pauli::Z)]).expect("width 1");
        let x = PauliString::from_sparse(1, &[(0, Pauli::X)]).expect("width 1");
        h.add_term(z, self.g1).expect("width 1");
        h.add_term(x, self.g2).expect("width 1");
        h.simplify(DROP_TOL);
        h
    }

    /// Diagonal element on the Hartree-Fock determinant.
    pub fn e_hf(self) -> f64 {
        self.g0 + self.g1
    }

    /// Diagonal element on the doubly excited determinant.
    pub fn e_double(self) -> f64 {
        self.g0 - self.g1
    }

    pub fn ground_energy(self) -> f64 {
        self.g0 - self.g1.hypot(self.g2)
    }
}

/// Expands a real symmetric `2^k x 2^k` matrix in the Pauli basis.
pub fn pauli_decompose(m: &DMatrix<Complex64>) -> Result<PauliSum> {
    let dim = m.nrows();
    if dim == 0 || !dim.is_power_of_two() || m.ncols() != dim {
        return Err(Error::InvalidInput(format!("{}x{} is not a qubit operator", m.nrows(), m.ncols())));
    }
    let width = dim.trailing_zeros().max(1) as usize;
    let mut out = PauliSum::new(width);
    for code in 0..(1usize << (2 * width)) {
        let letters = (0..width).map(|q| Pauli::ALL[(code >> (2 * q)) & 3]).collect();
        let s = PauliString::new(letters)?;
        let mut tr = Complex64::new(0.0, 0.0);
        for col in 0..dim {
            let (amp, row) = s.apply_to_basis(col);
            // Tr(P M) = sum_col <col|P M|col>, with P|row> known from P|col>
            // since Pauli matrices are Hermitian: <col|P = conj(amp) <row|
            tr += amp.conj() * m[(row, col)];
        }
        let c = tr / dim as f64;
        if c.im.abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("operator is not Hermitian ({s}: {c})")));
        }
        out.add_term(s, c.re)?;
    }
    out.simplify(DROP_TOL);
    Ok(out)
}

/// Restricts `full` to the span of `basis` (computational basis indices),
/// after checking that the span is invariant.
fn project(full: &DMatrix<Complex64>, basis: &[usize]) -> Result<DMatrix<Complex64>> {
    let mut leakage: f64 = 0.0;
    for &col in basis {
        for row in 0..full.nrows() {
            if !basis.contains(&row) {
                leakage = leakage.max(full[(row, col)].norm());
            }
        }
    }
    if leakage > CLOSURE_TOL {
        return Err(Error::TaperClosure { leakage });
    }
    let k = basis.len();
    Ok(DMatrix::from_fn(k, k, |r, c| full[(basis[r], basis[c])]))
}

/// Two-qubit and one-qubit representations of a four-qubit H2 Hamiltonian.
pub fn taper(h4: &PauliSum) -> Result<(PauliSum, PauliSum)> {
    if h4.width() != 4 {
        return Err(Error::InvalidInput(format!(
            "only the four-qubit H2 Hamiltonian can be tapered, got {} qubits",
            h4.width()
        )));
    }
    let full = h4.to_matrix();
    let h2q = pauli_decompose(&project(&full, &TWO_QUBIT_SECTOR)?)?;
    let h1q = pauli_decompose(&project(&full, &ONE_QUBIT_SECTOR)?)?;
    Ok((h2q, h1q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::molecule::{build_integrals, jordan_wigner, solve_rhf, to_fermion};

    fn h4(r: f64) -> PauliSum {
        let sys = build_integrals(r).unwrap();
        let rhf = solve_rhf(&sys).unwrap();
        jordan_wigner(&to_fermion(&sys, &rhf)).unwrap()
    }

    #[test]
    fn decompose_round_trips() {
        let h = PauliSum::from_text("0.3\tXZ\n-0.2\tYY\n0.7\tII\n0.1\tIX\n").unwrap();
        let back = pauli_decompose(&h.to_matrix()).unwrap();
        for (s, c) in h.terms() {
            assert!((back.coefficient(s) - c).abs() < 1e-15);
        }
        assert_eq!(back.len(), h.len());
    }

    #[test]
    fn tapered_spectra_share_the_ground_level() {
        let h = h4(0.7414);
        let (h2q, h1q) = taper(&h).unwrap();
        assert_eq!(h2q.width(), 2);
        assert_eq!(h1q.width(), 1);
        let e4 = linalg::eigenvalues(&h.to_matrix())[0];
        let e2 = linalg::eigenvalues(&h2q.to_matrix())[0];
        let e1 = linalg::eigenvalues(&h1q.to_matrix())[0];
        assert!((e4 - e2).abs() < 1e-10);
        assert!((e4 - e1).abs() < 1e-10);
        let p = OneQubitParams::from_sum(&h1q).unwrap();
        assert!((p.ground_energy() - e1).abs() < 1e-12);
    }

    #[test]
    fn one_qubit_entries_are_ci_matrix_elements() {
        let h = h4(0.7414);
        let m = h.to_matrix();
        let (_, h1q) = taper(&h).unwrap();
        let p = OneQubitParams::from_sum(&h1q).unwrap();
        assert!((p.e_hf() - m[(HF_INDEX, HF_INDEX)].re).abs() < 1e-12);
        assert!((p.e_double() - m[(DOUBLE_INDEX, DOUBLE_INDEX)].re).abs() < 1e-12);
        assert!((p.g2 - m[(HF_INDEX, DOUBLE_INDEX)].re).abs() < 1e-12);
        assert!(p.g2.abs() > 1e-3);
    }

    #[test]
    fn rejects_wrong_width_and_open_sectors() {
        assert!(taper(&PauliSum::constant_term(2, 1.0)).is_err());
        // X0 moves |1100> out of the two-electron sector
        let leaky = PauliSum::from_text("1.0\tXIII\n").unwrap();
        assert!(matches!(taper(&leaky), Err(Error::TaperClosure { .. })));
    }
}
