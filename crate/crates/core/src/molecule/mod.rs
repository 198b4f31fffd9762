//! H2/STO-3G electronic structure and its qubit Hamiltonians.

mod fcidump;
mod fermion;
mod integrals;
mod rhf;
mod taper;

use std::fmt;

pub use fcidump::{parse_fcidump, parse_mo_integrals, write_fcidump};
pub use fermion::{jordan_wigner, to_fermion, FermionHamiltonian, MoIntegrals, SCREENING_TOL};
pub use integrals::{boys_f0, build_integrals, MolecularSystem, TwoElectron, STO3G_COEFFICIENTS, STO3G_EXPONENTS};
pub use rhf::{solve_rhf, RhfSolution};
pub use taper::{
    pauli_decompose, taper, OneQubitParams, DOUBLE_INDEX, HF_INDEX, ONE_QUBIT_SECTOR, SINGLE_DOWN_INDEX,
    SINGLE_UP_INDEX, TWO_QUBIT_SECTOR,
};

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// Number of qubits used to encode one H2 molecule.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    One,
    Two,
    Four,
}

impl Representation {
    pub const ALL: [Representation; 3] = [Representation::One, Representation::Two, Representation::Four];

    pub fn width(self) -> usize {
        match self {
            Representation::One => 1,
            Representation::Two => 2,
            Representation::Four => 4,
        }
    }

    pub fn from_width(width: usize) -> Result<Self> {
        match width {
            1 => Ok(Representation::One),
            2 => Ok(Representation::Two),
            4 => Ok(Representation::Four),
            w => Err(Error::InvalidInput(format!("no H2 representation on {w} qubits (expected 1, 2 or 4)"))),
        }
    }

    /// Computational basis index of the Hartree-Fock determinant.
    pub fn hf_index(self) -> usize {
        match self {
            Representation::One | Representation::Two => 0,
            Representation::Four => HF_INDEX,
        }
    }

    /// Computational basis index of the doubly excited determinant.
    pub fn double_index(self) -> usize {
        match self {
            Representation::One => 1,
            Representation::Two => 3,
            Representation::Four => DOUBLE_INDEX,
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.width())
    }
}

/// Every Hamiltonian derived for one H2 geometry.
#[derive(Clone, Debug)]
pub struct H2Model {
    pub system: MolecularSystem,
    pub rhf: RhfSolution,
    pub fermion: FermionHamiltonian,
    pub h4: PauliSum,
    pub h2q: PauliSum,
    pub h1q: PauliSum,
}

impl H2Model {
    pub fn new(bond_length: f64) -> Result<Self> {
        let system = build_integrals(bond_length)?;
        let rhf = solve_rhf(&system)?;
        let fermion = to_fermion(&system, &rhf);
        let h4 = jordan_wigner(&fermion)?;
        let (h2q, h1q) = taper(&h4)?;
        Ok(H2Model {
            system,
            rhf,
            fermion,
            h4,
            h2q,
            h1q,
        })
    }

    pub fn hamiltonian(&self, rep: Representation) -> &PauliSum {
        match rep {
            Representation::One => &self.h1q,
            Representation::Two => &self.h2q,
            Representation::Four => &self.h4,
        }
    }

    pub fn one_qubit_params(&self) -> OneQubitParams {
        OneQubitParams::from_sum(&self.h1q).expect("taper output is a one-qubit I/Z/X sum")
    }

    pub fn e_hf(&self) -> f64 {
        self.rhf.e_hf
    }

    /// Exact ground energy in the minimal basis.
    pub fn e_fci(&self) -> f64 {
        self.one_qubit_params().ground_energy()
    }
}
