/// Conversion factor from hartree to kcal/mol.
pub const HARTREE_TO_KCAL: f64 = 627.509474;

/// Chemical accuracy in kcal/mol.
pub const CHEMICAL_ACCURACY_KCAL: f64 = 1.0;

/// Bohr radius in angstrom (CODATA 2018).
pub const BOHR_IN_ANGSTROM: f64 = 0.529177210903;

/// Equilibrium H2 bond length in angstrom used when none is configured.
pub const DEFAULT_BOND_LENGTH: f64 = 0.7414;

pub fn to_kcal(hartree: f64) -> f64 {
    hartree * HARTREE_TO_KCAL
}
