//! Second-quantized Hamiltonians and the Jordan-Wigner map.
//!
//! Spin orbital `2p + s` is spatial orbital `p` with spin `s` (0 = up), so
//! for H2 the order is (sg up, sg down, su up, su down). Qubit `j` holds the
//! occupation of spin orbital `j`; occupied is |1>.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::integrals::{MolecularSystem, TwoElectron};
use super::rhf::RhfSolution;
use crate::error::Result;
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Coefficients at or below this magnitude are dropped.
pub const SCREENING_TOL: f64 = 1e-14;

/// Spatial molecular-orbital integrals in chemist notation.
#[derive(Clone, Debug)]
pub struct MoIntegrals {
    pub n_electrons: usize,
    pub ms2: i32,
    /// Nuclear repulsion plus any frozen-core energy.
    pub core_energy: f64,
    pub one_body: DMatrix<f64>,
    pub two_body: TwoElectron,
}

impl MoIntegrals {
    pub fn n_orbitals(&self) -> usize {
        self.one_body.nrows()
    }

    /// AO to MO transform of the H2 integrals.
    pub fn from_rhf(sys: &MolecularSystem, rhf: &RhfSolution) -> Self {
        let c = &rhf.mo_coefficients;
        let n = sys.n_orbitals();
        let one_body = c.transpose() * sys.core_hamiltonian() * c;
        let ao = &sys.two_electron;
        let mut two_body = TwoElectron::zeros(n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let mut v = 0.0;
                        for a in 0..n {
                            for b in 0..n {
                                for g in 0..n {
                                    for d in 0..n {
                                        v += c[(a, p)] * c[(b, q)] * c[(g, r)] * c[(d, s)] * ao.get(a, b, g, d);
                                    }
                                }
                            }
                        }
                        two_body.set_symmetric(p, q, r, s, v);
                    }
                }
            }
        }
        MoIntegrals {
            n_electrons: 2,
            ms2: 0,
            core_energy: sys.nuclear_repulsion,
            one_body,
            two_body,
        }
    }

    pub fn to_fermion(&self) -> FermionHamiltonian {
        let n = self.n_orbitals();
        let mut h = FermionHamiltonian::new(2 * n, self.core_energy);
        for p in 0..n {
            for q in 0..n {
                let v = self.one_body[(p, q)];
                for s in 0..2 {
                    h.add_one_body(2 * p + s, 2 * q + s, v);
                }
            }
        }
        // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = 0.5 * self.two_body.get(p, q, r, s);
                        for sig in 0..2 {
                            for tau in 0..2 {
                                let (a, b, c, d) = (2 * p + sig, 2 * r + tau, 2 * s + tau, 2 * q + sig);
                                if a == b || c == d {
                                    continue;
                                }
                                h.add_two_body(a, b, c, d, v);
                            }
                        }
                    }
                }
            }
        }
        h.prune();
        h
    }
}

/// `constant + sum h_pq a+_p a_q + sum h_pqrs a+_p a+_q a_r a_s` over spin orbitals.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionHamiltonian {
    pub n_spin_orbitals: usize,
    pub constant: f64,
    pub one_body: BTreeMap<(usize, usize), f64>,
    pub two_body: BTreeMap<(usize, usize, usize, usize), f64>,
}

impl FermionHamiltonian {
    pub fn new(n_spin_orbitals: usize, constant: f64) -> Self {
        FermionHamiltonian {
            n_spin_orbitals,
            constant,
            one_body: BTreeMap::new(),
            two_body: BTreeMap::new(),
        }
    }

    pub fn add_one_body(&mut self, p: usize, q: usize, v: f64) {
        *self.one_body.entry((p, q)).or_insert(0.0) += v;
    }

    pub fn add_two_body(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        *self.two_body.entry((p, q, r, s)).or_insert(0.0) += v;
    }

    fn prune(&mut self) {
        self.one_body.retain(|_, v| v.abs() > SCREENING_TOL);
        self.two_body.retain(|_, v| v.abs() > SCREENING_TOL);
    }

    /// Energy of the determinant with the listed spin orbitals occupied.
    pub fn determinant_energy(&self, occupied: &[usize]) -> f64 {
        let occ = |p: usize| occupied.contains(&p);
        let mut e = self.constant;
        for (&(p, q), &v) in &self.one_body {
            if p == q && occ(p) {
                e += v;
            }
        }
        // a+_p a+_q a_r a_s is diagonal for (r, s) = (q, p) (+1) or (p, q) (-1)
        for (&(p, q, r, s), &v) in &self.two_body {
            if occ(p) && occ(q) {
                if r == q && s == p {
                    e += v;
                } else if r == p && s == q {
                    e -= v;
                }
            }
        }
        e
    }
}

/// Complex-coefficient Pauli polynomial used while expanding ladder products.
#[derive(Clone, Debug)]
struct PauliPoly {
    width: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliPoly {
    fn scalar(width: usize, c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PauliString::identity(width), c);
        PauliPoly { width, terms }
    }

    /// Jordan-Wigner image of `a+_j` (`dagger`) or `a_j`.
    fn ladder(width: usize, j: usize, dagger: bool) -> Self {
        let mut ops: Vec<(usize, Pauli)> = (0..j).map(|k| (k, Pauli::Z)).collect();
        ops.push((j, Pauli::X));
        let x = PauliString::from_sparse(width, &ops).expect("qubit in range");
        ops[j] = (j, Pauli::Y);
        let y = PauliString::from_sparse(width, &ops).expect("qubit in range");
        let ysign = if dagger { -0.5 } else { 0.5 };
        let mut terms = BTreeMap::new();
        terms.insert(x, Complex64::new(0.5, 0.0));
        terms.insert(y, Complex64::new(0.0, ysign));
        PauliPoly { width, terms }
    }

    fn mul(&self, other: &PauliPoly) -> PauliPoly {
        let mut terms: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (ph, p) = a.multiply(b).expect("equal widths");
                *terms.entry(p).or_insert(Complex64::new(0.0, 0.0)) += ca * cb * ph.to_complex();
            }
        }
        PauliPoly {
            width: self.width,
            terms,
        }
    }

    fn add_scaled(&mut self, other: &PauliPoly, scale: f64) {
        for (s, c) in &other.terms {
            *self.terms.entry(s.clone()).or_insert(Complex64::new(0.0, 0.0)) += c * scale;
        }
    }
}

/// Maps a fermionic Hamiltonian onto qubits, one qubit per spin orbital.
pub fn jordan_wigner(h: &FermionHamiltonian) -> Result<PauliSum> {
    let n = h.n_spin_orbitals;
    let mut acc = PauliPoly::scalar(n, Complex64::new(h.constant, 0.0));
    let up = |j| PauliPoly::ladder(n, j, true);
    let down = |j| PauliPoly::ladder(n, j, false);
    for (&(p, q), &v) in &h.one_body {
        acc.add_scaled(&up(p).mul(&down(q)), v);
    }
    for (&(p, q, r, s), &v) in &h.two_body {
        let term = up(p).mul(&up(q)).mul(&down(r)).mul(&down(s));
        acc.add_scaled(&term, v);
    }
    let mut out = PauliSum::new(n);
    for (s, c) in acc.terms {
        debug_assert!(c.im.abs() < 1e-10, "non-Hermitian coefficient on {s}: {c}");
        out.add_term(s, c.re)?;
    }
    out.simplify(SCREENING_TOL);
    Ok(out)
}

/// Qubit Hamiltonian pipeline output for one H2 geometry.
pub fn to_fermion(sys: &MolecularSystem, rhf: &RhfSolution) -> FermionHamiltonian {
    MoIntegrals::from_rhf(sys, rhf).to_fermion()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::molecule::{build_integrals, solve_rhf};

    fn h2(r: f64) -> (MolecularSystem, RhfSolution, FermionHamiltonian) {
        let sys = build_integrals(r).unwrap();
        let rhf = solve_rhf(&sys).unwrap();
        let h = to_fermion(&sys, &rhf);
        (sys, rhf, h)
    }

    #[test]
    fn number_operator_maps_to_half_i_minus_z() {
        let mut h = FermionHamiltonian::new(4, 0.0);
        h.add_one_body(0, 0, 1.0);
        let q = jordan_wigner(&h).unwrap();
        assert_eq!(q.len(), 2);
        assert!((q.constant() - 0.5).abs() < 1e-15);
        assert!((q.coefficient(&"ZIII".parse().unwrap()) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn hopping_term_with_parity_string() {
        // a+_2 a_0 + a+_0 a_2 = (X0 Z1 X2 + Y0 Z1 Y2) / 2
        let mut h = FermionHamiltonian::new(3, 0.0);
        h.add_one_body(2, 0, 1.0);
        h.add_one_body(0, 2, 1.0);
        let q = jordan_wigner(&h).unwrap();
        assert_eq!(q.len(), 2);
        assert!((q.coefficient(&"XZX".parse().unwrap()) - 0.5).abs() < 1e-15);
        assert!((q.coefficient(&"YZY".parse().unwrap()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hf_determinant_energy_matches_rhf() {
        let (_, rhf, h) = h2(0.7414);
        assert!((h.determinant_energy(&[0, 1]) - rhf.e_hf).abs() < 1e-10);
    }

    #[test]
    fn spin_violating_one_body_terms_vanish() {
        let (_, _, h) = h2(0.7414);
        for &(p, q) in h.one_body.keys() {
            assert_eq!(p % 2, q % 2);
        }
        for (&(p, q), &v) in &h.one_body {
            assert_eq!(v, h.one_body[&(q, p)]);
        }
        for &(p, q, r, s) in h.two_body.keys() {
            // creators and annihilators carry matching spin multisets
            let mut cre = [p % 2, q % 2];
            let mut ann = [r % 2, s % 2];
            cre.sort();
            ann.sort();
            assert_eq!(cre, ann);
        }
    }

    #[test]
    fn two_body_count_matches_symmetry_enumeration() {
        let (sys, rhf, h) = h2(0.7414);
        let mo = MoIntegrals::from_rhf(&sys, &rhf);
        // oracle: enumerate spatial quadruples with a non-vanishing integral,
        // then every spin assignment that leaves a nonzero ladder product
        let mut expected = 0;
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        if mo.two_body.get(p, q, r, s).abs() <= SCREENING_TOL {
                            continue;
                        }
                        for sig in 0..2 {
                            for tau in 0..2 {
                                let distinct_creators = (p, sig) != (r, tau);
                                let distinct_annihilators = (s, tau) != (q, sig);
                                if distinct_creators && distinct_annihilators {
                                    expected += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        // gerade/ungerade symmetry leaves (gg|gg), (uu|uu), (gg|uu), (gu|gu) classes: 1+1+2+4 = 8
        let nonzero_spatial = (0..16)
            .filter(|&i| mo.two_body.get(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1).abs() > SCREENING_TOL)
            .count();
        assert_eq!(nonzero_spatial, 8);
        assert_eq!(h.two_body.len(), expected);
    }

    #[test]
    fn jw_h2_has_fifteen_terms_and_hf_expectation() {
        let (_, rhf, h) = h2(0.7414);
        let q = jordan_wigner(&h).unwrap();
        assert_eq!(q.width(), 4);
        assert!(q.non_identity_terms().count() <= 15);
        assert_eq!(q.len(), 15);
        let m = q.to_matrix();
        assert!((&m - m.adjoint()).norm() < 1e-14);
        // |1100> is basis index 0b0011
        assert!((m[(3, 3)].re - rhf.e_hf).abs() < 1e-10);
        let ground = linalg::eigenvalues(&m)[0];
        assert!(ground < rhf.e_hf);
    }
}
