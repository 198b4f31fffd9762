//! Exact ground states and the shallow circuits that prepare them.
//!
//! In every encoding the H2 ground state is `c_hf |HF> + c_d |D>`, so a
//! single Bloch rotation by `theta = 2 atan2(c_d, c_hf)` carries the
//! reference into it. Wider encodings fan that rotation out with CNOTs:
//!
//! * one qubit: `RY(theta)`
//! * two qubits: `RY(theta)` on qubit 0, `CNOT 0 1`
//! * four qubits: `X 0`, `X 1` (reference |1100>), `RY(theta)` on qubit 2,
//!   then `CNOT 2 3`, `CNOT 2 0`, `CNOT 2 1`

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg;
use crate::molecule::Representation;
use crate::pauli::PauliSum;
use crate::statevector::{self, State};

pub use crate::circuit::{compose, contiguous_blocks};

/// Widest Hamiltonian handled by dense diagonalization.
pub const MAX_DENSE_WIDTH: usize = 8;

const DEGENERACY_TOL: f64 = 1e-12;
const SYNTHESIS_FIDELITY: f64 = 1.0 - 1e-12;
/// Amplitudes outside the {HF, double} pair must vanish to this level.
const SECTOR_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct PreparedState {
    /// `None` for registers that are not a single H2 encoding.
    pub representation: Option<Representation>,
    pub amplitudes: State,
    /// Hartree.
    pub energy: f64,
}

impl PreparedState {
    pub fn width(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    /// Real amplitudes on the reference and doubly excited determinants.
    pub fn hf_double_amplitudes(&self) -> Result<(f64, f64)> {
        let rep = self
            .representation
            .ok_or_else(|| Error::InvalidInput("state is not a single-H2 encoding".into()))?;
        let hf = self.amplitudes[rep.hf_index()];
        let d = self.amplitudes[rep.double_index()];
        if hf.im.abs() > SECTOR_TOL || d.im.abs() > SECTOR_TOL {
            return Err(Error::InvalidInput("reference and double amplitudes must be real".into()));
        }
        Ok((hf.re, d.re))
    }
}

/// Lowest eigenvector of `h`, phased so the reference amplitude is real and
/// non-negative. Registers that are not an H2 encoding use their largest
/// amplitude as the phase anchor.
pub fn fci_ground(h: &PauliSum) -> Result<PreparedState> {
    let width = h.width();
    if width > MAX_DENSE_WIDTH {
        return Err(Error::InvalidInput(format!(
            "{width} qubits exceeds the dense diagonalization bound of {MAX_DENSE_WIDTH}"
        )));
    }
    let ground = linalg::ground_state(&h.to_matrix());
    if ground.gap < DEGENERACY_TOL {
        return Err(Error::DegenerateGround { gap: ground.gap });
    }
    let representation = Representation::from_width(width).ok();
    let mut amplitudes: State = ground.vector.iter().copied().collect();
    let anchor = match representation {
        Some(rep) if amplitudes[rep.hf_index()].norm() > SECTOR_TOL => rep.hf_index(),
        _ => {
            let mut best = 0;
            for (i, a) in amplitudes.iter().enumerate() {
                if a.norm() > amplitudes[best].norm() + 1e-12 {
                    best = i;
                }
            }
            best
        }
    };
    let a = amplitudes[anchor];
    if a.norm() > 0.0 {
        let phase = a.conj() / a.norm();
        for amp in amplitudes.iter_mut() {
            *amp *= phase;
        }
        amplitudes[anchor] = Complex64::new(amplitudes[anchor].norm(), 0.0);
    }
    let energy = h.expectation(&amplitudes)?;
    Ok(PreparedState {
        representation,
        amplitudes,
        energy,
    })
}

/// Rotation angle taking the reference to `c_hf |HF> + c_d |D>`.
pub fn rotation_angle(c_hf: f64, c_double: f64) -> f64 {
    2.0 * c_double.atan2(c_hf)
}

/// Reference-to-ground-state circuit for one H2 encoding.
pub fn synthesize(target: &PreparedState) -> Result<Circuit> {
    let rep = target
        .representation
        .ok_or_else(|| Error::InvalidInput("can only synthesize single-H2 states".into()))?;
    let (c_hf, c_d) = target.hf_double_amplitudes()?;
    for (i, a) in target.amplitudes.iter().enumerate() {
        if i != rep.hf_index() && i != rep.double_index() && a.norm() > SECTOR_TOL {
            return Err(Error::InvalidInput(format!(
                "target has weight {:e} outside the reference/double pair",
                a.norm_sqr()
            )));
        }
    }
    let theta = rotation_angle(c_hf, c_d);
    let mut c = Circuit::new(rep.width());
    match rep {
        Representation::One => {
            c.push(Gate::Ry(0, theta))?;
        }
        Representation::Two => {
            c.push(Gate::Ry(0, theta))?;
            c.push(Gate::Cnot { control: 0, target: 1 })?;
        }
        Representation::Four => {
            c.push(Gate::X(0))?;
            c.push(Gate::X(1))?;
            c.push(Gate::Ry(2, theta))?;
            c.push(Gate::Cnot { control: 2, target: 3 })?;
            c.push(Gate::Cnot { control: 2, target: 0 })?;
            c.push(Gate::Cnot { control: 2, target: 1 })?;
        }
    }
    let out = statevector::simulate(&c)?;
    let fidelity = statevector::fidelity(&out, &target.amplitudes);
    if fidelity < SYNTHESIS_FIDELITY {
        return Err(Error::Synthesis { fidelity });
    }
    Ok(c)
}

/// Upper bound on entangling gates for each encoding's preparation circuit.
pub fn two_qubit_budget(rep: Representation) -> usize {
    match rep {
        Representation::One => 0,
        Representation::Two => 1,
        Representation::Four => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{H2Model, OneQubitParams};

    #[test]
    fn one_qubit_closed_form() {
        let p = OneQubitParams {
            g0: -0.3,
            g1: -0.8,
            g2: 0.2,
        };
        let s = fci_ground(&p.to_sum()).unwrap();
        assert!((s.energy - (p.g0 - (p.g1 * p.g1 + p.g2 * p.g2).sqrt())).abs() < 1e-14);
        assert!(s.amplitudes[0].re > 0.0);
        assert!(s.amplitudes[1].re < 0.0);
    }

    #[test]
    fn no_coupling_gives_basis_state_and_zero_rotation() {
        let p = OneQubitParams {
            g0: 0.0,
            g1: -0.5,
            g2: 0.0,
        };
        let s = fci_ground(&p.to_sum()).unwrap();
        assert!((s.probability(0) - 1.0).abs() < 1e-15);
        let c = synthesize(&s).unwrap();
        assert_eq!(c.gates(), &[Gate::Ry(0, 0.0)]);
    }

    #[test]
    fn ry_angle_reproduces_amplitudes() {
        let (chf, cd) = (0.99f64, -(1.0f64 - 0.99 * 0.99).sqrt());
        let theta = rotation_angle(chf, cd);
        assert!(((theta / 2.0).cos() - chf).abs() < 1e-15);
        assert!(((theta / 2.0).sin() - cd).abs() < 1e-15);
    }

    #[test]
    fn synthesized_circuits_meet_fidelity_and_depth_contracts() {
        let model = H2Model::new(0.7414).unwrap();
        for rep in Representation::ALL {
            let target = fci_ground(model.hamiltonian(rep)).unwrap();
            assert!((target.energy - model.e_fci()).abs() < 1e-10);
            let c = synthesize(&target).unwrap();
            assert!(c.two_qubit_count() <= two_qubit_budget(rep));
            let rotations = c.gates().iter().filter(|g| g.angle().is_some()).count();
            assert_eq!(rotations, 1);
            let out = statevector::simulate(&c).unwrap();
            for (a, b) in out.iter().zip(&target.amplitudes) {
                assert!((a - b).norm() < 1e-12);
            }
            // undoing the circuit returns to |0...0>
            let mut back = out.clone();
            statevector::run(&c.inverse(), &mut back).unwrap();
            assert!((back[0].norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn compound_state_is_tensor_power() {
        let model = H2Model::new(0.7414).unwrap();
        for rep in Representation::ALL {
            let target = fci_ground(model.hamiltonian(rep)).unwrap();
            let sub = synthesize(&target).unwrap();
            let max_n = 16 / rep.width();
            for n in [1usize, 2, 4].into_iter().filter(|&n| n <= max_n.min(4)) {
                let c = compose(&sub, n, &contiguous_blocks(n, rep.width())).unwrap();
                assert_eq!(c.depth(), sub.depth());
                let mut expect = target.amplitudes.clone();
                for _ in 1..n {
                    expect = statevector::tensor(&expect, &target.amplitudes);
                }
                let out = statevector::simulate(&c).unwrap();
                assert!((statevector::fidelity(&out, &expect) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_wide_and_degenerate() {
        assert!(fci_ground(&PauliSum::constant_term(9, 1.0)).is_err());
        assert!(matches!(
            fci_ground(&PauliSum::constant_term(1, 1.0)),
            Err(Error::DegenerateGround { .. })
        ));
    }
}
