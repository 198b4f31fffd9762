//! Measurement plans for `N` replicated subsystems and their post-processing.
//!
//! The subsystem Hamiltonian's strings are split into qubit-wise commuting
//! groups once. Each group becomes one full-register measurement whose basis
//! change is repeated on every block, so the group count does not depend on
//! `N` and every subsystem's energy comes out of the same shots.

use crate::circuit::{compose, contiguous_blocks, Circuit, Gate};
use crate::error::{Error, Result};
use crate::molecule::Representation;
use crate::noise::CountsTable;
use crate::pauli::{qubitwise_groups, Pauli, PauliString, PauliSum};

/// One term's contribution to one subsystem's energy.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupTerm {
    pub subsystem: usize,
    pub string: PauliString,
    pub coefficient: f64,
    /// Full-register qubits whose parity gives the term's eigenvalue.
    pub mask: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementGroup {
    /// Member strings on the full register.
    pub members: Vec<PauliString>,
    /// One-qubit rotations for the whole register.
    pub basis_change: Circuit,
    /// Per-qubit measurement letters of one subsystem block, e.g. `XXYY`.
    pub basis_label: String,
    pub terms: Vec<GroupTerm>,
}

impl MeasurementGroup {
    pub fn is_computational(&self) -> bool {
        self.basis_label.chars().all(|c| c == 'Z')
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementPlan {
    pub representation: Representation,
    pub n_subsystems: usize,
    /// Identity coefficient of the subsystem Hamiltonian, added once per subsystem.
    pub constant: f64,
    pub groups: Vec<MeasurementGroup>,
}

impl MeasurementPlan {
    pub fn width(&self) -> usize {
        self.representation.width() * self.n_subsystems
    }

    /// Index of the computational-basis group used for populations.
    pub fn z_group(&self) -> usize {
        self.groups
            .iter()
            .position(MeasurementGroup::is_computational)
            .expect("plans always carry a computational-basis group")
    }
}

/// Rotation taking the eigenbasis of `p` to the computational basis.
fn basis_rotation(p: Pauli, q: usize) -> Vec<Gate> {
    use std::f64::consts::FRAC_PI_2;
    match p {
        Pauli::I | Pauli::Z => vec![],
        Pauli::X => vec![Gate::Ry(q, -FRAC_PI_2)],
        Pauli::Y => vec![Gate::Rz(q, -FRAC_PI_2), Gate::Ry(q, -FRAC_PI_2)],
    }
}

pub fn build_plan(h_sub: &PauliSum, n_subsystems: usize) -> Result<MeasurementPlan> {
    let representation = Representation::from_width(h_sub.width())
        .map_err(|_| Error::Tomography(format!("unsupported subsystem width {}", h_sub.width())))?;
    if n_subsystems == 0 {
        return Err(Error::Tomography("need at least one subsystem".into()));
    }
    let w = h_sub.width();
    if w * n_subsystems > 64 {
        return Err(Error::Tomography(format!("{} qubits exceeds the 64-qubit register", w * n_subsystems)));
    }
    let strings: Vec<PauliString> = h_sub.non_identity_terms().map(|(s, _)| s.clone()).collect();
    let mut sub_groups = qubitwise_groups(&strings)?;
    let has_z = |g: &Vec<PauliString>| g.iter().all(|s| s.letters().iter().all(|p| matches!(p, Pauli::I | Pauli::Z)));
    if !sub_groups.iter().any(has_z) {
        sub_groups.push(Vec::new());
    }

    let blocks = contiguous_blocks(n_subsystems, w);
    let mut groups = Vec::with_capacity(sub_groups.len());
    for members in sub_groups {
        let basis: Vec<Pauli> = (0..w)
            .map(|q| {
                members
                    .iter()
                    .map(|s| s.get(q))
                    .find(|p| !p.is_identity())
                    .unwrap_or(Pauli::Z)
            })
            .collect();
        let mut sub_change = Circuit::new(w);
        for (q, &p) in basis.iter().enumerate() {
            for g in basis_rotation(p, q) {
                sub_change.push(g)?;
            }
        }
        let basis_change = compose(&sub_change, n_subsystems, &blocks)?;
        let mut full_members = Vec::new();
        let mut terms = Vec::new();
        for n in 0..n_subsystems {
            for s in &members {
                full_members.push(s.embed(n, n_subsystems)?);
                let mask = s.support().fold(0u64, |m, q| m | 1u64 << (n * w + q));
                terms.push(GroupTerm {
                    subsystem: n,
                    string: s.clone(),
                    coefficient: h_sub.coefficient(s),
                    mask,
                });
            }
        }
        groups.push(MeasurementGroup {
            members: full_members,
            basis_change,
            basis_label: basis.iter().map(|p| p.as_char()).collect(),
            terms,
        });
    }
    Ok(MeasurementPlan {
        representation,
        n_subsystems,
        constant: h_sub.constant(),
        groups,
    })
}

/// Per-subsystem energies with their shot-noise standard errors (hartree).
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyEstimate {
    pub energies: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl EnergyEstimate {
    pub fn total(&self) -> f64 {
        self.energies.iter().sum()
    }

    pub fn per_subsystem_mean(&self) -> f64 {
        self.total() / self.energies.len() as f64
    }

    /// Standard error of the mean energy per subsystem.
    pub fn per_subsystem_mean_stderr(&self) -> f64 {
        self.stderr.iter().map(|s| s * s).sum::<f64>().sqrt() / self.energies.len() as f64
    }
}

pub fn estimate_energies(plan: &MeasurementPlan, counts: &[CountsTable]) -> Result<EnergyEstimate> {
    if counts.len() != plan.groups.len() {
        return Err(Error::Tomography(format!(
            "missing group: {} count tables for {} groups",
            counts.len(),
            plan.groups.len()
        )));
    }
    let shots = counts.first().map_or(0, |c| c.shots);
    for (i, c) in counts.iter().enumerate() {
        if c.width != plan.width() {
            return Err(Error::Tomography(format!(
                "group {i}: bitstring width {} does not match {} qubits",
                c.width,
                plan.width()
            )));
        }
        if c.shots != shots || c.shots == 0 {
            return Err(Error::Tomography(format!("group {i}: unequal or zero shot count {}", c.shots)));
        }
    }
    let n = plan.n_subsystems;
    let mut energies = vec![plan.constant; n];
    let mut variance = vec![0.0; n];
    for (group, table) in plan.groups.iter().zip(counts) {
        for sub in 0..n {
            let terms: Vec<&GroupTerm> = group.terms.iter().filter(|t| t.subsystem == sub).collect();
            if terms.is_empty() {
                continue;
            }
            // per-shot value of this group's part of the subsystem energy
            let (mut m1, mut m2) = (0.0, 0.0);
            for (&outcome, &count) in &table.counts {
                let v: f64 = terms
                    .iter()
                    .map(|t| {
                        if (outcome & t.mask).count_ones() % 2 == 0 {
                            t.coefficient
                        } else {
                            -t.coefficient
                        }
                    })
                    .sum();
                m1 += v * count as f64;
                m2 += v * v * count as f64;
            }
            let s = table.shots as f64;
            let mean = m1 / s;
            energies[sub] += mean;
            variance[sub] += (m2 / s - mean * mean).max(0.0) / s;
        }
    }
    Ok(EnergyEstimate {
        energies,
        stderr: variance.into_iter().map(f64::sqrt).collect(),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Populations {
    pub hf: f64,
    pub single_excitation: f64,
    pub double_excitation: f64,
    pub number_violating: f64,
}

impl Populations {
    pub fn sum(&self) -> f64 {
        self.hf + self.single_excitation + self.double_excitation + self.number_violating
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PopulationBreakdown {
    pub per_subsystem: Vec<Populations>,
}

impl PopulationBreakdown {
    pub fn mean(&self) -> Populations {
        let n = self.per_subsystem.len() as f64;
        let mut m = Populations::default();
        for p in &self.per_subsystem {
            m.hf += p.hf / n;
            m.single_excitation += p.single_excitation / n;
            m.double_excitation += p.double_excitation / n;
            m.number_violating += p.number_violating / n;
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Configuration {
    Reference,
    Single,
    Double,
    NumberViolating,
}

/// Determinant class of one block's measured bits (bit `k` = block qubit `k`).
pub fn classify(rep: Representation, bits: usize) -> Configuration {
    match rep {
        Representation::One => {
            if bits == 0 {
                Configuration::Reference
            } else {
                Configuration::Double
            }
        }
        Representation::Two => match bits {
            0 => Configuration::Reference,
            3 => Configuration::Double,
            _ => Configuration::Single,
        },
        Representation::Four => {
            if bits.count_ones() != 2 {
                Configuration::NumberViolating
            } else if bits == crate::molecule::HF_INDEX {
                Configuration::Reference
            } else if bits == crate::molecule::DOUBLE_INDEX {
                Configuration::Double
            } else {
                Configuration::Single
            }
        }
    }
}

pub fn extract_populations(
    z_basis_counts: &CountsTable,
    rep: Representation,
    n_subsystems: usize,
) -> Result<PopulationBreakdown> {
    let w = rep.width();
    if z_basis_counts.width != w * n_subsystems {
        return Err(Error::Tomography(format!(
            "{}-bit counts cannot hold {n_subsystems} blocks of {w} qubits",
            z_basis_counts.width
        )));
    }
    if z_basis_counts.shots == 0 {
        return Err(Error::Tomography("empty counts table".into()));
    }
    let shots = z_basis_counts.shots as f64;
    let mut per_subsystem = vec![Populations::default(); n_subsystems];
    let block_mask = (1u64 << w) - 1;
    for (&outcome, &count) in &z_basis_counts.counts {
        let p = count as f64 / shots;
        for (n, pops) in per_subsystem.iter_mut().enumerate() {
            let bits = ((outcome >> (n * w)) & block_mask) as usize;
            match classify(rep, bits) {
                Configuration::Reference => pops.hf += p,
                Configuration::Single => pops.single_excitation += p,
                Configuration::Double => pops.double_excitation += p,
                Configuration::NumberViolating => pops.number_violating += p,
            }
        }
    }
    Ok(PopulationBreakdown { per_subsystem })
}
