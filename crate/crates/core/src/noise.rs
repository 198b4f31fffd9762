//! Shot-based simulation with stochastic Pauli errors and readout confusion.
//!
//! Every shot is one trajectory. After each gate a uniformly random
//! non-identity Pauli on the gate's support is inserted with the mapped
//! qubit's (or pair's) depolarizing probability; the measurement basis change
//! is applied without noise; one bitstring is drawn from the final
//! amplitudes; then each bit flips with its qubit's readout confusion
//! probability.
//!
//! Qubits that no gate connects evolve as separate factors of the statevector
//! and are simulated independently, which is exact because gates and errors
//! only act within a connected set.
//!
//! Shot `i` draws from ChaCha8 keyed by `seed` on stream `i`, so a table is
//! bit-identical however the shots are scheduled across threads.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::statevector::{self, State};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitCalibration {
    /// P(read 1 | prepared 0).
    pub readout_p10: f64,
    /// P(read 0 | prepared 1).
    pub readout_p01: f64,
    /// Depolarizing probability per one-qubit gate.
    pub single_qubit_error: f64,
}

impl QubitCalibration {
    pub const PERFECT: QubitCalibration = QubitCalibration {
        readout_p10: 0.0,
        readout_p01: 0.0,
        single_qubit_error: 0.0,
    };

    pub fn mean_readout_error(&self) -> f64 {
        0.5 * (self.readout_p10 + self.readout_p01)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct PairRecord {
    qubits: [usize; 2],
    error: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DeviceFile {
    qubits: Vec<QubitCalibration>,
    #[serde(default)]
    two_qubit_errors: Vec<PairRecord>,
}

/// Per-qubit calibration plus two-qubit gate errors keyed by unordered pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DeviceFile", into = "DeviceFile")]
pub struct DeviceModel {
    qubits: Vec<QubitCalibration>,
    two_qubit_error: BTreeMap<(usize, usize), f64>,
}

impl From<DeviceModel> for DeviceFile {
    fn from(d: DeviceModel) -> Self {
        DeviceFile {
            qubits: d.qubits,
            two_qubit_errors: d
                .two_qubit_error
                .into_iter()
                .map(|((a, b), error)| PairRecord { qubits: [a, b], error })
                .collect(),
        }
    }
}

impl TryFrom<DeviceFile> for DeviceModel {
    type Error = Error;

    fn try_from(f: DeviceFile) -> Result<Self> {
        let mut d = DeviceModel::new(f.qubits);
        for p in f.two_qubit_errors {
            d.set_pair_error(p.qubits[0], p.qubits[1], p.error)?;
        }
        d.validate()?;
        Ok(d)
    }
}

fn check_probability(what: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Device(format!("{what} = {p} is not a probability")));
    }
    Ok(())
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl DeviceModel {
    pub fn new(qubits: Vec<QubitCalibration>) -> Self {
        DeviceModel {
            qubits,
            two_qubit_error: BTreeMap::new(),
        }
    }

    /// Identical calibration on every qubit and every pair.
    pub fn uniform(n_qubits: usize, qubit: QubitCalibration, pair_error: f64) -> Self {
        let mut d = DeviceModel::new(vec![qubit; n_qubits]);
        for a in 0..n_qubits {
            for b in a + 1..n_qubits {
                d.two_qubit_error.insert((a, b), pair_error);
            }
        }
        d
    }

    pub fn noiseless(n_qubits: usize) -> Self {
        DeviceModel::uniform(n_qubits, QubitCalibration::PERFECT, 0.0)
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit(&self, q: usize) -> Result<&QubitCalibration> {
        self.qubits
            .get(q)
            .ok_or_else(|| Error::Device(format!("physical qubit {q} is not on the device ({} qubits)", self.qubits.len())))
    }

    pub fn qubits(&self) -> &[QubitCalibration] {
        &self.qubits
    }

    pub fn qubit_mut(&mut self, q: usize) -> &mut QubitCalibration {
        &mut self.qubits[q]
    }

    pub fn set_pair_error(&mut self, a: usize, b: usize, error: f64) -> Result<()> {
        if a == b || a >= self.qubits.len() || b >= self.qubits.len() {
            return Err(Error::Device(format!("invalid qubit pair ({a}, {b})")));
        }
        check_probability("two-qubit error", error)?;
        self.two_qubit_error.insert(pair_key(a, b), error);
        Ok(())
    }

    pub fn pair_error(&self, a: usize, b: usize) -> Result<f64> {
        self.two_qubit_error
            .get(&pair_key(a, b))
            .copied()
            .ok_or_else(|| Error::Device(format!("no two-qubit calibration for pair ({a}, {b})")))
    }

    pub fn pair_errors(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.two_qubit_error.iter().map(|(&k, &v)| (k, v))
    }

    /// Mean error over every calibrated pair touching `q` (0 when none).
    pub fn mean_incident_pair_error(&self, q: usize) -> f64 {
        let (sum, n) = self
            .two_qubit_error
            .iter()
            .filter(|((a, b), _)| *a == q || *b == q)
            .fold((0.0, 0usize), |(s, n), (_, &e)| (s + e, n + 1));
        if n == 0 {
            0.0
        } else {
            sum / n as f64
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, q) in self.qubits.iter().enumerate() {
            check_probability(&format!("qubit {i} readout_p10"), q.readout_p10)?;
            check_probability(&format!("qubit {i} readout_p01"), q.readout_p01)?;
            check_probability(&format!("qubit {i} single_qubit_error"), q.single_qubit_error)?;
        }
        for (&(a, b), &e) in &self.two_qubit_error {
            if a == b || b >= self.qubits.len() {
                return Err(Error::Device(format!("invalid qubit pair ({a}, {b})")));
            }
            check_probability("two-qubit error", e)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Measurement record of one group of shots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountsTable {
    pub width: usize,
    pub shots: u64,
    /// Outcome with bit `j` = logical qubit `j`, mapped to its count.
    pub counts: BTreeMap<u64, u64>,
    pub measured_basis: String,
}

impl CountsTable {
    pub fn bitstring(&self, outcome: u64) -> String {
        (0..self.width)
            .map(|q| if (outcome >> q) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bitstring(s: &str) -> Result<u64> {
        if s.len() > 64 {
            return Err(Error::Parse(format!("bitstring longer than 64 bits: {s:?}")));
        }
        s.chars().enumerate().try_fold(0u64, |acc, (q, c)| match c {
            '0' => Ok(acc),
            '1' => Ok(acc | (1u64 << q)),
            _ => Err(Error::Parse(format!("bad bitstring {s:?}"))),
        })
    }

    /// Mean of `(-1)^(popcount(outcome & mask))`.
    pub fn parity_expectation(&self, mask: u64) -> f64 {
        let mut acc = 0i64;
        for (&o, &c) in &self.counts {
            if (o & mask).count_ones().is_multiple_of(2) {
                acc += c as i64;
            } else {
                acc -= c as i64;
            }
        }
        acc as f64 / self.shots as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring,count\n");
        for (&o, &c) in &self.counts {
            out.push_str(&format!("{},{c}\n", self.bitstring(o)));
        }
        out
    }

    pub fn from_csv(text: &str, measured_basis: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        let mut width = None;
        let mut shots = 0;
        for (i, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let (b, c) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("counts line {}: expected bitstring,count", i + 1)))?;
            let c: u64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("counts line {}: bad count", i + 1)))?;
            let w = b.trim().len();
            if *width.get_or_insert(w) != w {
                return Err(Error::Parse(format!("counts line {}: inconsistent bitstring width", i + 1)));
            }
            *counts.entry(CountsTable::parse_bitstring(b.trim())?).or_insert(0) += c;
            shots += c;
        }
        Ok(CountsTable {
            width: width.unwrap_or(0),
            shots,
            counts,
            measured_basis: measured_basis.to_string(),
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct NoisyGate {
    gate: Gate,
    /// Up to two local qubits.
    support: [usize; 2],
    arity: usize,
    error: f64,
}

#[derive(Clone, Copy, Debug)]
struct Readout {
    logical: usize,
    p10: f64,
    p01: f64,
}

/// A set of logical qubits closed under the circuit's two-qubit gates.
#[derive(Clone, Debug)]
struct Component {
    gates: Vec<NoisyGate>,
    basis_change: Vec<Gate>,
    readout: Vec<Readout>,
    noiseless_cdf: Vec<f64>,
}

impl Component {
    fn final_state(&self, errors: &[(usize, usize)]) -> State {
        let mut state = statevector::zero_state(self.readout.len());
        let mut next = errors.iter().peekable();
        for (i, ng) in self.gates.iter().enumerate() {
            statevector::apply_gate(&mut state, &ng.gate).expect("local gate in range");
            while let Some(&&(gi, code)) = next.peek() {
                if gi != i {
                    break;
                }
                next.next();
                for k in 0..ng.arity {
                    let p = Pauli::ALL[(code >> (2 * k)) & 3];
                    statevector::apply_pauli(&mut state, ng.support[k], p);
                }
            }
        }
        for g in &self.basis_change {
            statevector::apply_gate(&mut state, g).expect("local gate in range");
        }
        state
    }

    fn sample_shot(&self, rng: &mut ChaCha8Rng) -> u64 {
        let mut errors: Vec<(usize, usize)> = Vec::new();
        for (i, ng) in self.gates.iter().enumerate() {
            let u: f64 = rng.gen();
            if u < ng.error {
                // uniform over the 3 (or 15) non-identity Paulis on the support
                let n_paulis = 1usize << (2 * ng.arity);
                errors.push((i, rng.gen_range(1..n_paulis)));
            }
        }
        let u: f64 = rng.gen();
        let local = if errors.is_empty() {
            let idx = self.noiseless_cdf.partition_point(|&c| c <= u);
            idx.min(self.noiseless_cdf.len() - 1)
        } else {
            let state = self.final_state(&errors);
            let mut acc = 0.0;
            let mut pick = state.len() - 1;
            for (i, a) in state.iter().enumerate() {
                acc += a.norm_sqr();
                if u < acc {
                    pick = i;
                    break;
                }
            }
            pick
        };
        let mut outcome = 0u64;
        for (k, r) in self.readout.iter().enumerate() {
            let bit = (local >> k) & 1;
            let u: f64 = rng.gen();
            let flipped = if bit == 0 { u < r.p10 } else { u < r.p01 };
            if (bit == 1) != flipped {
                outcome |= 1u64 << r.logical;
            }
        }
        outcome
    }
}

fn components(width: usize, gates: impl Iterator<Item = Gate>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..width).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for g in gates {
        let t = g.targets();
        if t.len() == 2 {
            let (a, b) = (find(&mut parent, t[0]), find(&mut parent, t[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for q in 0..width {
        let r = find(&mut parent, q);
        groups.entry(r).or_default().push(q);
    }
    groups.into_values().collect()
}

const MAX_COMPONENT_WIDTH: usize = 16;

fn build_components(
    circuit: &Circuit,
    device: &DeviceModel,
    physical_map: &[usize],
    basis_change: &Circuit,
) -> Result<Vec<Component>> {
    let all_gates = circuit.gates().iter().chain(basis_change.gates()).copied();
    let mut out = Vec::new();
    for members in components(circuit.width(), all_gates) {
        if members.len() > MAX_COMPONENT_WIDTH {
            return Err(Error::InvalidInput(format!(
                "entangled block of {} qubits exceeds the {MAX_COMPONENT_WIDTH}-qubit limit",
                members.len()
            )));
        }
        let mut local = vec![usize::MAX; circuit.width()];
        for (i, &q) in members.iter().enumerate() {
            local[q] = i;
        }
        // only consulted for qubits inside this component
        let remap: Vec<usize> = local.iter().map(|&l| if l == usize::MAX { 0 } else { l }).collect();
        let mut gates = Vec::new();
        for g in circuit.gates() {
            let t = g.targets();
            if local[t[0]] == usize::MAX {
                continue;
            }
            let (support, arity, error) = if t.len() == 2 {
                let e = device.pair_error(physical_map[t[0]], physical_map[t[1]])?;
                ([local[t[0]], local[t[1]]], 2, e)
            } else {
                let e = device.qubit(physical_map[t[0]])?.single_qubit_error;
                ([local[t[0]], 0], 1, e)
            };
            gates.push(NoisyGate {
                gate: g.remap(&remap),
                support,
                arity,
                error,
            });
        }
        let basis: Vec<Gate> = basis_change
            .gates()
            .iter()
            .filter(|g| local[g.targets()[0]] != usize::MAX)
            .map(|g| g.remap(&remap))
            .collect();
        let readout = members
            .iter()
            .map(|&q| {
                let cal = device.qubit(physical_map[q])?;
                Ok(Readout {
                    logical: q,
                    p10: cal.readout_p10,
                    p01: cal.readout_p01,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut comp = Component {
            gates,
            basis_change: basis,
            readout,
            noiseless_cdf: Vec::new(),
        };
        let state = comp.final_state(&[]);
        let mut acc = 0.0;
        comp.noiseless_cdf = state
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        out.push(comp);
    }
    Ok(out)
}

/// Generator for shot `shot` of a run seeded with `seed`.
pub fn shot_rng(base: &ChaCha8Rng, shot: u64) -> ChaCha8Rng {
    let mut rng = base.clone();
    rng.set_stream(shot);
    rng
}

const SHOT_CHUNK: u64 = 4096;

/// Simulates `shots` noisy executions of `circuit` followed by `basis_change`.
pub fn run_shots(
    circuit: &Circuit,
    device: &DeviceModel,
    physical_map: &[usize],
    basis_change: &Circuit,
    shots: u64,
    seed: u64,
) -> Result<CountsTable> {
    if physical_map.len() != circuit.width() {
        return Err(Error::InvalidInput(format!(
            "physical map has {} entries for a {}-qubit circuit",
            physical_map.len(),
            circuit.width()
        )));
    }
    if basis_change.width() != circuit.width() {
        return Err(Error::WidthMismatch {
            left: circuit.width(),
            right: basis_change.width(),
        });
    }
    if circuit.width() > 64 {
        return Err(Error::InvalidInput("at most 64 qubits per register".into()));
    }
    if shots == 0 {
        return Err(Error::InvalidInput("shots must be at least 1".into()));
    }
    for &p in physical_map {
        device.qubit(p)?;
    }
    let comps = build_components(circuit, device, physical_map, basis_change)?;
    let base = ChaCha8Rng::seed_from_u64(seed);

    let n_chunks = shots.div_ceil(SHOT_CHUNK);
    let partials: Vec<HashMap<u64, u64>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut local: HashMap<u64, u64> = HashMap::new();
            let start = chunk * SHOT_CHUNK;
            let end = (start + SHOT_CHUNK).min(shots);
            for shot in start..end {
                let mut rng = shot_rng(&base, shot);
                let outcome = comps.iter().fold(0u64, |acc, c| acc | c.sample_shot(&mut rng));
                *local.entry(outcome).or_insert(0) += 1;
            }
            local
        })
        .collect();
    let mut counts = BTreeMap::new();
    for part in partials {
        for (o, c) in part {
            *counts.entry(o).or_insert(0) += c;
        }
    }
    Ok(CountsTable {
        width: circuit.width(),
        shots,
        counts,
        measured_basis: String::new(),
    })
}

/// Exact outcome probabilities of the noiseless circuit plus basis change.
pub fn ideal_distribution(circuit: &Circuit, basis_change: &Circuit) -> Result<Vec<f64>> {
    let mut s = statevector::simulate(circuit)?;
    statevector::run(basis_change, &mut s)?;
    Ok(s.iter().map(Complex64::norm_sqr).collect())
}
