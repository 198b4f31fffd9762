//! Gate-level circuits.
//!
//! Text form is one gate per line, `KIND targets [angle]`:
//!
//! ```text
//! X 0
//! RY 2 0.2261
//! CNOT 2 3
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Gate {
    X(usize),
    Ry(usize, f64),
    Rz(usize, f64),
    Cz(usize, usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn kind(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::Ry(..) => "RY",
            Gate::Rz(..) => "RZ",
            Gate::Cz(..) => "CZ",
            Gate::Cnot { .. } => "CNOT",
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::Ry(q, _) | Gate::Rz(q, _) => vec![q],
            Gate::Cz(a, b) => vec![a, b],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cz(..) | Gate::Cnot { .. })
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Ry(q, a) => Gate::Ry(q, -a),
            Gate::Rz(q, a) => Gate::Rz(q, -a),
            g => g,
        }
    }

    /// Same gate with qubit `q` replaced by `map[q]`.
    pub fn remap(&self, map: &[usize]) -> Gate {
        match *self {
            Gate::X(q) => Gate::X(map[q]),
            Gate::Ry(q, a) => Gate::Ry(map[q], a),
            Gate::Rz(q, a) => Gate::Rz(map[q], a),
            Gate::Cz(a, b) => Gate::Cz(map[a], map[b]),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: map[control],
                target: map[target],
            },
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())?;
        for t in self.targets() {
            write!(f, " {t}")?;
        }
        if let Some(a) = self.angle() {
            write!(f, " {a:?}")?;
        }
        Ok(())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(line: &str) -> Result<Gate> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad gate line {line:?}"));
        let qubit = |i: usize| -> Result<usize> { fields.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let angle = |i: usize| -> Result<f64> { fields.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let (gate, arity) = match fields.first().copied() {
            Some("X") => (Gate::X(qubit(1)?), 2),
            Some("RY") => (Gate::Ry(qubit(1)?, angle(2)?), 3),
            Some("RZ") => (Gate::Rz(qubit(1)?, angle(2)?), 3),
            Some("CZ") => (Gate::Cz(qubit(1)?, qubit(2)?), 3),
            Some("CNOT") => (
                Gate::Cnot {
                    control: qubit(1)?,
                    target: qubit(2)?,
                },
                3,
            ),
            _ => return Err(bad()),
        };
        if fields.len() != arity {
            return Err(bad());
        }
        Ok(gate)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit { width, gates: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let targets = gate.targets();
        for &t in &targets {
            if t >= self.width {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    limit: self.width,
                });
            }
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(Error::InvalidInput(format!("two-qubit gate on a single qubit: {gate}")));
        }
        if gate.angle().is_some_and(|a| !a.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite angle: {gate}")));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        for &g in &other.gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Number of layers when every gate is scheduled as early as possible.
    pub fn depth(&self) -> usize {
        let mut front = vec![0usize; self.width];
        for g in &self.gates {
            let ts = g.targets();
            let layer = ts.iter().map(|&t| front[t]).max().unwrap_or(0) + 1;
            for t in ts {
                front[t] = layer;
            }
        }
        front.into_iter().max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Moves qubit `q` to `map[q]` on a register of `width` qubits.
    pub fn relabel(&self, map: &[usize], width: usize) -> Result<Circuit> {
        if map.len() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: map.len(),
            });
        }
        let mut out = Circuit::new(width);
        for g in &self.gates {
            out.push(g.remap(map))?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.gates.iter().map(|g| format!("{g}\n")).collect()
    }

    pub fn from_text(width: usize, text: &str) -> Result<Circuit> {
        let mut c = Circuit::new(width);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            c.push(line.parse()?)?;
        }
        Ok(c)
    }
}

/// Places one copy of `sub` on each qubit block. The result acts on
/// `max(block index) + 1` qubits and copies never share a gate.
pub fn compose(sub: &Circuit, n_subsystems: usize, blocks: &[Vec<usize>]) -> Result<Circuit> {
    if blocks.len() != n_subsystems {
        return Err(Error::InvalidInput(format!(
            "{} qubit blocks for {} subsystems",
            blocks.len(),
            n_subsystems
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    for b in blocks {
        if b.len() != sub.width() {
            return Err(Error::WidthMismatch {
                left: sub.width(),
                right: b.len(),
            });
        }
        for &q in b {
            if !seen.insert(q) {
                return Err(Error::InvalidInput(format!("qubit {q} assigned to two blocks")));
            }
        }
    }
    let width = seen.iter().next_back().map_or(0, |&q| q + 1);
    let mut out = Circuit::new(width);
    for b in blocks {
        out.extend(&sub.relabel(b, width)?)?;
    }
    Ok(out)
}

/// Contiguous blocks `[i*w, (i+1)*w)`.
pub fn contiguous_blocks(n_subsystems: usize, width: usize) -> Vec<Vec<usize>> {
    (0..n_subsystems).map(|i| (i * width..(i + 1) * width).collect()).collect()
}
