//! Dense statevector kernels. Bit `j` of an amplitude index is qubit `j`.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

pub type State = Vec<Complex64>;

/// `|0...0>` on `width` qubits.
pub fn zero_state(width: usize) -> State {
    let mut s = vec![Complex64::new(0.0, 0.0); 1usize << width];
    s[0] = Complex64::new(1.0, 0.0);
    s
}

fn width_of(state: &[Complex64]) -> usize {
    state.len().trailing_zeros() as usize
}

fn apply_single(state: &mut [Complex64], q: usize, m: [[Complex64; 2]; 2]) {
    let bit = 1usize << q;
    for i in 0..state.len() {
        if i & bit == 0 {
            let a0 = state[i];
            let a1 = state[i | bit];
            state[i] = m[0][0] * a0 + m[0][1] * a1;
            state[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// Applies `gate` in place.
pub fn apply_gate(state: &mut [Complex64], gate: &Gate) -> Result<()> {
    let width = width_of(state);
    for t in gate.targets() {
        if t >= width {
            return Err(Error::IndexOutOfRange { index: t, limit: width });
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    match *gate {
        Gate::X(q) => {
            let bit = 1usize << q;
            for i in 0..state.len() {
                if i & bit == 0 {
                    state.swap(i, i | bit);
                }
            }
        }
        Gate::Ry(q, theta) => {
            let (s, c) = (theta / 2.0).sin_cos();
            let (s, c) = (Complex64::new(s, 0.0), Complex64::new(c, 0.0));
            apply_single(state, q, [[c, -s], [s, c]]);
        }
        Gate::Rz(q, theta) => {
            let lo = Complex64::from_polar(1.0, -theta / 2.0);
            let hi = Complex64::from_polar(1.0, theta / 2.0);
            apply_single(state, q, [[lo, zero], [zero, hi]]);
        }
        Gate::Cz(a, b) => {
            let mask = (1usize << a) | (1usize << b);
            for (i, amp) in state.iter_mut().enumerate() {
                if i & mask == mask {
                    *amp = -*amp;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let cbit = 1usize << control;
            let tbit = 1usize << target;
            for i in 0..state.len() {
                if i & cbit != 0 && i & tbit == 0 {
                    state.swap(i, i | tbit);
                }
            }
        }
    }
    Ok(())
}

/// Applies a single-qubit Pauli in place (used for error insertion).
pub fn apply_pauli(state: &mut [Complex64], q: usize, p: Pauli) {
    let bit = 1usize << q;
    match p {
        Pauli::I => {}
        Pauli::X => {
            for i in 0..state.len() {
                if i & bit == 0 {
                    state.swap(i, i | bit);
                }
            }
        }
        Pauli::Y => {
            let i_unit = Complex64::new(0.0, 1.0);
            for i in 0..state.len() {
                if i & bit == 0 {
                    let a0 = state[i];
                    let a1 = state[i | bit];
                    state[i] = -i_unit * a1;
                    state[i | bit] = i_unit * a0;
                }
            }
        }
        Pauli::Z => {
            for (i, amp) in state.iter_mut().enumerate() {
                if i & bit != 0 {
                    *amp = -*amp;
                }
            }
        }
    }
}

pub fn run(circuit: &Circuit, state: &mut [Complex64]) -> Result<()> {
    for g in circuit.gates() {
        apply_gate(state, g)?;
    }
    Ok(())
}

/// Noiseless output of `circuit` started from `|0...0>`.
pub fn simulate(circuit: &Circuit) -> Result<State> {
    let mut s = zero_state(circuit.width());
    run(circuit, &mut s)?;
    Ok(s)
}

pub fn norm_sqr(state: &[Complex64]) -> f64 {
    state.iter().map(|a| a.norm_sqr()).sum()
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm_sqr()
}

/// Tensor product with `first` on the low qubits.
pub fn tensor(first: &[Complex64], second: &[Complex64]) -> State {
    let mut out = Vec::with_capacity(first.len() * second.len());
    for b in second {
        for a in first {
            out.push(a * b);
        }
    }
    out
}
