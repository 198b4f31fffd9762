//! Reference implementations used only by the integration tests. They share
//! no code with the simulator or the qubit Hamiltonians they check.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use sizecons::circuit::{Circuit, Gate};
use sizecons::molecule::{H2Model, MoIntegrals};
use sizecons::noise::DeviceModel;

type M = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single_matrix(g: &Gate) -> [[Complex64; 2]; 2] {
    match *g {
        Gate::X(_) => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        Gate::Ry(_, t) => {
            let (s, co) = (t / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        Gate::Rz(_, t) => [
            [Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
            [c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
        ],
        _ => unreachable!(),
    }
}

fn pauli_matrix(k: usize) -> [[Complex64; 2]; 2] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        _ => [[o, z], [z, -o]],
    }
}

/// Operator acting as `m` on qubit `q` of a `width`-qubit register (bit q of the index).
fn embed_single(width: usize, q: usize, m: [[Complex64; 2]; 2]) -> M {
    let dim = 1 << width;
    M::from_fn(dim, dim, |r, col| {
        if (r ^ col) & !(1 << q) != 0 {
            c(0.0, 0.0)
        } else {
            m[(r >> q) & 1][(col >> q) & 1]
        }
    })
}

fn gate_unitary(width: usize, g: &Gate) -> M {
    let dim = 1 << width;
    match *g {
        Gate::Cz(a, b) => M::from_fn(dim, dim, |r, col| {
            if r != col {
                c(0.0, 0.0)
            } else if (r >> a) & 1 == 1 && (r >> b) & 1 == 1 {
                c(-1.0, 0.0)
            } else {
                c(1.0, 0.0)
            }
        }),
        Gate::Cnot { control, target } => M::from_fn(dim, dim, |r, col| {
            let image = if (col >> control) & 1 == 1 { col ^ (1 << target) } else { col };
            if r == image {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }),
        Gate::X(q) | Gate::Ry(q, _) | Gate::Rz(q, _) => embed_single(width, q, single_matrix(g)),
    }
}

/// `rho -> (1 - p) rho + p / (4^k - 1) sum_{P != I} P rho P` on the gate's support.
fn depolarize(rho: &M, width: usize, support: &[usize], p: f64) -> M {
    if p == 0.0 {
        return rho.clone();
    }
    let k = support.len();
    let n_paulis = 1usize << (2 * k);
    let mut out = rho * c(1.0 - p, 0.0);
    for code in 1..n_paulis {
        let mut op = M::identity(1 << width, 1 << width);
        for (i, &q) in support.iter().enumerate() {
            op = embed_single(width, q, pauli_matrix((code >> (2 * i)) & 3)) * op;
        }
        out += &op * rho * op.adjoint() * c(p / (n_paulis - 1) as f64, 0.0);
    }
    out
}

/// Exact outcome distribution of the noise model: depolarizing after every
/// gate, noiseless basis change, independent readout flips.
pub fn exact_distribution(circuit: &Circuit, device: &DeviceModel, map: &[usize], basis: &Circuit) -> Vec<f64> {
    let w = circuit.width();
    let dim = 1 << w;
    let mut rho = M::zeros(dim, dim);
    rho[(0, 0)] = c(1.0, 0.0);
    for g in circuit.gates() {
        let u = gate_unitary(w, g);
        rho = &u * rho * u.adjoint();
        let t = g.targets();
        let p = if t.len() == 2 {
            device.pair_error(map[t[0]], map[t[1]]).unwrap()
        } else {
            device.qubit(map[t[0]]).unwrap().single_qubit_error
        };
        rho = depolarize(&rho, w, &t, p);
    }
    for g in basis.gates() {
        let u = gate_unitary(w, g);
        rho = &u * rho * u.adjoint();
    }
    let mut probs: Vec<f64> = (0..dim).map(|i| rho[(i, i)].re).collect();
    for q in 0..w {
        let cal = device.qubit(map[q]).unwrap();
        let mut next = vec![0.0; dim];
        for (i, &p) in probs.iter().enumerate() {
            let bit = (i >> q) & 1;
            let flip = if bit == 0 { cal.readout_p10 } else { cal.readout_p01 };
            next[i] += p * (1.0 - flip);
            next[i ^ (1 << q)] += p * flip;
        }
        probs = next;
    }
    probs
}

/// Parity expectation `<(-1)^{popcount(i & mask)}>` under `probs`.
pub fn parity(probs: &[f64], mask: usize) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(i, p)| if (i & mask).count_ones().is_multiple_of(2) { *p } else { -*p })
        .sum()
}

/// Ground state of the four Ms = 0 two-electron determinants of minimal-basis
/// H2, with matrix elements from the Slater-Condon rules.
pub struct CiOracle {
    pub energy: f64,
    /// Amplitudes on (g-up g-down), (g-up u-down), (u-up g-down), (u-up u-down).
    pub amplitudes: [f64; 4],
}

impl CiOracle {
    pub fn c_hf(&self) -> f64 {
        self.amplitudes[0]
    }

    pub fn c_double(&self) -> f64 {
        self.amplitudes[3]
    }
}

pub fn ci_oracle(model: &H2Model) -> CiOracle {
    let mo = MoIntegrals::from_rhf(&model.system, &model.rhf);
    // spin orbital = (spatial, spin)
    let h = |a: (usize, usize), b: (usize, usize)| if a.1 == b.1 { mo.one_body[(a.0, b.0)] } else { 0.0 };
    // physicist <ab|cd> = (ac|bd) with spin conservation per electron
    let g = |a: (usize, usize), b: (usize, usize), cc: (usize, usize), d: (usize, usize)| {
        if a.1 == cc.1 && b.1 == d.1 {
            mo.two_body.get(a.0, cc.0, b.0, d.0)
        } else {
            0.0
        }
    };
    let dets = [((0, 0), (0, 1)), ((0, 0), (1, 1)), ((1, 0), (0, 1)), ((1, 0), (1, 1))];
    let mut m = DMatrix::<f64>::zeros(4, 4);
    for (i, &(a, b)) in dets.iter().enumerate() {
        for (j, &(cc, d)) in dets.iter().enumerate() {
            let d_ac = (a == cc) as i32 as f64;
            let d_bd = (b == d) as i32 as f64;
            let d_ad = (a == d) as i32 as f64;
            let d_bc = (b == cc) as i32 as f64;
            let one = h(a, cc) * d_bd + h(b, d) * d_ac - h(a, d) * d_bc - h(b, cc) * d_ad;
            let two = g(a, b, cc, d) - g(a, b, d, cc);
            m[(i, j)] = one + two + if i == j { mo.core_energy } else { 0.0 };
        }
    }
    let eig = SymmetricEigen::new(m);
    let k = (0..4).min_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y])).unwrap();
    let mut v = [0.0; 4];
    for (i, x) in v.iter_mut().enumerate() {
        *x = eig.eigenvectors[(i, k)];
    }
    if v[0] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    CiOracle {
        energy: eig.eigenvalues[k],
        amplitudes: v,
    }
}
