//! Closed-form STO-3G integrals for H2.
//!
//! Both 1s functions are contractions of three normalized s-type Gaussians.
//! The two nuclei sit on a line, so every distance is one-dimensional.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::units::BOHR_IN_ANGSTROM;

/// STO-3G hydrogen 1s exponents (zeta = 1.24), bohr^-2.
pub const STO3G_EXPONENTS: [f64; 3] = [3.42525091, 0.62391373, 0.16885540];
/// STO-3G contraction coefficients for normalized primitives.
pub const STO3G_COEFFICIENTS: [f64; 3] = [0.15432897, 0.53532814, 0.44463454];

/// Boys function of order zero, `F0(t) = 1/2 sqrt(pi/t) erf(sqrt t)`.
pub fn boys_f0(t: f64) -> f64 {
    if t < 1e-8 {
        1.0 - t / 3.0
    } else {
        0.5 * (std::f64::consts::PI / t).sqrt() * libm::erf(t.sqrt())
    }
}

#[derive(Clone, Copy, Debug)]
struct Primitive {
    exponent: f64,
    coeff: f64,
    center: f64,
}

#[derive(Clone, Debug)]
struct Contracted {
    prims: Vec<Primitive>,
}

impl Contracted {
    fn sto3g_hydrogen(center: f64) -> Self {
        let mut c = Contracted {
            prims: STO3G_EXPONENTS
                .iter()
                .zip(STO3G_COEFFICIENTS)
                .map(|(&a, d)| Primitive {
                    exponent: a,
                    coeff: d * (2.0 * a / std::f64::consts::PI).powf(0.75),
                    center,
                })
                .collect(),
        };
        // tabulated coefficients are only normalized to ~1e-8
        let norm = contract2(&c, &c, prim_overlap).sqrt();
        for p in &mut c.prims {
            p.coeff /= norm;
        }
        c
    }
}

fn prim_overlap(a: &Primitive, b: &Primitive) -> f64 {
    let p = a.exponent + b.exponent;
    let r2 = (a.center - b.center).powi(2);
    (std::f64::consts::PI / p).powf(1.5) * (-a.exponent * b.exponent / p * r2).exp()
}

fn prim_kinetic(a: &Primitive, b: &Primitive) -> f64 {
    let p = a.exponent + b.exponent;
    let mu = a.exponent * b.exponent / p;
    let r2 = (a.center - b.center).powi(2);
    mu * (3.0 - 2.0 * mu * r2) * (std::f64::consts::PI / p).powf(1.5) * (-mu * r2).exp()
}

fn prim_attraction(a: &Primitive, b: &Primitive, nucleus: f64, charge: f64) -> f64 {
    let p = a.exponent + b.exponent;
    let mu = a.exponent * b.exponent / p;
    let r2 = (a.center - b.center).powi(2);
    let pc = (a.exponent * a.center + b.exponent * b.center) / p - nucleus;
    -2.0 * std::f64::consts::PI / p * charge * (-mu * r2).exp() * boys_f0(p * pc * pc)
}

fn prim_eri(a: &Primitive, b: &Primitive, c: &Primitive, d: &Primitive) -> f64 {
    let p = a.exponent + b.exponent;
    let q = c.exponent + d.exponent;
    let rab2 = (a.center - b.center).powi(2);
    let rcd2 = (c.center - d.center).powi(2);
    let pp = (a.exponent * a.center + b.exponent * b.center) / p;
    let qq = (c.exponent * c.center + d.exponent * d.center) / q;
    let pi = std::f64::consts::PI;
    2.0 * pi.powf(2.5) / (p * q * (p + q).sqrt())
        * (-a.exponent * b.exponent / p * rab2 - c.exponent * d.exponent / q * rcd2).exp()
        * boys_f0(p * q / (p + q) * (pp - qq).powi(2))
}

fn contract2(x: &Contracted, y: &Contracted, f: impl Fn(&Primitive, &Primitive) -> f64) -> f64 {
    let mut acc = 0.0;
    for a in &x.prims {
        for b in &y.prims {
            acc += a.coeff * b.coeff * f(a, b);
        }
    }
    acc
}

/// Two-electron integrals in chemist notation, `(pq|rs)`, dense `n^4` storage.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoElectron {
    n: usize,
    values: Vec<f64>,
}

impl TwoElectron {
    pub fn zeros(n: usize) -> Self {
        TwoElectron {
            n,
            values: vec![0.0; n.pow(4)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n + q) * self.n + r) * self.n + s
    }

    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.values[self.index(p, q, r, s)]
    }

    /// Sets `(pq|rs)` and all its 8-fold symmetric images.
    pub fn set_symmetric(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            let i = self.index(a, b, c, d);
            self.values[i] = v;
        }
    }
}

/// H2 in the STO-3G basis: geometry and atomic-orbital integrals (atomic units).
#[derive(Clone, Debug)]
pub struct MolecularSystem {
    /// Angstrom.
    pub bond_length: f64,
    pub nuclear_repulsion: f64,
    pub overlap: DMatrix<f64>,
    pub kinetic: DMatrix<f64>,
    pub nuclear_attraction: DMatrix<f64>,
    pub two_electron: TwoElectron,
}

impl MolecularSystem {
    pub fn n_orbitals(&self) -> usize {
        self.overlap.nrows()
    }

    pub fn core_hamiltonian(&self) -> DMatrix<f64> {
        &self.kinetic + &self.nuclear_attraction
    }
}

/// Atomic-orbital integrals for H2 at `bond_length` angstrom.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
pub fn build_integrals(bond_length: f64) -> Result<MolecularSystem> {
    if !(bond_length > 0.0) || !bond_length.is_finite() {
        return Err(Error::InvalidInput(format!(
            "bond length must be positive and finite, got {bond_length}"
        )));
    }
    let r = bond_length / BOHR_IN_ANGSTROM;
    let centers = [0.0, r];
    let basis: Vec<Contracted> = centers.iter().map(|&c| Contracted::sto3g_hydrogen(c)).collect();
    let n = basis.len();

    let overlap = DMatrix::from_fn(n, n, |i, j| contract2(&basis[i], &basis[j], prim_overlap));
    let kinetic = DMatrix::from_fn(n, n, |i, j| contract2(&basis[i], &basis[j], prim_kinetic));
    let nuclear_attraction = DMatrix::from_fn(n, n, |i, j| {
        centers
            .iter()
            .map(|&c| contract2(&basis[i], &basis[j], |a, b| prim_attraction(a, b, c, 1.0)))
            .sum()
    });

    let mut two_electron = TwoElectron::zeros(n);
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                        continue;
                    }
                    let mut v = 0.0;
                    for a in &basis[p].prims {
                        for b in &basis[q].prims {
                            for c in &basis[r].prims {
                                for d in &basis[s].prims {
                                    v += a.coeff * b.coeff * c.coeff * d.coeff * prim_eri(a, b, c, d);
                                }
                            }
                        }
                    }
                    two_electron.set_symmetric(p, q, r, s, v);
                }
            }
        }
    }

    Ok(MolecularSystem {
        bond_length,
        nuclear_repulsion: 1.0 / r,
        overlap,
        kinetic,
        nuclear_attraction,
        two_electron,
    })
}
