//! Size-consistency regression, chemical-accuracy horizon, and the classical
//! reference curves for `N` non-interacting H2 molecules.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::molecule::OneQubitParams;
use crate::units::{to_kcal, CHEMICAL_ACCURACY_KCAL};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    /// Total qubit count.
    pub x: f64,
    /// Mean energy per H2 (kcal/mol).
    pub y: f64,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionResult {
    /// kcal/mol per qubit.
    pub slope_delta: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub points: Vec<FitPoint>,
}

impl RegressionResult {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope_delta * x
    }
}

/// Weighted least squares with weights `1 / sd^2`. The slope's standard error
/// scales the weighted residual variance by `n - 2` degrees of freedom, and is
/// zero when the fit has none left.
pub fn wls_fit(points: &[(f64, f64, f64)]) -> Result<RegressionResult> {
    if points.len() < 2 {
        return Err(Error::Regression(format!("need at least 2 points, got {}", points.len())));
    }
    for &(x, y, sd) in points {
        if !(sd > 0.0 && sd.is_finite()) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Regression(format!("point ({x}, {y}) has standard deviation {sd}")));
        }
    }
    let fit: Vec<FitPoint> = points
        .iter()
        .map(|&(x, y, sd)| FitPoint { x, y, weight: 1.0 / (sd * sd) })
        .collect();
    let (mut s, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for p in &fit {
        s += p.weight;
        sx += p.weight * p.x;
        sy += p.weight * p.y;
    }
    // centred sums are better conditioned than the raw normal equations
    let (xm, ym) = (sx / s, sy / s);
    for p in &fit {
        sxx += p.weight * (p.x - xm) * (p.x - xm);
        sxy += p.weight * (p.x - xm) * (p.y - ym);
    }
    if sxx <= f64::EPSILON * s * xm.abs().max(1.0).powi(2) {
        return Err(Error::Regression("all x values are identical".into()));
    }
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let dof = fit.len() - 2;
    let slope_stderr = if dof == 0 {
        0.0
    } else {
        let rss: f64 = fit
            .iter()
            .map(|p| p.weight * (p.y - intercept - slope * p.x).powi(2))
            .sum();
        (rss / dof as f64 / sxx).sqrt()
    };
    Ok(RegressionResult {
        slope_delta: slope,
        intercept,
        slope_stderr,
        points: fit,
    })
}

/// Number of qubits and molecules that stay within chemical accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horizon {
    pub n_qubit: u64,
    pub n_h2: u64,
}

impl Horizon {
    /// Reported when the slope is exactly zero.
    pub const UNBOUNDED: Horizon = Horizon {
        n_qubit: u64::MAX,
        n_h2: u64::MAX,
    };

    pub fn is_unbounded(&self) -> bool {
        *self == Horizon::UNBOUNDED
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unbounded() {
            write!(f, "unbounded")
        } else {
            write!(f, "{} qubits / {} H2", self.n_qubit, self.n_h2)
        }
    }
}

pub fn horizon(delta: f64, qubits_per_h2: usize) -> Horizon {
    if delta == 0.0 {
        return Horizon::UNBOUNDED;
    }
    // float-to-int casts saturate, so vanishing slopes also hit the sentinel
    let n_qubit = (CHEMICAL_ACCURACY_KCAL / delta.abs()).floor() as u64;
    if n_qubit == u64::MAX {
        return Horizon::UNBOUNDED;
    }
    Horizon {
        n_qubit,
        n_h2: n_qubit / qubits_per_h2.max(1) as u64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CisdPoint {
    pub n: usize,
    /// Total CISD energy (hartree).
    pub energy: f64,
    pub correlation_per_h2: f64,
    pub double_population_per_h2: f64,
}

/// CISD over `{HF, one double per molecule}` for `n` copies of the one-qubit model.
pub fn cisd_reference(params: OneQubitParams, n: usize) -> Result<CisdPoint> {
    if n == 0 {
        return Err(Error::InvalidInput("CISD needs at least one molecule".into()));
    }
    let (e_hf, e_d) = (params.e_hf(), params.e_double());
    let dim = n + 1;
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    m[(0, 0)] = n as f64 * e_hf;
    for i in 1..dim {
        m[(i, i)] = (n - 1) as f64 * e_hf + e_d;
        m[(0, i)] = params.g2;
        m[(i, 0)] = params.g2;
    }
    let eig = SymmetricEigen::new(m);
    let (k, &energy) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty spectrum");
    let v = eig.eigenvectors.column(k);
    let doubles: f64 = v.iter().skip(1).map(|c| c * c).sum();
    Ok(CisdPoint {
        n,
        energy,
        correlation_per_h2: (energy - n as f64 * e_hf) / n as f64,
        double_population_per_h2: doubles / n as f64,
    })
}

/// Probability of the doubly excited determinant in the exact one-molecule ground state.
pub fn fci_double_population(params: OneQubitParams) -> f64 {
    let r = params.g1.hypot(params.g2);
    if r == 0.0 {
        return 0.0;
    }
    // ground state of g1 Z + g2 X has <Z> = -g1 / r
    0.5 * (1.0 + params.g1 / r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorStat {
    pub n: usize,
    pub samples: usize,
    pub mean_kcal: f64,
    pub stddev_kcal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub per_n: Vec<ErrorStat>,
    /// `e_hf - e_fci` per molecule.
    pub hf_line_kcal: f64,
}

/// Mean and sample standard deviation of `energy - e_fci` per H2, grouped by `N`.
pub fn error_stats(samples: &[(usize, f64)], e_fci: f64, e_hf: f64) -> Result<ErrorSummary> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("no samples for error statistics".into()));
    }
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for &(n, e) in samples {
        by_n.entry(n).or_default().push(to_kcal(e - e_fci));
    }
    let per_n = by_n
        .into_iter()
        .map(|(n, errs)| {
            let (mean, stddev) = mean_and_stddev(&errs);
            ErrorStat {
                n,
                samples: errs.len(),
                mean_kcal: mean,
                stddev_kcal: stddev,
            }
        })
        .collect();
    Ok(ErrorSummary {
        per_n,
        hf_line_kcal: to_kcal(e_hf - e_fci),
    })
}

/// Mean and `n - 1` standard deviation; a lone value has deviation 0.
pub fn mean_and_stddev(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
