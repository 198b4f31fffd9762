//! Browser bindings for the size-consistency benchmark. Every export returns
//! a JSON string so the page needs no generated types.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use sizecons::experiment::{derive_seed, reference_table, simulate_sample, Setup};
use sizecons::molecule::{H2Model, Representation};
use sizecons::noise::{DeviceModel, QubitCalibration};
use sizecons::sampling::PlanEntry;
use sizecons::units::to_kcal;

/// Largest register the demo simulates.
pub const MAX_QUBITS: usize = 16;
/// Shot cap so one click stays interactive.
pub const MAX_SHOTS: u64 = 200_000;

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub bond_length: f64,
    pub e_hf: f64,
    pub e_fci: f64,
}

pub fn bond_curve(r_min: f64, r_max: f64, steps: usize) -> sizecons::Result<Vec<CurvePoint>> {
    if !(r_min > 0.0 && r_max > r_min) || steps < 2 {
        return Err(sizecons::Error::InvalidInput(format!(
            "need 0 < r_min < r_max and at least 2 steps, got {r_min}..{r_max} in {steps}"
        )));
    }
    (0..steps)
        .map(|i| {
            let r = r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64;
            let m = H2Model::new(r)?;
            Ok(CurvePoint {
                bond_length: r,
                e_hf: m.e_hf(),
                e_fci: m.e_fci(),
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct NoisyRun {
    pub representation: usize,
    pub n: usize,
    pub shots: u64,
    pub energy_per_h2: f64,
    pub stderr_per_h2: f64,
    pub e_fci: f64,
    pub e_hf: f64,
    pub error_kcal: f64,
    pub hf: f64,
    pub single_excitation: f64,
    pub double_excitation: f64,
    pub number_violating: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct NoiseKnobs {
    pub readout: f64,
    pub single_qubit: f64,
    pub two_qubit: f64,
}

/// N copies on consecutive qubits of a device with identical error rates.
pub fn noisy_run(bond_length: f64, width: usize, n: usize, shots: u64, noise: NoiseKnobs, seed: u64) -> sizecons::Result<NoisyRun> {
    let rep = Representation::from_width(width)?;
    if n == 0 || n * width > MAX_QUBITS {
        return Err(sizecons::Error::InvalidInput(format!(
            "{n} molecules of {width} qubits do not fit in {MAX_QUBITS} qubits"
        )));
    }
    if shots == 0 || shots > MAX_SHOTS {
        return Err(sizecons::Error::InvalidInput(format!("shots must be in 1..={MAX_SHOTS}")));
    }
    for (name, p) in [("readout", noise.readout), ("one-qubit", noise.single_qubit), ("two-qubit", noise.two_qubit)] {
        if !(0.0..=0.5).contains(&p) {
            return Err(sizecons::Error::InvalidInput(format!("{name} error {p} outside [0, 0.5]")));
        }
    }
    let cal = QubitCalibration {
        readout_p10: noise.readout,
        readout_p01: noise.readout,
        single_qubit_error: noise.single_qubit,
    };
    let device = DeviceModel::uniform(n * width, cal, noise.two_qubit);
    let setup = Setup::new(bond_length, rep)?;
    let plan = setup.plan(n)?;
    let entry = PlanEntry {
        set: 0,
        sample: 0,
        blocks: (0..n).map(|i| (i * width..(i + 1) * width).collect()).collect(),
    };
    let seeds: Vec<u64> = (0..plan.groups.len() as u64).map(|g| derive_seed(seed, &[n as u64, g])).collect();
    let s = simulate_sample(&setup, &plan, &device, &entry, shots, &seeds)?;
    let p = s.mean_populations();
    let e = s.energy_per_h2();
    Ok(NoisyRun {
        representation: width,
        n,
        shots,
        energy_per_h2: e,
        stderr_per_h2: s.estimate.per_subsystem_mean_stderr(),
        e_fci: setup.model.e_fci(),
        e_hf: setup.model.e_hf(),
        error_kcal: to_kcal(e - setup.model.e_fci()),
        hf: p.hf,
        single_excitation: p.single_excitation,
        double_excitation: p.double_excitation,
        number_violating: p.number_violating,
    })
}

fn to_js<T: Serialize>(r: sizecons::Result<T>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

/// HF and FCI energies (hartree) across bond lengths in angstrom.
#[wasm_bindgen(js_name = bondCurve)]
pub fn bond_curve_js(r_min: f64, r_max: f64, steps: usize) -> Result<String, JsError> {
    to_js(bond_curve(r_min, r_max, steps))
}

/// HF, FCI and CISD totals and per-H2 quantities for 1..=n_max molecules.
#[wasm_bindgen(js_name = referenceTable)]
pub fn reference_table_js(bond_length: f64, n_max: usize) -> Result<String, JsError> {
    to_js(reference_table(bond_length, n_max))
}

#[wasm_bindgen(js_name = noisyRun)]
#[allow(clippy::too_many_arguments)]
pub fn noisy_run_js(
    bond_length: f64,
    width: usize,
    n: usize,
    shots: u32,
    readout: f64,
    single_qubit: f64,
    two_qubit: f64,
    seed: u32,
) -> Result<String, JsError> {
    let noise = NoiseKnobs {
        readout,
        single_qubit,
        two_qubit,
    };
    to_js(noisy_run(bond_length, width, n, shots as u64, noise, seed as u64))
}
