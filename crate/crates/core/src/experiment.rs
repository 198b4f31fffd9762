//! End-to-end runs: Hamiltonian, circuit, qubit placement, noisy shots,
//! estimation, then the figure and summary files built from the raw records.
//!
//! A run directory holds
//!
//! * `manifest.json`: config, every derived seed, calibration hash, plan shape
//! * `calibration.json`: the device model that was used
//! * `raw.csv`: one row per sample (energy per H2)
//! * `subsystems.csv`: one row per molecule with energy and populations
//! * `populations.csv`: one row per sample (populations averaged over molecules)
//!
//! `analyze` adds `fig1`, `fig2a`, `fig2b`, `fig3` (CSV + SVG) and `summary.csv`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{self, cisd_reference, error_stats, fci_double_population, horizon, wls_fit, Horizon};
use crate::circuit::{compose, contiguous_blocks, Circuit};
use crate::config::{ExperimentConfig, Sampling};
use crate::error::{Error, Result};
use crate::molecule::{H2Model, Representation};
use crate::noise::{run_shots, CountsTable, DeviceModel};
use crate::plot::{Plot, Series, Style};
use crate::sampling::{random_plan, rank_qubits, selective_plan, PlanEntry, SamplingPlan};
use crate::state_prep::{fci_ground, synthesize};
use crate::tomography::{build_plan, estimate_energies, extract_populations, EnergyEstimate, MeasurementPlan, Populations};
use crate::units::to_kcal;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one work item, independent of scheduling.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |h, &p| splitmix64(h ^ p))
}

/// Everything about one molecule encoding that the samples share.
#[derive(Clone, Debug)]
pub struct Setup {
    pub model: H2Model,
    pub representation: Representation,
    pub sub_circuit: Circuit,
}

impl Setup {
    pub fn new(bond_length: f64, representation: Representation) -> Result<Self> {
        let model = H2Model::new(bond_length)?;
        let target = fci_ground(model.hamiltonian(representation))?;
        let sub_circuit = synthesize(&target)?;
        Ok(Setup {
            model,
            representation,
            sub_circuit,
        })
    }

    pub fn plan(&self, n: usize) -> Result<MeasurementPlan> {
        build_plan(self.model.hamiltonian(self.representation), n)
    }
}

#[derive(Clone, Debug)]
pub struct SampleResult {
    pub n: usize,
    pub set: usize,
    pub sample: usize,
    pub blocks: Vec<Vec<usize>>,
    pub group_seeds: Vec<u64>,
    pub estimate: EnergyEstimate,
    pub populations: Vec<Populations>,
}

impl SampleResult {
    pub fn run_id(&self, rep: Representation) -> String {
        format!("r{}-n{}-k{}-s{}", rep.width(), self.n, self.set, self.sample)
    }

    pub fn energy_per_h2(&self) -> f64 {
        self.estimate.per_subsystem_mean()
    }

    pub fn mean_populations(&self) -> Populations {
        crate::tomography::PopulationBreakdown {
            per_subsystem: self.populations.clone(),
        }
        .mean()
    }
}

fn blocks_text(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("|")
}

/// Runs every measurement group of one placement.
pub fn simulate_sample(
    setup: &Setup,
    plan: &MeasurementPlan,
    device: &DeviceModel,
    entry: &PlanEntry,
    shots: u64,
    seeds: &[u64],
) -> Result<SampleResult> {
    let n = plan.n_subsystems;
    let circuit = compose(&setup.sub_circuit, n, &contiguous_blocks(n, setup.representation.width()))?;
    let map = entry.physical_map();
    let counts: Vec<CountsTable> = plan
        .groups
        .iter()
        .zip(seeds)
        .map(|(g, &seed)| {
            let mut t = run_shots(&circuit, device, &map, &g.basis_change, shots, seed)?;
            t.measured_basis = g.basis_label.clone();
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let estimate = estimate_energies(plan, &counts)?;
    let populations = extract_populations(&counts[plan.z_group()], setup.representation, n)?;
    Ok(SampleResult {
        n,
        set: entry.set,
        sample: entry.sample,
        blocks: entry.blocks.clone(),
        group_seeds: seeds.to_vec(),
        estimate,
        populations: populations.per_subsystem,
    })
}

pub fn sampling_plan(cfg: &ExperimentConfig, device: &DeviceModel, n: usize) -> Result<SamplingPlan> {
    let width = cfg.representation()?.width();
    let pool = rank_qubits(device, cfg.rank_weights);
    match cfg.sampling {
        Sampling::Selective { k } => selective_plan(&pool, n, width, k),
        Sampling::Random { s } => random_plan(&pool, n, width, s, derive_seed(cfg.seed, &[n as u64, u64::MAX])),
    }
}

/// Simulates every (N, sample) item of a config; nothing touches the disk.
pub fn run_samples(cfg: &ExperimentConfig, device: &DeviceModel) -> Result<Vec<SampleResult>> {
    cfg.validate()?;
    let setup = Setup::new(cfg.bond_length, cfg.representation()?)?;
    let mut items = Vec::new();
    for &n in &cfg.subsystems {
        let plan = setup.plan(n)?;
        for entry in sampling_plan(cfg, device, n)?.entries {
            items.push((plan.clone(), entry));
        }
    }
    items
        .par_iter()
        .map(|(plan, e)| {
            let seeds: Vec<u64> = (0..plan.groups.len())
                .map(|g| derive_seed(cfg.seed, &[plan.n_subsystems as u64, e.set as u64, e.sample as u64, g as u64]))
                .collect();
            simulate_sample(&setup, plan, device, e, cfg.shots, &seeds)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestItem {
    pub run_id: String,
    pub n: usize,
    pub set: usize,
    pub sample: usize,
    pub physical_qubits: String,
    pub group_seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub config: ExperimentConfig,
    pub calibration_sha256: String,
    pub e_hf: f64,
    pub e_fci: f64,
    /// Group count for each N; equal across N by construction.
    pub groups_per_n: BTreeMap<usize, usize>,
    pub group_bases: Vec<String>,
    pub items: Vec<ManifestItem>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawRow {
    run_id: String,
    representation: usize,
    n: usize,
    qubits_total: usize,
    set: usize,
    sample: usize,
    physical_qubits: String,
    energy_per_h2_hartree: f64,
    energy_per_h2_kcal: f64,
    stderr_per_h2_hartree: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SubsystemRow {
    run_id: String,
    representation: usize,
    n: usize,
    subsystem: usize,
    physical_qubits: String,
    energy_hartree: f64,
    energy_kcal: f64,
    stderr_hartree: f64,
    hf: f64,
    single_excitation: f64,
    double_excitation: f64,
    number_violating: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct PopulationRow {
    run_id: String,
    representation: usize,
    n: usize,
    set: usize,
    sample: usize,
    hf: f64,
    single_excitation: f64,
    double_excitation: f64,
    number_violating: f64,
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let corrupt = |m: String| Error::RunFile {
        path: path.display().to_string(),
        message: m,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| corrupt(e.to_string()))?;
    r.deserialize().map(|row| row.map_err(|e| corrupt(e.to_string()))).collect()
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::RunFile {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs the config and writes the raw files into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig, device: &DeviceModel, out_dir: &Path) -> Result<Manifest> {
    cfg.validate()?;
    device.validate()?;
    let rep = cfg.representation()?;
    fs::create_dir_all(out_dir).map_err(|e| Error::RunFile {
        path: out_dir.display().to_string(),
        message: e.to_string(),
    })?;
    let samples = run_samples(cfg, device)?;
    let setup = Setup::new(cfg.bond_length, rep)?;

    let calibration = device.to_json()?;
    let mut groups_per_n = BTreeMap::new();
    for &n in &cfg.subsystems {
        groups_per_n.insert(n, setup.plan(n)?.groups.len());
    }
    let group_bases = setup.plan(1)?.groups.iter().map(|g| g.basis_label.clone()).collect();

    let mut raw = Vec::new();
    let mut subs = Vec::new();
    let mut pops = Vec::new();
    let mut items = Vec::new();
    for s in &samples {
        let run_id = s.run_id(rep);
        let qubits = blocks_text(&s.blocks);
        let e = s.energy_per_h2();
        raw.push(RawRow {
            run_id: run_id.clone(),
            representation: rep.width(),
            n: s.n,
            qubits_total: s.n * rep.width(),
            set: s.set,
            sample: s.sample,
            physical_qubits: qubits.clone(),
            energy_per_h2_hartree: e,
            energy_per_h2_kcal: to_kcal(e),
            stderr_per_h2_hartree: s.estimate.per_subsystem_mean_stderr(),
        });
        for (i, p) in s.populations.iter().enumerate() {
            subs.push(SubsystemRow {
                run_id: run_id.clone(),
                representation: rep.width(),
                n: s.n,
                subsystem: i,
                physical_qubits: blocks_text(&s.blocks[i..=i]),
                energy_hartree: s.estimate.energies[i],
                energy_kcal: to_kcal(s.estimate.energies[i]),
                stderr_hartree: s.estimate.stderr[i],
                hf: p.hf,
                single_excitation: p.single_excitation,
                double_excitation: p.double_excitation,
                number_violating: p.number_violating,
            });
        }
        let m = s.mean_populations();
        pops.push(PopulationRow {
            run_id: run_id.clone(),
            representation: rep.width(),
            n: s.n,
            set: s.set,
            sample: s.sample,
            hf: m.hf,
            single_excitation: m.single_excitation,
            double_excitation: m.double_excitation,
            number_violating: m.number_violating,
        });
        items.push(ManifestItem {
            run_id,
            n: s.n,
            set: s.set,
            sample: s.sample,
            physical_qubits: qubits,
            group_seeds: s.group_seeds.clone(),
        });
    }
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        calibration_sha256: sha256_hex(calibration.as_bytes()),
        e_hf: setup.model.e_hf(),
        e_fci: setup.model.e_fci(),
        groups_per_n,
        group_bases,
        items,
    };
    write_file(&out_dir.join("calibration.json"), &calibration)?;
    write_csv(&out_dir.join("raw.csv"), &raw)?;
    write_csv(&out_dir.join("subsystems.csv"), &subs)?;
    write_csv(&out_dir.join("populations.csv"), &pops)?;
    write_file(&out_dir.join("manifest.json"), &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    Ok(manifest)
}

/// Fitted slope and horizons of one analyzed run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub representation: usize,
    pub delta_kcal_per_qubit: f64,
    pub stderr: f64,
    pub intercept_kcal: f64,
    pub n_qubit: String,
    pub n_h2: String,
}

impl Summary {
    pub fn new(rep: Representation, fit: &analysis::RegressionResult) -> Self {
        let h = horizon(fit.slope_delta, rep.width());
        let show = |v: u64| {
            if h == Horizon::UNBOUNDED {
                "unbounded".to_string()
            } else {
                v.to_string()
            }
        };
        Summary {
            representation: rep.width(),
            delta_kcal_per_qubit: fit.slope_delta,
            stderr: fit.slope_stderr,
            intercept_kcal: fit.intercept,
            n_qubit: show(h.n_qubit),
            n_h2: show(h.n_h2),
        }
    }
}

#[derive(Debug, Serialize)]
struct Fig1Row {
    n: usize,
    qubits: usize,
    samples: usize,
    mean_energy_per_h2_kcal: f64,
    stddev_kcal: f64,
    /// Standard deviation used for the WLS weight after the shot-noise floor.
    weight_stddev_kcal: f64,
    wls_kcal: f64,
    fci_kcal: f64,
}

#[derive(Debug, Serialize)]
struct Fig2aRow {
    n: usize,
    samples: usize,
    double_mean: f64,
    double_stddev: f64,
    fci_double: f64,
    cisd_double: f64,
}

#[derive(Debug, Serialize)]
struct Fig2bRow {
    n: usize,
    samples: usize,
    single_mean: f64,
    single_stddev: f64,
    number_violating_mean: f64,
    fci_single: f64,
}

#[derive(Debug, Serialize)]
struct Fig3Row {
    n: usize,
    samples: usize,
    mean_error_kcal: f64,
    stddev_kcal: f64,
    hf_error_kcal: f64,
    fci_error_kcal: f64,
}

/// Spread of the energy per H2 at one system size (kcal/mol).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizeStat {
    pub n: usize,
    pub samples: usize,
    pub mean_kcal: f64,
    pub stddev_kcal: f64,
    /// The sample spread, raised to the shot-noise floor when smaller.
    pub weight_stddev_kcal: f64,
}

/// WLS of mean energy per H2 against total qubits. Each point is
/// `(N, energy per H2, shot-noise standard error)` for one sample, in kcal/mol.
pub fn size_consistency_fit(
    rep: Representation,
    samples: &[(usize, f64, f64)],
) -> Result<(analysis::RegressionResult, Vec<SizeStat>)> {
    let mut by_n: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for &(n, e, se) in samples {
        by_n.entry(n).or_default().push((e, se));
    }
    let mut stats = Vec::new();
    for (n, v) in by_n {
        let energies: Vec<f64> = v.iter().map(|p| p.0).collect();
        let (mean, sd) = analysis::mean_and_stddev(&energies);
        let floor = v.iter().map(|p| p.1).sum::<f64>() / v.len() as f64;
        stats.push(SizeStat {
            n,
            samples: v.len(),
            mean_kcal: mean,
            stddev_kcal: sd,
            weight_stddev_kcal: sd.max(floor),
        });
    }
    if stats.len() < 2 {
        return Err(Error::Regression("analysis needs at least two system sizes".into()));
    }
    if stats.iter().any(|s| s.weight_stddev_kcal == 0.0) {
        return Err(Error::Regression("zero spread and zero shot noise leave no weight".into()));
    }
    let points: Vec<(f64, f64, f64)> = stats
        .iter()
        .map(|s| ((s.n * rep.width()) as f64, s.mean_kcal, s.weight_stddev_kcal))
        .collect();
    Ok((wls_fit(&points)?, stats))
}

const COLORS: [&str; 4] = ["steelblue", "black", "darkorange", "seagreen"];

/// Reads a run directory and writes the figure and summary files.
pub fn analyze(dir: &Path) -> Result<Summary> {
    let manifest_path = dir.join("manifest.json");
    let text = fs::read_to_string(&manifest_path).map_err(|e| Error::RunFile {
        path: manifest_path.display().to_string(),
        message: e.to_string(),
    })?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::RunFile {
        path: manifest_path.display().to_string(),
        message: e.to_string(),
    })?;
    let rep = manifest.config.representation()?;
    let model = H2Model::new(manifest.config.bond_length)?;
    let params = model.one_qubit_params();
    let raw: Vec<RawRow> = read_csv(&dir.join("raw.csv"))?;
    let pops: Vec<PopulationRow> = read_csv(&dir.join("populations.csv"))?;
    if raw.is_empty() {
        return Err(Error::RunFile {
            path: dir.join("raw.csv").display().to_string(),
            message: "no samples".into(),
        });
    }

    let points: Vec<(usize, f64, f64)> = raw
        .iter()
        .map(|r| (r.n, r.energy_per_h2_kcal, to_kcal(r.stderr_per_h2_hartree)))
        .collect();
    let (fit, stats) = size_consistency_fit(rep, &points)?;
    let fci_kcal = to_kcal(model.e_fci());

    let fig1: Vec<Fig1Row> = stats
        .iter()
        .map(|s| {
            let q = s.n * rep.width();
            Fig1Row {
                n: s.n,
                qubits: q,
                samples: s.samples,
                mean_energy_per_h2_kcal: s.mean_kcal,
                stddev_kcal: s.stddev_kcal,
                weight_stddev_kcal: s.weight_stddev_kcal,
                wls_kcal: fit.predict(q as f64),
                fci_kcal,
            }
        })
        .collect();
    write_csv(&dir.join("fig1.csv"), &fig1)?;
    let xs: Vec<f64> = fig1.iter().map(|r| r.qubits as f64).collect();
    let mut p = Plot::new(
        &format!("Energy per H2, {}-qubit encoding", rep.width()),
        "total qubits",
        "energy per H2 (kcal/mol)",
    );
    p.add(Series::new(
        "samples",
        COLORS[0],
        Style::Scatter,
        raw.iter().map(|r| (r.qubits_total as f64, r.energy_per_h2_kcal)).collect(),
    ));
    p.add(Series::new(
        "WLS fit",
        COLORS[1],
        Style::Line,
        xs.iter().map(|&x| (x, fit.predict(x))).collect(),
    ));
    p.add(Series::new("FCI", COLORS[3], Style::Dashed, xs.iter().map(|&x| (x, fci_kcal)).collect()));
    write_file(&dir.join("fig1.svg"), &p.to_svg())?;

    let mut pops_by_n: BTreeMap<usize, Vec<&PopulationRow>> = BTreeMap::new();
    for r in &pops {
        pops_by_n.entry(r.n).or_default().push(r);
    }
    let fci_double = fci_double_population(params);
    let mut fig2a = Vec::new();
    let mut fig2b = Vec::new();
    for (&n, rows) in &pops_by_n {
        let d: Vec<f64> = rows.iter().map(|r| r.double_excitation).collect();
        let s: Vec<f64> = rows.iter().map(|r| r.single_excitation).collect();
        let v: Vec<f64> = rows.iter().map(|r| r.number_violating).collect();
        let (dm, dsd) = analysis::mean_and_stddev(&d);
        let (sm, ssd) = analysis::mean_and_stddev(&s);
        fig2a.push(Fig2aRow {
            n,
            samples: rows.len(),
            double_mean: dm,
            double_stddev: dsd,
            fci_double,
            cisd_double: cisd_reference(params, n)?.double_population_per_h2,
        });
        fig2b.push(Fig2bRow {
            n,
            samples: rows.len(),
            single_mean: sm,
            single_stddev: ssd,
            number_violating_mean: analysis::mean_and_stddev(&v).0,
            fci_single: 0.0,
        });
    }
    write_csv(&dir.join("fig2a.csv"), &fig2a)?;
    write_csv(&dir.join("fig2b.csv"), &fig2b)?;
    let mut p = Plot::new("Double-excitation population per H2", "N (molecules)", "population");
    p.add(
        Series::new("measured", COLORS[0], Style::Scatter, fig2a.iter().map(|r| (r.n as f64, r.double_mean)).collect())
            .with_errors(fig2a.iter().map(|r| r.double_stddev).collect()),
    );
    p.add(Series::new("FCI", COLORS[3], Style::Line, fig2a.iter().map(|r| (r.n as f64, r.fci_double)).collect()));
    p.add(Series::new("CISD", COLORS[2], Style::Dashed, fig2a.iter().map(|r| (r.n as f64, r.cisd_double)).collect()));
    write_file(&dir.join("fig2a.svg"), &p.to_svg())?;
    let mut p = Plot::new("Single-excitation population per H2", "N (molecules)", "population");
    p.add(
        Series::new("measured", COLORS[0], Style::Scatter, fig2b.iter().map(|r| (r.n as f64, r.single_mean)).collect())
            .with_errors(fig2b.iter().map(|r| r.single_stddev).collect()),
    );
    p.add(Series::new("FCI", COLORS[3], Style::Line, fig2b.iter().map(|r| (r.n as f64, 0.0)).collect()));
    if rep == Representation::Four {
        p.add(Series::new(
            "number-violating",
            COLORS[2],
            Style::Scatter,
            fig2b.iter().map(|r| (r.n as f64, r.number_violating_mean)).collect(),
        ));
    }
    write_file(&dir.join("fig2b.svg"), &p.to_svg())?;

    let samples: Vec<(usize, f64)> = raw.iter().map(|r| (r.n, r.energy_per_h2_hartree)).collect();
    let errs = error_stats(&samples, model.e_fci(), model.e_hf())?;
    let fig3: Vec<Fig3Row> = errs
        .per_n
        .iter()
        .map(|s| Fig3Row {
            n: s.n,
            samples: s.samples,
            mean_error_kcal: s.mean_kcal,
            stddev_kcal: s.stddev_kcal,
            hf_error_kcal: errs.hf_line_kcal,
            fci_error_kcal: 0.0,
        })
        .collect();
    write_csv(&dir.join("fig3.csv"), &fig3)?;
    let mut p = Plot::new("Energy error per H2", "N (molecules)", "error vs FCI (kcal/mol)");
    p.add(
        Series::new("measured", COLORS[0], Style::Scatter, fig3.iter().map(|r| (r.n as f64, r.mean_error_kcal)).collect())
            .with_errors(fig3.iter().map(|r| r.stddev_kcal).collect()),
    );
    p.add(Series::new("Hartree-Fock", COLORS[2], Style::Dashed, fig3.iter().map(|r| (r.n as f64, r.hf_error_kcal)).collect()));
    p.add(Series::new("FCI", COLORS[3], Style::Line, fig3.iter().map(|r| (r.n as f64, 0.0)).collect()));
    write_file(&dir.join("fig3.svg"), &p.to_svg())?;

    let summary = Summary::new(rep, &fit);
    write_csv(&dir.join("summary.csv"), std::slice::from_ref(&summary))?;
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub n: usize,
    pub hf_energy: f64,
    pub fci_energy: f64,
    pub cisd_energy: f64,
    pub fci_correlation_per_h2: f64,
    pub cisd_correlation_per_h2: f64,
    pub fci_double_per_h2: f64,
    pub cisd_double_per_h2: f64,
}

/// Classical curves for 1..=n_max molecules (hartree).
pub fn reference_table(bond_length: f64, n_max: usize) -> Result<Vec<ReferenceRow>> {
    let model = H2Model::new(bond_length)?;
    let p = model.one_qubit_params();
    (1..=n_max)
        .map(|n| {
            let c = cisd_reference(p, n)?;
            let nf = n as f64;
            Ok(ReferenceRow {
                n,
                hf_energy: nf * model.e_hf(),
                fci_energy: nf * model.e_fci(),
                cisd_energy: c.energy,
                fci_correlation_per_h2: model.e_fci() - model.e_hf(),
                cisd_correlation_per_h2: c.correlation_per_h2,
                fci_double_per_h2: fci_double_population(p),
                cisd_double_per_h2: c.double_population_per_h2,
            })
        })
        .collect()
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Resolves `path` against the directory holding the config file.
pub fn resolve(config_path: &Path, path: &Path) -> PathBuf {
    match config_path.parent() {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}
