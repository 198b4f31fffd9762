mod common;

use std::fs;

use sizecons::analysis::{horizon, RegressionResult};
use sizecons::config::{CalibrationSource, ExperimentConfig, Sampling};
use sizecons::experiment::{analyze, run_experiment, run_samples, simulate_sample, Setup, Summary};
use sizecons::molecule::Representation;
use sizecons::noise::DeviceModel;
use sizecons::sampling::{PlanEntry, SyntheticCalibration};

fn config(rep: usize, subsystems: Vec<usize>, sampling: Sampling, calibration: CalibrationSource, shots: u64) -> ExperimentConfig {
    ExperimentConfig {
        representation: rep,
        subsystems,
        shots,
        sampling,
        bond_length: 0.7414,
        calibration,
        output_dir: "unused".into(),
        seed: 3,
        rank_weights: Default::default(),
    }
}

fn mean_sd(v: &[f64]) -> (f64, f64) {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64;
    (m, var.sqrt())
}

#[test]
fn noiseless_estimator_is_unbiased_across_seeds() {
    let device = DeviceModel::noiseless(16);
    for rep in Representation::ALL {
        let setup = Setup::new(0.7414, rep).unwrap();
        let fci = common::ci_oracle(&setup.model).energy;
        let plan = setup.plan(2).unwrap();
        let w = rep.width();
        let entry = PlanEntry {
            set: 0,
            sample: 0,
            blocks: vec![(0..w).collect(), (w..2 * w).collect()],
        };
        let estimates: Vec<f64> = (0..100u64)
            .map(|seed| {
                let seeds: Vec<u64> = (0..plan.groups.len() as u64).map(|g| seed * 17 + g).collect();
                simulate_sample(&setup, &plan, &device, &entry, 5_000, &seeds).unwrap().energy_per_h2()
            })
            .collect();
        let (m, sd) = mean_sd(&estimates);
        let sem = sd / 10.0;
        assert!((m - fci).abs() < 4.0 * sem, "rep {w}: mean {m} vs fci {fci}, sem {sem}");
    }
}

#[test]
fn zero_noise_run_matches_fci_for_every_n() {
    let cfg = config(
        1,
        (1..=16).collect(),
        Sampling::Random { s: 2 },
        CalibrationSource::Noiseless { n_qubits: 16 },
        20_000,
    );
    let device = DeviceModel::noiseless(16);
    let setup = Setup::new(0.7414, Representation::One).unwrap();
    let fci = common::ci_oracle(&setup.model).energy;
    let samples = run_samples(&cfg, &device).unwrap();
    for n in 1..=16 {
        let mine: Vec<_> = samples.iter().filter(|s| s.n == n).collect();
        let m = mine.iter().map(|s| s.energy_per_h2()).sum::<f64>() / mine.len() as f64;
        let se = mine.iter().map(|s| s.estimate.per_subsystem_mean_stderr().powi(2)).sum::<f64>().sqrt()
            / mine.len() as f64;
        assert!((m - fci).abs() < 4.0 * se, "N = {n}: {m} vs {fci} (se {se})");
    }
}

#[test]
fn run_records_constant_group_count_and_analysis_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let generator = SyntheticCalibration::default();
    let device = generator.generate(11).unwrap();
    let cfg = config(
        1,
        vec![1, 2, 4, 8, 16],
        Sampling::Selective { k: 1 },
        CalibrationSource::Synthetic { seed: 11, generator },
        2_000,
    );
    let manifest = run_experiment(&cfg, &device, dir.path()).unwrap();
    assert!(manifest.groups_per_n.values().all(|&g| g == 2), "{:?}", manifest.groups_per_n);

    let summary = analyze(dir.path()).unwrap();
    assert!(summary.delta_kcal_per_qubit.is_finite());
    assert!(summary.n_qubit == "unbounded" || summary.n_qubit.parse::<u64>().is_ok());
    for f in ["fig1", "fig2a", "fig2b", "fig3"] {
        assert!(dir.path().join(format!("{f}.csv")).exists());
        let svg = fs::read_to_string(dir.path().join(format!("{f}.svg"))).unwrap();
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    // CISD meets FCI at N = 1 and stays below it afterwards
    let mut rdr = csv::Reader::from_path(dir.path().join("fig2a.csv")).unwrap();
    let h = rdr.headers().unwrap().clone();
    let col = |name: &str| h.iter().position(|c| c == name).unwrap();
    let (n_col, fci_col, cisd_col) = (col("n"), col("fci_double"), col("cisd_double"));
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let n: usize = rec[n_col].parse().unwrap();
        let fci: f64 = rec[fci_col].parse().unwrap();
        let cisd: f64 = rec[cisd_col].parse().unwrap();
        if n == 1 {
            assert!((fci - cisd).abs() < 1e-10);
        } else {
            assert!(cisd < fci - 1e-6, "N = {n}: cisd {cisd} fci {fci}");
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let device = SyntheticCalibration::default().generate(2).unwrap();
    let cfg = config(
        2,
        vec![1, 4],
        Sampling::Random { s: 2 },
        CalibrationSource::Synthetic {
            seed: 2,
            generator: SyntheticCalibration::default(),
        },
        1_000,
    );
    run_experiment(&cfg, &device, a.path()).unwrap();
    run_experiment(&cfg, &device, b.path()).unwrap();
    for f in ["raw.csv", "subsystems.csv", "populations.csv", "manifest.json", "calibration.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn injected_deltas_give_reference_horizons() {
    let fit = |d: f64| RegressionResult {
        slope_delta: d,
        intercept: -700.0,
        slope_stderr: 1e-3,
        points: Vec::new(),
    };
    let rows = [
        (Representation::One, 8.474e-3, "118", "118"),
        (Representation::Two, -7.000e-3, "142", "71"),
        (Representation::Four, 1.221e-1, "8", "2"),
    ];
    for (rep, d, nq, nh) in rows {
        let s = Summary::new(rep, &fit(d));
        assert_eq!((s.n_qubit.as_str(), s.n_h2.as_str()), (nq, nh));
    }
    assert!(horizon(0.0, 1).is_unbounded());
    assert_eq!(Summary::new(Representation::One, &fit(0.0)).n_qubit, "unbounded");
}
