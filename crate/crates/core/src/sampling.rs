//! Qubit ranking and the assignment of physical qubits to subsystem blocks.
//!
//! Selective plans take the 16 best-ranked qubits and cut them into
//! `n = 16 / (N * width)` disjoint samples; the same partition is repeated
//! for each of the `k` sets, so every selected qubit contributes at every
//! system size. Random plans draw `N` disjoint blocks from the whole pool.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{DeviceModel, QubitCalibration};

/// Qubits used by the selective procedure.
pub const SELECTIVE_POOL: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankWeights {
    pub readout: f64,
    pub two_qubit: f64,
}

impl Default for RankWeights {
    fn default() -> Self {
        RankWeights {
            readout: 1.0,
            two_qubit: 1.0,
        }
    }
}

pub fn qubit_score(device: &DeviceModel, q: usize, weights: RankWeights) -> f64 {
    let readout = device.qubits()[q].mean_readout_error();
    weights.readout * readout + weights.two_qubit * device.mean_incident_pair_error(q)
}

/// Physical qubits from best to worst; ties keep index order.
pub fn rank_qubits(device: &DeviceModel, weights: RankWeights) -> Vec<usize> {
    let scores: Vec<f64> = (0..device.n_qubits()).map(|q| qubit_score(device, q, weights)).collect();
    let mut order: Vec<usize> = (0..device.n_qubits()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    order
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanEntry {
    pub set: usize,
    pub sample: usize,
    /// One block of physical qubits per subsystem.
    pub blocks: Vec<Vec<usize>>,
}

impl PlanEntry {
    pub fn physical_map(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingPlan {
    pub n_subsystems: usize,
    pub width: usize,
    pub n_samples_per_set: usize,
    pub n_sets: usize,
    pub entries: Vec<PlanEntry>,
}

impl SamplingPlan {
    /// `set,sample,subsystem,qubits` with qubits separated by spaces.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["set", "sample", "subsystem", "qubits"])?;
        for e in &self.entries {
            for (i, b) in e.blocks.iter().enumerate() {
                let qubits: Vec<String> = b.iter().map(usize::to_string).collect();
                w.write_record([e.set.to_string(), e.sample.to_string(), i.to_string(), qubits.join(" ")])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn check_shape(n_subsystems: usize, width: usize) -> Result<()> {
    if n_subsystems == 0 || width == 0 {
        return Err(Error::Plan("subsystem count and width must be positive".into()));
    }
    Ok(())
}

pub fn selective_plan(pool: &[usize], n_subsystems: usize, width: usize, k: usize) -> Result<SamplingPlan> {
    check_shape(n_subsystems, width)?;
    if pool.len() < SELECTIVE_POOL {
        return Err(Error::Plan(format!(
            "selective sampling needs {SELECTIVE_POOL} ranked qubits, pool has {}",
            pool.len()
        )));
    }
    let per_sample = n_subsystems * width;
    if per_sample > SELECTIVE_POOL || !SELECTIVE_POOL.is_multiple_of(per_sample) {
        return Err(Error::Plan(format!(
            "{n_subsystems} subsystems of {width} qubits do not divide the {SELECTIVE_POOL}-qubit pool; use a random plan"
        )));
    }
    if k == 0 {
        return Err(Error::Plan("need at least one set".into()));
    }
    let n = SELECTIVE_POOL / per_sample;
    let top = &pool[..SELECTIVE_POOL];
    let mut entries = Vec::with_capacity(n * k);
    for set in 0..k {
        for sample in 0..n {
            let chunk = &top[sample * per_sample..(sample + 1) * per_sample];
            entries.push(PlanEntry {
                set,
                sample,
                blocks: chunk.chunks(width).map(<[usize]>::to_vec).collect(),
            });
        }
    }
    Ok(SamplingPlan {
        n_subsystems,
        width,
        n_samples_per_set: n,
        n_sets: k,
        entries,
    })
}

pub fn random_plan(pool: &[usize], n_subsystems: usize, width: usize, s: usize, seed: u64) -> Result<SamplingPlan> {
    check_shape(n_subsystems, width)?;
    let need = n_subsystems * width;
    if pool.len() < need {
        return Err(Error::Plan(format!("pool of {} qubits cannot hold {need}", pool.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..s)
        .map(|sample| {
            let drawn: Vec<usize> = pool.choose_multiple(&mut rng, need).copied().collect();
            PlanEntry {
                set: 0,
                sample,
                blocks: drawn.chunks(width).map(<[usize]>::to_vec).collect(),
            }
        })
        .collect();
    Ok(SamplingPlan {
        n_subsystems,
        width,
        n_samples_per_set: s,
        n_sets: 1,
        entries,
    })
}

/// Log-normal calibration generator. Every pair of qubits gets a two-qubit
/// error since blocks are placed without regard to connectivity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SyntheticCalibration {
    pub n_qubits: usize,
    pub readout_median: f64,
    pub single_qubit_median: f64,
    pub two_qubit_median: f64,
    /// Standard deviation of the underlying normal.
    pub sigma: f64,
}

impl Default for SyntheticCalibration {
    fn default() -> Self {
        SyntheticCalibration {
            n_qubits: 20,
            readout_median: 1e-2,
            single_qubit_median: 3e-4,
            two_qubit_median: 3e-3,
            sigma: 0.8,
        }
    }
}

/// Drawn probabilities are capped here; anything past it is a broken qubit anyway.
const MAX_ERROR: f64 = 0.5;

impl SyntheticCalibration {
    pub fn generate(&self, seed: u64) -> Result<DeviceModel> {
        for (name, v) in [
            ("readout_median", self.readout_median),
            ("single_qubit_median", self.single_qubit_median),
            ("two_qubit_median", self.two_qubit_median),
        ] {
            if !(v > 0.0 && v <= MAX_ERROR) {
                return Err(Error::config(name, format!("{v} is not in (0, {MAX_ERROR}]")));
            }
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::config("sigma", format!("{} is not a non-negative number", self.sigma)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |median: f64, rng: &mut ChaCha8Rng| -> f64 {
            let d = LogNormal::new(median.ln(), self.sigma).expect("validated parameters");
            d.sample(rng).min(MAX_ERROR)
        };
        let qubits = (0..self.n_qubits)
            .map(|_| QubitCalibration {
                readout_p10: draw(self.readout_median, &mut rng),
                readout_p01: draw(self.readout_median, &mut rng),
                single_qubit_error: draw(self.single_qubit_median, &mut rng),
            })
            .collect();
        let mut device = DeviceModel::new(qubits);
        for a in 0..self.n_qubits {
            for b in a + 1..self.n_qubits {
                device.set_pair_error(a, b, draw(self.two_qubit_median, &mut rng))?;
            }
        }
        Ok(device)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn uniform(n: usize) -> DeviceModel {
        let q = QubitCalibration {
            readout_p10: 0.01,
            readout_p01: 0.01,
            single_qubit_error: 1e-3,
        };
        DeviceModel::uniform(n, q, 5e-3)
    }

    #[test]
    fn uniform_device_ranks_by_index() {
        assert_eq!(rank_qubits(&uniform(18), RankWeights::default()), (0..18).collect::<Vec<_>>());
    }

    #[test]
    fn bad_readout_ranks_last() {
        let mut d = uniform(16);
        d.qubit_mut(5).readout_p10 = 0.5;
        let r = rank_qubits(&d, RankWeights::default());
        assert_eq!(*r.last().unwrap(), 5);
    }

    #[test]
    fn ranking_agrees_with_pairwise_comparison() {
        let gen = SyntheticCalibration::default();
        for seed in 0..20 {
            let d = gen.generate(seed).unwrap();
            let r = rank_qubits(&d, RankWeights::default());
            let score = |q: usize| {
                let c = d.qubits()[q];
                let pairs: Vec<f64> = (0..d.n_qubits())
                    .filter(|&o| o != q)
                    .map(|o| d.pair_error(q, o).unwrap())
                    .collect();
                (c.readout_p10 + c.readout_p01) / 2.0 + pairs.iter().sum::<f64>() / pairs.len() as f64
            };
            for i in 0..r.len() {
                for j in i + 1..r.len() {
                    let (a, b) = (r[i], r[j]);
                    assert!(score(a) < score(b) || (score(a) == score(b) && a < b));
                }
            }
        }
    }

    #[test]
    fn selective_counts_follow_sixteen_over_n() {
        let pool: Vec<usize> = (0..20).rev().collect();
        for (n_sub, expect) in [(2, 8), (4, 4), (8, 2), (16, 1)] {
            let p = selective_plan(&pool, n_sub, 1, 3).unwrap();
            assert_eq!(p.n_samples_per_set, expect);
            assert_eq!(p.entries.len(), expect * 3);
        }
        let p = selective_plan(&pool, 8, 2, 5).unwrap();
        assert_eq!((p.n_samples_per_set, p.entries.len()), (1, 5));
    }

    #[test]
    fn selective_sets_partition_the_top_sixteen() {
        let pool: Vec<usize> = (0..20).map(|i| (i * 7) % 20).collect();
        for (n_sub, width) in [(1, 1), (2, 1), (4, 1), (16, 1), (1, 2), (2, 2), (4, 4)] {
            let p = selective_plan(&pool, n_sub, width, 3).unwrap();
            for set in 0..3 {
                let used: Vec<usize> = p
                    .entries
                    .iter()
                    .filter(|e| e.set == set)
                    .flat_map(PlanEntry::physical_map)
                    .collect();
                let unique: BTreeSet<usize> = used.iter().copied().collect();
                assert_eq!(used.len(), 16);
                assert_eq!(unique, pool[..16].iter().copied().collect());
            }
            assert!(p.entries.iter().all(|e| e.blocks.len() == n_sub && e.blocks.iter().all(|b| b.len() == width)));
        }
    }

    #[test]
    fn selective_rejects_non_divisible() {
        let pool: Vec<usize> = (0..16).collect();
        assert!(selective_plan(&pool, 3, 1, 3).is_err());
        assert!(selective_plan(&pool, 8, 4, 3).is_err());
        assert!(selective_plan(&pool[..15], 1, 1, 3).is_err());
    }

    #[test]
    fn random_plan_blocks_are_disjoint_and_deterministic() {
        let pool: Vec<usize> = (0..20).collect();
        let a = random_plan(&pool, 3, 2, 50, 9).unwrap();
        assert_eq!(a, random_plan(&pool, 3, 2, 50, 9).unwrap());
        assert_ne!(a, random_plan(&pool, 3, 2, 50, 10).unwrap());
        assert_eq!(a.entries.len(), 50);
        for e in &a.entries {
            let m = e.physical_map();
            assert_eq!(m.iter().collect::<BTreeSet<_>>().len(), 6);
        }
        let whole = random_plan(&pool[..4], 2, 2, 10, 1).unwrap();
        for e in &whole.entries {
            let mut m = e.physical_map();
            m.sort();
            assert_eq!(m, vec![0, 1, 2, 3]);
        }
        assert!(random_plan(&pool[..3], 2, 2, 1, 0).is_err());
    }

    #[test]
    fn random_selection_is_uniform() {
        let pool: Vec<usize> = (0..16).collect();
        let draws = 10_000;
        let p = random_plan(&pool, 1, 1, draws, 42).unwrap();
        let mut freq = [0usize; 16];
        for e in &p.entries {
            freq[e.blocks[0][0]] += 1;
        }
        let expect = draws as f64 / 16.0;
        let sd = (draws as f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
        for f in freq {
            assert!((f as f64 - expect).abs() < 4.0 * sd, "{f}");
        }
    }

    #[test]
    fn synthetic_calibration_is_seeded_and_all_to_all() {
        let gen = SyntheticCalibration::default();
        let a = gen.generate(1).unwrap();
        assert_eq!(a, gen.generate(1).unwrap());
        assert_ne!(a, gen.generate(2).unwrap());
        assert_eq!(a.n_qubits(), 20);
        assert_eq!(a.pair_errors().count(), 190);
        a.validate().unwrap();
        assert_eq!(SyntheticCalibration { n_qubits: 0, ..gen }.generate(0).unwrap().n_qubits(), 0);
        // sample median of the generator's distribution sits near the configured median
        let mut r: Vec<f64> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let ln = LogNormal::new(gen.readout_median.ln(), gen.sigma).unwrap();
            (0..2001).map(|_| ln.sample(&mut rng)).collect()
        };
        r.sort_by(f64::total_cmp);
        assert!((r[1000] / gen.readout_median - 1.0).abs() < 0.1);
        let bad = SyntheticCalibration {
            readout_median: 0.0,
            ..gen
        };
        assert!(bad.generate(0).is_err());
    }

    #[test]
    fn plan_csv_lists_every_block() {
        let pool: Vec<usize> = (0..16).collect();
        let p = selective_plan(&pool, 8, 2, 1).unwrap();
        let text = p.to_csv().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "set,sample,subsystem,qubits");
        assert_eq!(lines[1], "0,0,0,0 1");
        assert_eq!(lines.len(), 9);
    }
}
