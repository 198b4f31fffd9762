//! Experiment configuration, read from TOML.
//!
//! ```toml
//! representation = 1            # qubits per H2: 1, 2 or 4
//! subsystems = [2, 4, 8, 16]
//! shots = 100000                # per measurement group
//! bond_length = 0.7414          # angstrom
//! output_dir = "runs/rep1"
//! seed = 7
//!
//! [sampling]
//! mode = "selective"            # or "random" with `s = 50`
//! k = 3
//!
//! [calibration]
//! source = "synthetic"          # or "file" with `path`, or "noiseless"
//! seed = 11
//! n_qubits = 20
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::molecule::Representation;
use crate::noise::DeviceModel;
use crate::sampling::{RankWeights, SyntheticCalibration, SELECTIVE_POOL};
use crate::units::DEFAULT_BOND_LENGTH;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum Sampling {
    Selective { k: usize },
    Random { s: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum CalibrationSource {
    Synthetic {
        seed: u64,
        #[serde(flatten)]
        generator: SyntheticCalibration,
    },
    File {
        path: PathBuf,
    },
    Noiseless {
        #[serde(default = "default_noiseless_qubits")]
        n_qubits: usize,
    },
}

fn default_noiseless_qubits() -> usize {
    SELECTIVE_POOL
}

impl CalibrationSource {
    /// Relative file paths resolve against `base`.
    pub fn load(&self, base: &Path) -> Result<DeviceModel> {
        let device = match self {
            CalibrationSource::Synthetic { seed, generator } => generator.generate(*seed)?,
            CalibrationSource::File { path } => {
                let path = base.join(path);
                let text = std::fs::read_to_string(&path).map_err(|e| Error::RunFile {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                DeviceModel::from_json(&text)?
            }
            CalibrationSource::Noiseless { n_qubits } => DeviceModel::noiseless(*n_qubits),
        };
        device.validate()?;
        Ok(device)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub representation: usize,
    pub subsystems: Vec<usize>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    pub sampling: Sampling,
    #[serde(default = "default_bond_length")]
    pub bond_length: f64,
    pub calibration: CalibrationSource,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub rank_weights: RankWeights,
}

fn default_shots() -> u64 {
    100_000
}

fn default_bond_length() -> f64 {
    DEFAULT_BOND_LENGTH
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| {
            // the span may cover the key or the value; the key opens the line
            let field = e.span().map_or_else(String::new, |s| {
                let start = text[..s.start].rfind('\n').map_or(0, |i| i + 1);
                let line = text[start..].lines().next().unwrap_or("");
                match line.split_once('=') {
                    Some((key, _)) => key.trim().to_string(),
                    None => String::new(),
                }
            });
            Error::Config {
                field: if field.is_empty() { "<file>".into() } else { field },
                message: e.message().to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn representation(&self) -> Result<Representation> {
        Representation::from_width(self.representation)
            .map_err(|_| Error::config("representation", format!("{} is not one of 1, 2, 4", self.representation)))
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.representation()?;
        if self.subsystems.is_empty() {
            return Err(Error::config("subsystems", "list is empty"));
        }
        for &n in &self.subsystems {
            if n == 0 || n * rep.width() > SELECTIVE_POOL {
                return Err(Error::config(
                    "subsystems",
                    format!("{n} molecules of {} qubits do not fit in {SELECTIVE_POOL} qubits", rep.width()),
                ));
            }
            if matches!(self.sampling, Sampling::Selective { .. }) && !SELECTIVE_POOL.is_multiple_of(n * rep.width()) {
                return Err(Error::config(
                    "subsystems",
                    format!("selective sampling needs N x width to divide {SELECTIVE_POOL}, got N = {n}; use mode = \"random\""),
                ));
            }
        }
        let mut sorted = self.subsystems.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.subsystems.len() {
            return Err(Error::config("subsystems", "contains duplicates"));
        }
        if self.shots == 0 {
            return Err(Error::config("shots", "must be at least 1"));
        }
        match self.sampling {
            Sampling::Selective { k: 0 } => return Err(Error::config("sampling.k", "must be at least 1")),
            Sampling::Random { s: 0 } => return Err(Error::config("sampling.s", "must be at least 1")),
            _ => {}
        }
        if !(self.bond_length.is_finite() && self.bond_length > 0.0) {
            return Err(Error::config("bond_length", format!("{} is not a positive length", self.bond_length)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
representation = 1
subsystems = [2, 4, 8, 16]
output_dir = "out"
seed = 5

[sampling]
mode = "selective"
k = 3

[calibration]
source = "synthetic"
seed = 11
"#;

    #[test]
    fn defaults_fill_in() {
        let c = ExperimentConfig::from_toml(BASIC).unwrap();
        assert_eq!(c.shots, 100_000);
        assert_eq!(c.bond_length, DEFAULT_BOND_LENGTH);
        assert_eq!(c.sampling, Sampling::Selective { k: 3 });
        match &c.calibration {
            CalibrationSource::Synthetic { seed, generator } => {
                assert_eq!(*seed, 11);
                assert_eq!(*generator, SyntheticCalibration::default());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(ExperimentConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn synthetic_parameters_override() {
        let text = BASIC.replace("seed = 11", "seed = 11\nn_qubits = 24\nsigma = 0.3");
        let c = ExperimentConfig::from_toml(&text).unwrap();
        let CalibrationSource::Synthetic { generator, .. } = c.calibration else {
            panic!()
        };
        assert_eq!(generator.n_qubits, 24);
        assert_eq!(generator.sigma, 0.3);
    }

    fn field_of(text: &str) -> String {
        match ExperimentConfig::from_toml(text) {
            Err(Error::Config { field, .. }) => field,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_fields_are_named() {
        assert_eq!(field_of(&BASIC.replace("[2, 4, 8, 16]", "[]")), "subsystems");
        assert_eq!(field_of(&BASIC.replace("[2, 4, 8, 16]", "[3]")), "subsystems");
        assert_eq!(field_of(&BASIC.replace("representation = 1", "representation = 3")), "representation");
        assert_eq!(field_of(&BASIC.replace("k = 3", "k = 0")), "sampling.k");
        assert_eq!(field_of(&format!("shots = 0\n{BASIC}")), "shots");
        assert_eq!(field_of(&format!("bond_length = -1.0\n{BASIC}")), "bond_length");
        assert_eq!(field_of(&BASIC.replace("seed = 5", "seed = \"x\"")), "seed");
    }

    #[test]
    fn random_mode_allows_any_fitting_n() {
        let text = BASIC
            .replace("[2, 4, 8, 16]", "[3, 5]")
            .replace("mode = \"selective\"\nk = 3", "mode = \"random\"\ns = 50");
        let c = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(c.sampling, Sampling::Random { s: 50 });
    }

    #[test]
    fn noiseless_and_file_sources() {
        let text = BASIC.replace("source = \"synthetic\"\nseed = 11", "source = \"noiseless\"");
        let c = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(c.calibration.load(Path::new(".")).unwrap(), DeviceModel::noiseless(16));

        let dir = std::env::temp_dir().join(format!("sizecons-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let dev = SyntheticCalibration::default().generate(4).unwrap();
        std::fs::write(dir.join("cal.json"), dev.to_json().unwrap()).unwrap();
        let file = CalibrationSource::File { path: "cal.json".into() };
        assert_eq!(file.load(&dir).unwrap(), dev);
        let missing = CalibrationSource::File { path: "nope.json".into() };
        assert!(matches!(missing.load(&dir), Err(Error::RunFile { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
