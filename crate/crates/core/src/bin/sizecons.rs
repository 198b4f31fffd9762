use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sizecons::config::ExperimentConfig;
use sizecons::experiment::{analyze, reference_table, resolve, run_experiment, to_csv_string};
use sizecons::noise::DeviceModel;
use sizecons::sampling::{qubit_score, rank_qubits, RankWeights, SyntheticCalibration};
use sizecons::units::DEFAULT_BOND_LENGTH;
use sizecons::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Size-consistency benchmark for N non-interacting H2 molecules on a noisy device")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Write figures and the slope/horizon summary for a finished run.
    Analyze { dir: PathBuf },
    /// Print HF, FCI and CISD curves for 1..=N molecules as CSV.
    Reference {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_BOND_LENGTH)]
        bond_length: f64,
    },
    /// Generate or inspect device calibration files.
    Calibration {
        #[command(subcommand)]
        command: CalibrationCommand,
    },
}

#[derive(Subcommand)]
enum CalibrationCommand {
    /// Print a synthetic log-normal calibration as JSON.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        n_qubits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank the qubits of a calibration file, best first.
    Rank {
        file: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        readout_weight: f64,
        #[arg(long, default_value_t = 1.0)]
        two_qubit_weight: f64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::RunFile {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, output_dir } => {
            let cfg = ExperimentConfig::from_toml(&read(&config)?)?;
            let device = cfg.calibration.load(config.parent().unwrap_or(Path::new(".")))?;
            let out = output_dir.unwrap_or_else(|| resolve(&config, &cfg.output_dir));
            let m = run_experiment(&cfg, &device, &out)?;
            eprintln!(
                "{} samples, {} measurement groups per N, written to {}",
                m.items.len(),
                m.group_bases.len(),
                out.display()
            );
        }
        Command::Analyze { dir } => {
            let s = analyze(&dir)?;
            println!("{}", to_csv_string(&[s])?.trim_end());
        }
        Command::Reference { n_max, bond_length } => {
            print!("{}", to_csv_string(&reference_table(bond_length, n_max)?)?);
        }
        Command::Calibration { command } => match command {
            CalibrationCommand::Generate { seed, n_qubits, out } => {
                let gen = SyntheticCalibration {
                    n_qubits,
                    ..Default::default()
                };
                let json = gen.generate(seed)?.to_json()? + "\n";
                match out {
                    Some(p) => std::fs::write(&p, json)?,
                    None => print!("{json}"),
                }
            }
            CalibrationCommand::Rank {
                file,
                readout_weight,
                two_qubit_weight,
            } => {
                let device = DeviceModel::from_json(&read(&file)?)?;
                device.validate()?;
                let w = RankWeights {
                    readout: readout_weight,
                    two_qubit: two_qubit_weight,
                };
                println!("rank,qubit,score");
                for (i, q) in rank_qubits(&device, w).into_iter().enumerate() {
                    println!("{i},{q},{:.6e}", qubit_score(&device, q, w));
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::FAILURE
        }
    }
}
