//! Size-consistency benchmark for noisy quantum devices.
//!
//! Prepares `N` non-interacting H2 ground states with shallow circuits,
//! simulates them under a per-qubit calibrated noise model, and measures how
//! the energy and determinant populations per molecule scale with `N`.

pub mod analysis;
pub mod circuit;
pub mod config;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod molecule;
pub mod noise;
pub mod pauli;
pub mod plot;
pub mod sampling;
pub mod state_prep;
pub mod statevector;
pub mod tomography;
pub mod units;

pub use error::{Error, Result};
