//! Thermodynamic formalism on one-dimensional shift spaces.
//!
//! Shift spaces are given by labelled graphs (or forbidden-word lists) and
//! carry finite-range translation-covariant potentials. The crate computes
//! finite-volume and limiting pressure, equilibrium measures with their
//! cylinder probabilities, splices points together through connecting paths,
//! pushes presentations through sliding block codes, and checks the weak-Gibbs
//! estimate and the partition-function inequalities behind it on small volumes.

pub mod bundled;
pub mod error;
pub mod io;
pub mod measure;
pub mod numeric;
pub mod potential;
pub mod pressure;
pub mod shift;
pub mod verify;

pub use error::{Error, Result};
pub use measure::{empirical_pairing, energy_density_gap, equilibrium_measure, EmpiricalPairing, RPFMeasure};
pub use potential::{indicator_potential, NormReport, Potential};
pub use pressure::{
    brute_partition, build_transfer, finite_pressure, perron, pressure_limit, Perron,
    PressureEstimate, TransferSystem,
};
