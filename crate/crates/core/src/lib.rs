//! Exact simulator for the Dunkl-deformed anharmonic (Kerr) oscillator.
//!
//! The Hamiltonian `H = ω a†a + (λ/2) a†² a²`, built from Dunkl ladder
//! operators, is diagonal in the Dunkl number basis. Its spectrum splits
//! into even and odd parity sectors, and the dynamics of a superposed
//! even+odd Dunkl coherent state can be written as closed-form series.
//!
//! * [`dunkl_algebra`]: Dunkl integers, factorials, ladder and su(1,1) actions.
//! * [`spectrum`]: parity-split energy levels and spectral gaps.
//! * [`coherent_state`]: truncated coherent-state coefficients.
//! * [`dynamics`]: quadrature, fidelity and squeezing time series.
//! * [`matrix_oracle`]: dense truncated-Fock matrices used as an independent check.
//! * [`cli`]: the `dunkl-kerr` command-line front end.

pub mod cli;
pub mod coherent_state;
pub mod dunkl_algebra;
pub mod dynamics;
mod error;
pub mod matrix_oracle;
pub mod spectrum;
pub mod summation;

pub use coherent_state::{build_state, probability, CoherentState, TruncationPolicy};
pub use dunkl_algebra::{BargmannIndex, ModelParams, Parity};
pub use dynamics::{Channel, TimeGrid, TimeSeries};
pub use error::{Error, Result};
pub use matrix_oracle::OperatorMatrix;
