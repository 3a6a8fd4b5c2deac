//! Even and odd cat-like components of the coherent superposition. Each
//! sector alone carries no mean field, but its fidelity still revives.

use dunkl_kerr::coherent_state::{build_state, TruncationPolicy};
use dunkl_kerr::dynamics::{k0_expectation, quadrature_expectation, survival_probability};
use dunkl_kerr::{ModelParams, Parity};

fn main() -> dunkl_kerr::Result<()> {
    let full = build_state(
        &ModelParams::default().with_mu(0.5),
        &TruncationPolicy::default(),
    )?;
    for (label, state) in [
        ("full", full.clone()),
        ("even", full.project_parity(Parity::Even)?),
        ("odd", full.project_parity(Parity::Odd)?),
    ] {
        println!(
            "{label:<5} <K0> = {:.4}  X(0.7) = {:+.3e}  F(pi) = {:.4}",
            k0_expectation(&state),
            quadrature_expectation(&state, 0.7),
            survival_probability(&state, std::f64::consts::PI)
        );
    }
    Ok(())
}
