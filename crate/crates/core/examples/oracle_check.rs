//! Build the truncated operator matrices, check the algebra, and compare the
//! closed-form observables with brute-force matrix expectations.

use dunkl_kerr::coherent_state::{build_state, TruncationPolicy};
use dunkl_kerr::dynamics::{quadrature_expectation, quadrature_variance, survival_probability};
use dunkl_kerr::matrix_oracle::{check_algebra, MatrixOracle};
use dunkl_kerr::ModelParams;

fn main() -> dunkl_kerr::Result<()> {
    let mu = 0.5;
    let report = check_algebra(32, mu)?;
    println!("algebra at dim {} (mu = {mu}):", report.dim);
    for (name, dev) in &report.deviations {
        println!("  {name:<36} {dev:.2e}");
    }

    let state = build_state(
        &ModelParams::default().with_mu(mu),
        &TruncationPolicy::default(),
    )?;
    let oracle = MatrixOracle::new(&state)?;
    println!("\noracle dim {} (N_cut = {})", oracle.dim(), state.n_cut());
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "dX", "dF", "dVar");
    for t in [0.0, 0.5, 1.0, 2.0, std::f64::consts::PI, 5.0] {
        println!(
            "{t:>6.3} {:>12.2e} {:>12.2e} {:>12.2e}",
            (quadrature_expectation(&state, t) - oracle.quadrature(t)?).abs(),
            (survival_probability(&state, t) - oracle.fidelity(t)?).abs(),
            (quadrature_variance(&state, t) - oracle.variance(t)?).abs()
        );
    }
    Ok(())
}
