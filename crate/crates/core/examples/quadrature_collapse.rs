//! Collapse and revival of the field quadrature ⟨X(t)⟩, printed as a coarse
//! text trace. Pass μ as the first argument.

use dunkl_kerr::coherent_state::{build_state, TruncationPolicy};
use dunkl_kerr::dynamics::{evaluate_series, Channel, TimeGrid};
use dunkl_kerr::ModelParams;

fn main() -> dunkl_kerr::Result<()> {
    let mu: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.5);
    let state = build_state(
        &ModelParams::default().with_mu(mu),
        &TruncationPolicy::default(),
    )?;
    let grid = TimeGrid::new(0.0, 2.0 * std::f64::consts::PI, 2048)?;
    let series = evaluate_series(&state, &grid, &[Channel::Quadrature])?;
    let x = series
        .channel(Channel::Quadrature)
        .expect("requested channel");

    println!("mu = {mu}, N_cut = {}", state.n_cut());
    // envelope: max |X| over each bin of 32 samples
    for (chunk_t, chunk_x) in series.times.chunks(32).zip(x.chunks(32)) {
        let peak = chunk_x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let bar = "#".repeat((peak * 20.0).round() as usize);
        println!("t = {:5.2}  {peak:6.3}  {bar}", chunk_t[0]);
    }
    Ok(())
}
