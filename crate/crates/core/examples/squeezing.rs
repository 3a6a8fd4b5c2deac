//! Quadrature variance versus the standard quantum limit of 1/2. Reports the
//! deepest dip for each (μ, α) pair and where it occurs.

use dunkl_kerr::coherent_state::{build_state, TruncationPolicy};
use dunkl_kerr::dynamics::{evaluate_series, Channel, TimeGrid};
use dunkl_kerr::ModelParams;

const SQL: f64 = 0.5;

fn main() -> dunkl_kerr::Result<()> {
    let grid = TimeGrid::new(0.0, 2.0 * std::f64::consts::PI, 4096)?;
    println!(
        "{:>5} {:>5} {:>10} {:>8} {:>9}",
        "mu", "alpha", "min var", "at t", "squeezed"
    );
    for mu in [0.0, 0.5, 1.0] {
        for alpha in [1.0, 2.0, 3.0] {
            let params = ModelParams::new(mu, 20.0, 1.0, alpha)?;
            let state = build_state(&params, &TruncationPolicy::default())?;
            let series = evaluate_series(&state, &grid, &[Channel::Variance])?;
            let var = series
                .channel(Channel::Variance)
                .expect("requested channel");
            let (i, v) = var
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("non-empty grid");
            let squeezed = var.iter().filter(|v| **v < SQL).count();
            println!(
                "{mu:>5.2} {alpha:>5.1} {v:>10.4} {:>8.4} {squeezed:>9}",
                series.times[i]
            );
        }
    }
    Ok(())
}
