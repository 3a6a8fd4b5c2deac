//! Survival probability F(t) for a few deformation strengths. With ω = 20,
//! λ = 1 the curves return to 1 at t = 2π whenever 2μ is an integer, and
//! μ = 1/2 adds a revival at t = π. μ = 1/4 shows the revival is lost
//! otherwise.

use std::f64::consts::PI;

use dunkl_kerr::coherent_state::{build_state, TruncationPolicy};
use dunkl_kerr::dynamics::survival_probability;
use dunkl_kerr::ModelParams;

fn main() -> dunkl_kerr::Result<()> {
    let checkpoints = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0, 2.0 * PI];
    print!("{:>6}", "mu");
    for t in checkpoints {
        print!("  F({:.3})", t);
    }
    println!();
    for mu in [0.0, 0.25, 0.5, 1.0] {
        let state = build_state(
            &ModelParams::default().with_mu(mu),
            &TruncationPolicy::default(),
        )?;
        print!("{mu:>6.2}");
        for t in checkpoints {
            print!("  {:>8.5}", survival_probability(&state, t));
        }
        println!();
    }
    Ok(())
}
