//! Energy ladder of the deformed Kerr oscillator next to the undeformed one.
//!
//! ```bash
//! cargo run --example spectrum -- 0.5
//! ```

use dunkl_kerr::dunkl_algebra::bargmann_index;
use dunkl_kerr::spectrum::{energy, neighbor_gap, undeformed_energy};
use dunkl_kerr::{ModelParams, Parity};

fn main() -> dunkl_kerr::Result<()> {
    let mu: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.5);
    let params = ModelParams::default().with_mu(mu);

    println!(
        "mu = {mu}, omega = {}, lambda = {}",
        params.omega, params.lambda
    );
    println!(
        "Bargmann index: even k = {:.3}, odd k = {:.3}",
        bargmann_index(Parity::Even, mu).k,
        bargmann_index(Parity::Odd, mu).k
    );
    println!(
        "{:>3} {:>12} {:>12} {:>10}",
        "n", "E_n", "E_n (mu=0)", "gap"
    );
    for n in 0..=12 {
        println!(
            "{n:>3} {:>12.4} {:>12.4} {:>10.4}",
            energy(n, &params),
            undeformed_energy(n, params.omega, params.lambda),
            neighbor_gap(n, &params)
        );
    }
    Ok(())
}
