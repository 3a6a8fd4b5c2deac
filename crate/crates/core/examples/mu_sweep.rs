//! Programmatic sweep over μ, writing one CSV per value plus an index, the
//! same files `dunkl-kerr sweep` produces.
//!
//! ```bash
//! cargo run --example mu_sweep -- /tmp/mu_sweep
//! ```

use std::path::PathBuf;

use dunkl_kerr::cli::{cmd_sweep, ExperimentConfig, SweepSpec};

fn main() -> dunkl_kerr::Result<()> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("dunkl_mu_sweep"));
    let spec: SweepSpec = "mu=0,0.25,0.5,1.0".parse()?;
    let index = cmd_sweep(&ExperimentConfig::default(), &spec, &dir)?;
    for entry in &index.entries {
        println!(
            "{} = {:<5} -> {}",
            index.parameter.name(),
            entry.value,
            dir.join(&entry.file).display()
        );
    }
    Ok(())
}
