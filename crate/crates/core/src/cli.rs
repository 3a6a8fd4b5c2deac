//! Command-line front end: `spectrum`, `evolve`, `verify` and `sweep`.
//!
//! Commands are plain functions over typed configurations so they can be
//! driven from tests and examples; [`run`] only parses arguments and routes
//! output. Floating-point values in CSV are written with 17 significant
//! digits, JSON uses the shortest round-trip representation.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherent_state::{build_state, CoherentState, TruncationPolicy};
use crate::dunkl_algebra::{ladder_down_amp, ModelParams, Parity};
use crate::dynamics::{
    evaluate_series, k0_expectation, quadrature_expectation, quadrature_variance,
    survival_probability, Channel, TimeGrid, TimeSeries,
};
use crate::error::{Error, Result};
use crate::matrix_oracle::{build_hamiltonian, check_algebra_with, MatrixOracle, RELATIONS};
use crate::spectrum::energy;

pub const ALGEBRA_TOL: f64 = 1e-12;
pub const SPECTRAL_TOL: f64 = 1e-10;
pub const NORMALIZATION_TOL: f64 = 1e-12;
pub const EIGENSTATE_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-8;
pub const K0_TOL: f64 = 1e-10;
/// Highest level compared in the spectral-match check.
pub const SPECTRAL_N_MAX: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Everything needed to reproduce one time-series run. The output path is
/// not part of the serialized record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub policy: TruncationPolicy,
    pub channels: Vec<Channel>,
    pub output_format: OutputFormat,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::default(),
            grid: TimeGrid::default(),
            policy: TruncationPolicy::default(),
            channels: vec![Channel::Quadrature, Channel::Fidelity, Channel::Variance],
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.grid.validate()?;
        self.policy.validate()?;
        if self.channels.is_empty() {
            return Err(Error::Config("at least one channel is required".into()));
        }
        Ok(())
    }

    pub fn build_state(&self) -> Result<CoherentState> {
        self.validate()?;
        build_state(&self.params, &self.policy)
    }
}

/// JSON document written by `evolve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub meta: ExperimentConfig,
    pub data: TimeSeries,
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub parity: i8,
    pub energy: f64,
    /// `E_n - E_{n-1}`; absent for the ground state.
    pub delta: Option<f64>,
}

pub fn cmd_spectrum(params: &ModelParams, n_max: usize) -> Result<Vec<SpectrumRow>> {
    params.validate()?;
    Ok((0..=n_max)
        .map(|n| {
            let e = energy(n, params);
            SpectrumRow {
                n,
                parity: Parity::of(n).as_i8(),
                energy: e,
                delta: (n > 0).then(|| e - energy(n - 1, params)),
            }
        })
        .collect())
}

#[derive(Serialize)]
struct SpectrumDocument<'a> {
    params: &'a ModelParams,
    n_max: usize,
    levels: &'a [SpectrumRow],
}

pub fn render_spectrum(
    params: &ModelParams,
    rows: &[SpectrumRow],
    format: OutputFormat,
) -> Result<String> {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("n,parity,energy,delta\n");
            for r in rows {
                let delta = r.delta.map(fmt_f64).unwrap_or_default();
                writeln!(out, "{},{},{},{}", r.n, r.parity, fmt_f64(r.energy), delta).unwrap();
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let doc = SpectrumDocument {
                params,
                n_max: rows.len().saturating_sub(1),
                levels: rows,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
    }
}

// ---------------------------------------------------------------------------
// evolve

pub fn cmd_evolve(config: &ExperimentConfig) -> Result<TimeSeries> {
    let state = config.build_state()?;
    evaluate_series(&state, &config.grid, &config.channels)
}

/// 17 significant digits, exponent form, locale independent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_series(config: &ExperimentConfig, series: &TimeSeries) -> Result<String> {
    match config.output_format {
        OutputFormat::Csv => {
            let mut out = String::from("t");
            for name in series.channels.keys() {
                out.push(',');
                out.push_str(name);
            }
            out.push('\n');
            for (i, t) in series.times.iter().enumerate() {
                out.push_str(&fmt_f64(*t));
                for values in series.channels.values() {
                    out.push(',');
                    out.push_str(&fmt_f64(values[i]));
                }
                out.push('\n');
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let doc = SeriesDocument {
                meta: config.clone(),
                data: series.clone(),
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
    }
}

// ---------------------------------------------------------------------------
// verify

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub params: ModelParams,
    pub policy: TruncationPolicy,
    pub grid: TimeGrid,
    /// Dimension used for the algebra checks.
    pub dim: usize,
    /// Fault injection: shifts the closed-form energies before the spectral
    /// comparison. Only useful for testing the failure path.
    #[serde(skip)]
    pub corrupt_energy: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::default(),
            policy: TruncationPolicy::default(),
            grid: TimeGrid::new(0.0, 2.0 * std::f64::consts::PI, 64).unwrap(),
            dim: 32,
            corrupt_energy: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn check(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        max_deviation,
        tolerance,
        // NaN must fail
        pass: max_deviation <= tolerance,
    }
}

fn max_abs_diff(
    times: &[f64],
    series: impl Fn(f64) -> f64 + Sync,
    oracle: impl Fn(f64) -> Result<f64> + Sync,
) -> Result<f64> {
    let diffs: Vec<f64> = times
        .par_iter()
        .map(|&t| Ok((series(t) - oracle(t)?).abs()))
        .collect::<Result<_>>()?;
    Ok(diffs.into_iter().fold(0.0, f64::max))
}

/// Runs the algebra suite, the spectral match, state sanity checks and the
/// series-versus-matrix comparison on `config.grid`.
pub fn cmd_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    config.params.validate()?;
    config.grid.validate()?;
    let params = &config.params;
    let mut checks = Vec::new();

    let algebra = check_algebra_with(config.dim, params)?;
    for name in RELATIONS {
        checks.push(check(
            format!("algebra.{name}"),
            algebra.deviations[name],
            ALGEBRA_TOL,
        ));
    }

    let h = build_hamiltonian(SPECTRAL_N_MAX + 4, params)?;
    let spectral = (0..=SPECTRAL_N_MAX)
        .map(|n| {
            let mut e = energy(n, params);
            if config.corrupt_energy {
                e += 1e-3 * (1.0 + e.abs());
            }
            (e - h.get(n, n).re).abs() / e.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    checks.push(check("spectral_match", spectral, SPECTRAL_TOL));

    let state = build_state(params, &config.policy)?;
    let total: f64 = state.probabilities().iter().sum();
    checks.push(check(
        "state_normalization",
        (1.0 - total).abs(),
        NORMALIZATION_TOL,
    ));

    let psi = state.amplitudes();
    let eigen = (0..state.n_cut())
        .map(|n| (ladder_down_amp(n + 1, params.mu) * psi[n + 1] - params.alpha * psi[n]).abs())
        .fold(0.0, f64::max);
    checks.push(check("coherent_eigenstate", eigen, EIGENSTATE_TOL));

    let oracle = MatrixOracle::new(&state)?;
    let times = config.grid.times();
    checks.push(check(
        "oracle.quadrature",
        max_abs_diff(
            &times,
            |t| quadrature_expectation(&state, t),
            |t| oracle.quadrature(t),
        )?,
        ORACLE_TOL,
    ));
    checks.push(check(
        "oracle.fidelity",
        max_abs_diff(
            &times,
            |t| survival_probability(&state, t),
            |t| oracle.fidelity(t),
        )?,
        ORACLE_TOL,
    ));
    checks.push(check(
        "oracle.variance",
        max_abs_diff(
            &times,
            |t| quadrature_variance(&state, t),
            |t| oracle.variance(t),
        )?,
        ORACLE_TOL,
    ));
    checks.push(check(
        "oracle.k0_constant",
        (k0_expectation(&state) - oracle.kzero()?).abs(),
        K0_TOL,
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        config: config.clone(),
        checks,
        pass,
    })
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    Mu,
    Alpha,
    Omega,
    Lambda,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Mu => "mu",
            SweepParameter::Alpha => "alpha",
            SweepParameter::Omega => "omega",
            SweepParameter::Lambda => "lambda",
        }
    }

    pub fn apply(self, params: &ModelParams, value: f64) -> ModelParams {
        let mut p = *params;
        match self {
            SweepParameter::Mu => p.mu = value,
            SweepParameter::Alpha => p.alpha = value,
            SweepParameter::Omega => p.omega = value,
            SweepParameter::Lambda => p.lambda = value,
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl std::str::FromStr for SweepSpec {
    type Err = Error;

    /// `key=v1,v2,...` over exactly one of `mu`, `alpha`, `omega`, `lambda`.
    fn from_str(s: &str) -> Result<Self> {
        let (key, list) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("sweep `{s}` must look like key=v1,v2,...")))?;
        if list.contains('=') || key.contains([',', ';']) {
            return Err(Error::Config(format!(
                "sweep `{s}` names more than one parameter; sweep one at a time"
            )));
        }
        let parameter = match key.trim() {
            "mu" => SweepParameter::Mu,
            "alpha" => SweepParameter::Alpha,
            "omega" => SweepParameter::Omega,
            "lambda" => SweepParameter::Lambda,
            other => {
                return Err(Error::Config(format!(
                    "cannot sweep `{other}` (expected mu, alpha, omega or lambda)"
                )))
            }
        };
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("sweep value `{v}` is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Config("sweep needs at least one value".into()));
        }
        Ok(SweepSpec { parameter, values })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub value: f64,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepIndex {
    pub parameter: SweepParameter,
    pub base: ExperimentConfig,
    pub entries: Vec<SweepEntry>,
}

pub fn sweep_file_name(parameter: SweepParameter, value: f64, format: OutputFormat) -> String {
    format!("{}_{}.{}", parameter.name(), value, format.extension())
}

/// Writes one series per value into `dir`, then `index.json`.
pub fn cmd_sweep(base: &ExperimentConfig, spec: &SweepSpec, dir: &Path) -> Result<SweepIndex> {
    base.validate()?;
    let configs: Vec<ExperimentConfig> = spec
        .values
        .iter()
        .map(|&v| {
            let config = ExperimentConfig {
                params: spec.parameter.apply(&base.params, v),
                output_path: None,
                ..base.clone()
            };
            config.validate().map(|_| config)
        })
        .collect::<Result<_>>()?;

    fs::create_dir_all(dir)?;
    let entries = configs
        .par_iter()
        .zip(&spec.values)
        .map(|(config, &value)| {
            let series = cmd_evolve(config)?;
            let file = sweep_file_name(spec.parameter, value, base.output_format);
            fs::write(dir.join(&file), render_series(config, &series)?)?;
            Ok(SweepEntry { value, file })
        })
        .collect::<Result<Vec<_>>>()?;

    let index = SweepIndex {
        parameter: spec.parameter,
        base: base.clone(),
        entries,
    };
    fs::write(
        dir.join("index.json"),
        serde_json::to_string_pretty(&index)? + "\n",
    )?;
    Ok(index)
}

// ---------------------------------------------------------------------------
// argument parsing

#[derive(Debug, Parser)]
#[command(
    name = "dunkl-kerr",
    version,
    about = "Spectrum and collapse-and-revival dynamics of the Dunkl Kerr oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate energy levels n = 0..=n-max.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evolve the coherent superposition and write a time series.
    Evolve(EvolveArgs),
    /// Cross-check the closed forms against the matrix oracle.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Truncated dimension for the algebra checks.
        #[arg(long, default_value_t = 32)]
        dim: usize,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        t_start: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 2.0 * std::f64::consts::PI)]
        t_end: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 1e-16)]
        tail_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_energy: bool,
    },
    /// Repeat `evolve` over a list of values of one parameter.
    Sweep {
        #[command(flatten)]
        evolve: EvolveArgs,
        /// `key=v1,v2,...`, key one of mu, alpha, omega, lambda.
        #[arg(long, required = true)]
        sweep: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 20.0)]
    pub omega: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub alpha: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.mu, self.omega, self.lambda, self.alpha)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub t_start: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0 * std::f64::consts::PI)]
    pub t_end: f64,
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
    /// Comma-separated subset of quadrature, fidelity, variance, k0_const.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "quadrature,fidelity,variance"
    )]
    pub channels: Vec<String>,
    #[arg(long, default_value_t = 1e-16)]
    pub tail_tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl EvolveArgs {
    pub fn config(&self) -> Result<ExperimentConfig> {
        let channels = self
            .channels
            .iter()
            .filter(|c| !c.trim().is_empty())
            .map(|c| c.parse())
            .collect::<Result<Vec<Channel>>>()?;
        let config = ExperimentConfig {
            params: self.model.params()?,
            grid: TimeGrid::new(self.t_start, self.t_end, self.samples)?,
            policy: TruncationPolicy::new(self.tail_tol, TruncationPolicy::default().n_max_hard)?,
            channels,
            output_format: self.output.format,
            output_path: self.output.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Executes a parsed command. Returns the process exit code: `0` on
/// success, `1` when `verify` finds a failing check.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Spectrum {
            model,
            n_max,
            output,
        } => {
            let params = model.params()?;
            let rows = cmd_spectrum(&params, n_max)?;
            emit(
                &render_spectrum(&params, &rows, output.format)?,
                output.out.as_deref(),
                stdout,
            )?;
            Ok(0)
        }
        Command::Evolve(args) => {
            let config = args.config()?;
            let series = cmd_evolve(&config)?;
            emit(
                &render_series(&config, &series)?,
                config.output_path.as_deref(),
                stdout,
            )?;
            Ok(0)
        }
        Command::Verify {
            model,
            dim,
            t_start,
            t_end,
            samples,
            tail_tol,
            out,
            corrupt_energy,
        } => {
            let config = VerifyConfig {
                params: model.params()?,
                policy: TruncationPolicy::new(tail_tol, TruncationPolicy::default().n_max_hard)?,
                grid: TimeGrid::new(t_start, t_end, samples)?,
                dim,
                corrupt_energy,
            };
            let report = cmd_verify(&config)?;
            emit(
                &(serde_json::to_string_pretty(&report)? + "\n"),
                out.as_deref(),
                stdout,
            )?;
            if report.pass {
                Ok(0)
            } else {
                for f in report.failures() {
                    eprintln!(
                        "check failed: {} (deviation {:e} > {:e})",
                        f.name, f.max_deviation, f.tolerance
                    );
                }
                Ok(1)
            }
        }
        Command::Sweep { evolve, sweep } => {
            if sweep.len() != 1 {
                return Err(Error::Config(
                    "only one --sweep is allowed; sweep one parameter at a time".into(),
                ));
            }
            let spec: SweepSpec = sweep[0].parse()?;
            let config = evolve.config()?;
            let dir = config
                .output_path
                .clone()
                .ok_or_else(|| Error::Config("sweep requires --out <directory>".into()))?;
            let index = cmd_sweep(&config, &spec, &dir)?;
            for e in &index.entries {
                writeln!(stdout, "{}", dir.join(&e.file).display())?;
            }
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and executes. Parse failures,
/// including `--help`, come back as [`Error::Config`].
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    execute(cli, stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_rows() {
        let p = ModelParams::new(0.5, 20.0, 1.0, 2.0).unwrap();
        let rows = cmd_spectrum(&p, 3).unwrap();
        let e: Vec<f64> = rows.iter().map(|r| r.energy).collect();
        assert_eq!(e, [0.0, 40.0, 42.0, 84.0]);
        assert_eq!(rows[0].delta, None);
        assert_eq!(rows[2].delta, Some(2.0));
        assert_eq!(rows[3].parity, -1);
    }

    #[test]
    fn sweep_spec_parsing() {
        let s: SweepSpec = "mu=0,0.5,1.0".parse().unwrap();
        assert_eq!(s.parameter, SweepParameter::Mu);
        assert_eq!(s.values, [0.0, 0.5, 1.0]);
        assert!("mu=0,alpha=1".parse::<SweepSpec>().is_err());
        assert!("mu,alpha=1".parse::<SweepSpec>().is_err());
        assert!("beta=1".parse::<SweepSpec>().is_err());
        assert!("mu=x".parse::<SweepSpec>().is_err());
        assert!("mu".parse::<SweepSpec>().is_err());
    }

    #[test]
    fn number_format_round_trips() {
        for x in [0.0, 1.0 / 3.0, std::f64::consts::PI, -1e-300, 6.02e23] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn verify_defaults_pass() {
        let report = cmd_verify(&VerifyConfig::default()).unwrap();
        assert!(report.pass, "{:#?}", report.failures().collect::<Vec<_>>());
    }
}
