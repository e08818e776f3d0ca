//! Command-line front end over the entanglement/evolution-speed library.
//!
//! Four subcommands cover the workflow end to end: `analyze` reports the
//! speed-limit comparison for one state read from an interchange JSON file,
//! `curves` and `sample` emit the closed-form extremal curves and the seeded
//! Monte Carlo scatter datasets as CSV, and `verify` cross-checks sampled
//! states against solver-independent oracles. Identical invocations produce
//! byte-identical output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input data,
//! 64 usage error (bad flags, bad config, out-of-range run parameters).

mod config;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::Defaults;
use qspeed::{
    sample_states, speed_report, verify, EnergyLadder, Family, StateRecord, TminVariant,
};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

/// Default batch size for `sample` and `verify`.
const DEFAULT_COUNT: usize = 1000;
/// Default RNG seed.
const DEFAULT_SEED: u64 = 0;
/// Default verification tolerance.
const DEFAULT_TOL: f64 = 1e-6;
/// Default curve-grid resolution.
const DEFAULT_RESOLUTION: usize = 101;

/// A command failure carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Flag, config, or run-parameter misuse: exit 64.
    #[error("{0}")]
    Usage(String),
    /// Unreadable or invariant-violating input data: exit 2.
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// The process exit code this failure maps to.
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Input(_) => 2,
        }
    }
}

/// Entanglement vs evolution speed for two-particle pure states.
#[derive(Debug, Parser)]
#[command(name = "qspeed", version, about)]
struct Cli {
    /// Optional key=value defaults file; explicit flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one state from an interchange JSON file.
    Analyze(AnalyzeArgs),
    /// Emit extremal-curve rows as CSV.
    Curves(CurvesArgs),
    /// Emit seeded scatter rows as CSV.
    Sample(SampleArgs),
    /// Cross-check sampled states against solver-independent oracles.
    Verify(VerifyArgs),
}

/// Which state family a command targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyFlag {
    Qubit,
    Boson,
    Fermion,
}

impl From<FamilyFlag> for Family {
    fn from(flag: FamilyFlag) -> Self {
        match flag {
            FamilyFlag::Qubit => Family::Qubit,
            FamilyFlag::Boson => Family::Boson,
            FamilyFlag::Fermion => Family::Fermion,
        }
    }
}

/// Which minimum-time bound reports quote.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundFlag {
    /// General bound from the mean energy and the energy spread.
    #[value(name = "eq11")]
    General,
    /// Constant `pi/2 * hbar/epsilon` bound; boson states only.
    #[value(name = "boson-paper")]
    BosonFixed,
}

impl From<BoundFlag> for TminVariant {
    fn from(flag: BoundFlag) -> Self {
        match flag {
            BoundFlag::General => TminVariant::General,
            BoundFlag::BosonFixed => TminVariant::BosonFixed,
        }
    }
}

/// Output form of `analyze`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatFlag {
    /// Labeled lines for reading.
    Text,
    /// Pretty JSON for machines.
    Json,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// State interchange JSON: {"family": ..., "amplitudes": [[re, im], ...]}.
    #[arg(value_name = "STATE_FILE")]
    state_file: PathBuf,
    /// Level spacing, in energy units (default 1).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Reduced Planck constant (default 1).
    #[arg(long)]
    hbar: Option<f64>,
    /// Minimum-time bound to quote (default eq11).
    #[arg(long, value_enum)]
    tmin_variant: Option<BoundFlag>,
    /// Output form (default text).
    #[arg(long, value_enum)]
    format: Option<FormatFlag>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CurvesArgs {
    /// State family whose curves to emit.
    #[arg(long, value_enum)]
    family: Option<FamilyFlag>,
    /// Grid rows, at least 2 (default 101).
    #[arg(long)]
    resolution: Option<usize>,
    /// Minimum-time bound for the boson curves (default eq11).
    #[arg(long, value_enum)]
    tmin_variant: Option<BoundFlag>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// State family to sample.
    #[arg(long, value_enum)]
    family: Option<FamilyFlag>,
    /// States to draw, at least 1 (default 1000).
    #[arg(long)]
    count: Option<usize>,
    /// RNG seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// State family to verify.
    #[arg(long, value_enum)]
    family: Option<FamilyFlag>,
    /// States to check, at least 1 (default 1000).
    #[arg(long)]
    count: Option<usize>,
    /// RNG seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Agreement tolerance, positive (default 1e-6).
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

/// Parses arguments and dispatches, mapping every outcome to an exit code.
fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 64 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.code()
        }
    }
}

/// Loads defaults and runs the chosen subcommand.
fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let defaults = match &cli.config {
        Some(path) => Defaults::load(path)?,
        None => Defaults::empty(),
    };
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args, &defaults),
        Command::Curves(args) => cmd_curves(args, &defaults),
        Command::Sample(args) => cmd_sample(args, &defaults),
        Command::Verify(args) => cmd_verify(args, &defaults),
    }
}

/// Flag value if given, else the config value for `key`, else `None`.
fn resolve_option<T>(
    flag: Option<T>,
    defaults: &Defaults,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
) -> Result<Option<T>, CliError> {
    match flag {
        Some(value) => Ok(Some(value)),
        None => defaults
            .raw(key)
            .map(|raw| {
                parse(raw).map_err(|err| CliError::Usage(format!("config key {key}: {err}")))
            })
            .transpose(),
    }
}

/// Flag value if given, else the config value for `key`, else `fallback`.
fn resolve<T>(
    flag: Option<T>,
    defaults: &Defaults,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
    fallback: T,
) -> Result<T, CliError> {
    Ok(resolve_option(flag, defaults, key, parse)?.unwrap_or(fallback))
}

/// Family from flag or config; there is no default family.
fn resolve_family(flag: Option<FamilyFlag>, defaults: &Defaults) -> Result<Family, CliError> {
    resolve_option(flag, defaults, "family", parse_enum)?
        .map(Family::from)
        .ok_or_else(|| CliError::Usage("--family is required".to_string()))
}

/// Output path from flag or config; `None` means stdout.
fn resolve_out(flag: Option<PathBuf>, defaults: &Defaults) -> Option<PathBuf> {
    flag.or_else(|| defaults.raw("out").map(PathBuf::from))
}

/// Parses a config value with the type's `FromStr`, as the flag would.
fn parse_plain<T: FromStr>(raw: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    raw.parse().map_err(|err: T::Err| err.to_string())
}

/// Parses a config value with the flag's enumerated tokens.
fn parse_enum<T: ValueEnum>(raw: &str) -> Result<T, String> {
    T::from_str(raw, false)
}

/// Prints to stdout, quietly stopping if the reader closed the pipe.
fn print_out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

/// Writes `rendered` to `out`, or prints it to stdout.
fn emit(rendered: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, rendered)
            .map_err(|err| CliError::Input(format!("cannot write {}: {err}", path.display()))),
        None => {
            print_out(rendered);
            Ok(())
        }
    }
}

/// `analyze`: speed-limit report for one state file.
fn cmd_analyze(args: AnalyzeArgs, defaults: &Defaults) -> Result<i32, CliError> {
    let epsilon = resolve(args.epsilon, defaults, "epsilon", parse_plain, 1.0)?;
    let hbar = resolve(args.hbar, defaults, "hbar", parse_plain, 1.0)?;
    let variant = resolve(
        args.tmin_variant,
        defaults,
        "tmin-variant",
        parse_enum,
        BoundFlag::General,
    )?;
    let format = resolve(args.format, defaults, "format", parse_enum, FormatFlag::Text)?;
    let out = resolve_out(args.out, defaults);
    let ladder =
        EnergyLadder::new(epsilon, hbar).map_err(|err| CliError::Usage(err.to_string()))?;
    let text = fs::read_to_string(&args.state_file).map_err(|err| {
        CliError::Input(format!("cannot read {}: {err}", args.state_file.display()))
    })?;
    let record: StateRecord = serde_json::from_str(&text)
        .map_err(|err| CliError::Input(format!("invalid state file: {err}")))?;
    let state = record
        .to_state()
        .map_err(|err| CliError::Input(err.to_string()))?;
    let report = speed_report(&state, variant.into())
        .map_err(|err| CliError::Input(err.to_string()))?
        .in_units(&ladder);
    let rendered = match format {
        FormatFlag::Text => render::report_text(&report),
        FormatFlag::Json => render::report_json(&report),
    };
    emit(&rendered, out.as_deref())?;
    Ok(0)
}

/// `curves`: closed-form extremal curves as CSV.
fn cmd_curves(args: CurvesArgs, defaults: &Defaults) -> Result<i32, CliError> {
    let family = resolve_family(args.family, defaults)?;
    let resolution = resolve(
        args.resolution,
        defaults,
        "resolution",
        parse_plain,
        DEFAULT_RESOLUTION,
    )?;
    if resolution < 2 {
        return Err(CliError::Usage(format!(
            "resolution = {resolution} must be at least 2"
        )));
    }
    let variant = resolve(
        args.tmin_variant,
        defaults,
        "tmin-variant",
        parse_enum,
        BoundFlag::General,
    )?;
    let csv = match family {
        Family::Qubit => render::qubit_curves_csv(resolution),
        Family::Boson => render::boson_curves_csv(resolution, variant.into()),
        Family::Fermion => render::fermion_curves_csv(resolution),
    }
    .map_err(|err| CliError::Input(err.to_string()))?;
    emit(&csv, resolve_out(args.out, defaults).as_deref())?;
    Ok(0)
}

/// `sample`: seeded scatter dataset as CSV.
fn cmd_sample(args: SampleArgs, defaults: &Defaults) -> Result<i32, CliError> {
    let family = resolve_family(args.family, defaults)?;
    let count = resolve(args.count, defaults, "count", parse_plain, DEFAULT_COUNT)?;
    if count == 0 {
        return Err(CliError::Usage("count must be at least 1".to_string()));
    }
    let seed = resolve(args.seed, defaults, "seed", parse_plain, DEFAULT_SEED)?;
    let points =
        sample_states(family, count, seed).map_err(|err| CliError::Input(err.to_string()))?;
    let csv = render::sample_csv(family, &points);
    emit(&csv, resolve_out(args.out, defaults).as_deref())?;
    Ok(0)
}

/// `verify`: oracle cross-check; exit 1 when any check fails.
fn cmd_verify(args: VerifyArgs, defaults: &Defaults) -> Result<i32, CliError> {
    let family = resolve_family(args.family, defaults)?;
    let count = resolve(args.count, defaults, "count", parse_plain, DEFAULT_COUNT)?;
    if count == 0 {
        return Err(CliError::Usage("count must be at least 1".to_string()));
    }
    let seed = resolve(args.seed, defaults, "seed", parse_plain, DEFAULT_SEED)?;
    let tol = resolve(args.tol, defaults, "tol", parse_plain, DEFAULT_TOL)?;
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!("tol = {tol} must be positive")));
    }
    let report =
        verify(family, count, seed, tol).map_err(|err| CliError::Input(err.to_string()))?;
    print_out(&render::verify_text(&report));
    let json = render::verify_json(&report);
    match resolve_out(args.out, defaults) {
        Some(path) => {
            fs::write(&path, json).map_err(|err| {
                CliError::Input(format!("cannot write {}: {err}", path.display()))
            })?;
            print_out(&format!("report: {}\n", path.display()));
        }
        None => print_out(&json),
    }
    Ok(if report.failures.is_empty() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config_values() {
        let defaults = config::Defaults::empty();
        let count = resolve(Some(7_usize), &defaults, "count", parse_plain, 3).unwrap();
        assert_eq!(count, 7);
        let count = resolve(None, &defaults, "count", parse_plain, 3).unwrap();
        assert_eq!(count, 3);
    }

    #[test]
    fn config_values_fill_missing_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "count=12\nfamily=fermion\ntmin-variant=boson-paper\n").unwrap();
        let defaults = Defaults::load(&path).unwrap();
        assert_eq!(
            resolve(None, &defaults, "count", parse_plain, 3_usize).unwrap(),
            12
        );
        assert_eq!(
            resolve_family(None, &defaults).unwrap(),
            Family::Fermion
        );
        assert_eq!(
            resolve(
                None,
                &defaults,
                "tmin-variant",
                parse_enum,
                BoundFlag::General
            )
            .unwrap(),
            BoundFlag::BosonFixed
        );
    }

    #[test]
    fn bad_config_values_are_usage_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "count=many\n").unwrap();
        let defaults = Defaults::load(&path).unwrap();
        let err = resolve(None, &defaults, "count", parse_plain::<usize>, 3).unwrap_err();
        assert_eq!(err.code(), 64);
    }

    #[test]
    fn missing_family_is_a_usage_error() {
        let err = resolve_family(None, &Defaults::empty()).unwrap_err();
        assert_eq!(err.code(), 64);
        assert!(err.to_string().contains("--family"));
    }
}
