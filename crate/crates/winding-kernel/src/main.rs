//! Command-line front end: deterministic CSV/JSON scans over the circle,
//! spin, Aharonov-Bohm, and many-body propagators, plus a winding-number
//! utility and a runtime verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical-verification failure,
//! 3 input error.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use winding_kernel::aharonov_bohm::{ab_amplitude, ABSetup};
use winding_kernel::characters::CharacterRep;
use winding_kernel::circle::{spectral_sum, winding_sum, CirclePoint, Truncation};
use winding_kernel::homotopy::{winding_number, PolylinePath};
use winding_kernel::many_body::{statistics_propagator, ParticleConfig, Statistics};
use winding_kernel::spin::{class_partials, propagator, EulerAngles, Space};
use winding_kernel::{scan, verify, Error, PhysicalConstants, TimeParameter};

const EXIT_USAGE: i32 = 1;
const EXIT_NUMERICAL: i32 = 2;
const EXIT_INPUT: i32 = 3;

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendered help/version on stdout with success, but
            // report genuine usage errors with exit code 1.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &CliError) -> i32 {
    match e {
        CliError::Input(_) => EXIT_INPUT,
        CliError::Numerical(_) => EXIT_NUMERICAL,
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "{s}"),
            CliError::Numerical(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::TruncationInsufficient | Error::GridTooCoarse => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "winding-kernel",
    version,
    about = "Propagator scans on multiply-connected configuration spaces"
)]
struct Cli {
    /// JSON config file; flags override config, config overrides defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Output path (defaults to standard output).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Time evolution mode.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,

    /// Real-time regularization parameter (used with --mode real).
    #[arg(long, global = true)]
    epsilon: Option<f64>,

    /// Winding-image truncation start.
    #[arg(long, global = true)]
    max_winding: Option<usize>,

    /// Spectral-mode truncation start.
    #[arg(long, global = true)]
    max_mode: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Imaginary,
    Real,
}

#[derive(Subcommand)]
enum Command {
    /// Circle propagator: winding-image vs spectral form.
    Circle(CircleArgs),
    /// Rigid-rotor propagator on SU(2) or SO(3) with class partials.
    Spin(SpinArgs),
    /// Aharonov-Bohm ring interference amplitude and intensity.
    Ab(AbArgs),
    /// Identical-particle propagator under Bose/Fermi/anyon statistics.
    Particles(ParticlesArgs),
    /// Winding number of a closed polyline about a puncture.
    Winding(WindingArgs),
    /// Run the numerical self-verification suite.
    Verify,
}

#[derive(Args)]
struct CircleArgs {
    /// Angle differences, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    dtheta: Vec<f64>,
    /// Evolution times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    tau: Vec<f64>,
    /// Character phases, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    delta: Vec<f64>,
    /// Ring radius.
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
}

#[derive(Args)]
struct SpinArgs {
    /// Configuration space.
    #[arg(long, value_enum, default_value_t = SpaceArg::Su2)]
    space: SpaceArg,
    /// Middle Euler angles of the target rotation, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    theta: Vec<f64>,
    /// Evolution times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    tau: Vec<f64>,
    /// Largest spin j in the truncated sum (half-integers allowed).
    #[arg(long, default_value_t = 4.0)]
    jmax: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Su2,
    So3,
}

#[derive(Args)]
struct AbArgs {
    /// Screen angles, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    phi: Vec<f64>,
    /// Flux parameters, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// Zero-flux character phase.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Evolution times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    tau: Vec<f64>,
    /// Source angle on the ring.
    #[arg(long, default_value_t = 0.0)]
    source: f64,
    /// Ring radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Args)]
struct ParticlesArgs {
    /// CSV file of initial positions, one particle per row.
    #[arg(long)]
    from: PathBuf,
    /// CSV file of final positions, one particle per row.
    #[arg(long)]
    to: PathBuf,
    /// Exchange statistics.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Anyon exchange phase (used with --kind anyon).
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Evolution times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    tau: Vec<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Bose,
    Fermi,
    Anyon,
}

#[derive(Args)]
struct WindingArgs {
    /// CSV file of path vertices, rows `x,y`.
    #[arg(long)]
    path: PathBuf,
    /// Puncture location `x,y`.
    #[arg(long, default_value = "0,0")]
    puncture: String,
}

/// Defaults overridable from the JSON config file, themselves overridden by
/// command-line flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    constants: Option<ConstantsConfig>,
    time: Option<TimeConfig>,
    truncation: Option<TruncationConfig>,
    format: Option<String>,
    output: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsConfig {
    hbar: Option<f64>,
    mass: Option<f64>,
    inertia: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimeConfig {
    mode: Option<String>,
    epsilon: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncationConfig {
    max_winding: Option<usize>,
    max_mode: Option<usize>,
}

/// Fully resolved run settings.
struct Settings {
    constants: PhysicalConstants,
    mode: Mode,
    epsilon: f64,
    truncation: Truncation,
    format: Format,
    output: Option<PathBuf>,
}

impl Settings {
    fn time(&self, tau: f64) -> Result<TimeParameter, CliError> {
        match self.mode {
            Mode::Imaginary => Ok(TimeParameter::imaginary(tau)?),
            Mode::Real => Ok(TimeParameter::real(tau, self.epsilon)?),
        }
    }
}

fn resolve_settings(cli: &Cli) -> Result<Settings, CliError> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    let mut constants = PhysicalConstants::natural();
    if let Some(c) = &file.constants {
        constants = PhysicalConstants::new(
            c.hbar.unwrap_or(constants.hbar),
            c.mass.unwrap_or(constants.mass),
            c.inertia.unwrap_or(constants.inertia),
            constants.charge_flux_ratio,
        )?;
    }

    let file_mode = match file.time.as_ref().and_then(|t| t.mode.as_deref()) {
        None => None,
        Some("imaginary") => Some(Mode::Imaginary),
        Some("real") => Some(Mode::Real),
        Some(other) => {
            return Err(CliError::Input(format!("unknown time mode {other:?}")));
        }
    };
    let mode = cli.mode.or(file_mode).unwrap_or(Mode::Imaginary);
    let epsilon = cli
        .epsilon
        .or(file.time.as_ref().and_then(|t| t.epsilon))
        .unwrap_or(1e-3);

    let trunc_file = file.truncation.unwrap_or_default();
    let truncation = Truncation::new(
        cli.max_winding.or(trunc_file.max_winding).unwrap_or(8),
        cli.max_mode.or(trunc_file.max_mode).unwrap_or(8),
    )?;

    let file_format = match file.format.as_deref() {
        None => None,
        Some("csv") => Some(Format::Csv),
        Some("json") => Some(Format::Json),
        Some(other) => {
            return Err(CliError::Input(format!("unknown output format {other:?}")));
        }
    };
    let format = cli.format.or(file_format).unwrap_or(Format::Csv);
    let output = cli.output.clone().or(file.output);

    Ok(Settings {
        constants,
        mode,
        epsilon,
        truncation,
        format,
        output,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Ok(raw) = std::env::var("WINDING_KERNEL_THREADS") {
        let n: usize = raw
            .parse()
            .map_err(|_| CliError::Input(format!("bad WINDING_KERNEL_THREADS value {raw:?}")))?;
        scan::configure_threads(n);
    }
    let settings = resolve_settings(&cli)?;
    match &cli.command {
        Command::Circle(args) => {
            let table = circle_table(args, &settings)?;
            emit(&settings, &table)?;
            Ok(0)
        }
        Command::Spin(args) => {
            let table = spin_table(args, &settings)?;
            emit(&settings, &table)?;
            Ok(0)
        }
        Command::Ab(args) => {
            let table = ab_table(args, &settings)?;
            emit(&settings, &table)?;
            Ok(0)
        }
        Command::Particles(args) => {
            let table = particles_table(args, &settings)?;
            emit(&settings, &table)?;
            Ok(0)
        }
        Command::Winding(args) => {
            let w = winding_command(args)?;
            write_text(&settings, &format!("{w}\n"))?;
            Ok(0)
        }
        Command::Verify => {
            let checks = verify::run_all(&settings.constants);
            let mut text = String::new();
            let mut all_passed = true;
            for check in &checks {
                let status = if check.passed { "pass" } else { "FAIL" };
                all_passed &= check.passed;
                text.push_str(&format!("{status} {}: {}\n", check.name, check.detail));
            }
            write_text(&settings, &text)?;
            if all_passed {
                Ok(0)
            } else {
                Err(CliError::Numerical(
                    "one or more verification checks failed".to_string(),
                ))
            }
        }
    }
}

/// One output table: header plus preformatted cells.
struct Table {
    header: Vec<&'static str>,
    /// Cell text paired with "is a bare JSON value" (numbers and integers
    /// are emitted unquoted in JSON output; identifiers are quoted).
    rows: Vec<Vec<(String, bool)>>,
}

/// 17-significant-digit scientific notation; round-trip exact for f64 and a
/// valid JSON number.
fn fmt_f64(x: f64) -> (String, bool) {
    (format!("{x:.16e}"), true)
}

fn fmt_int(x: i64) -> (String, bool) {
    (x.to_string(), true)
}

fn fmt_name(s: &str) -> (String, bool) {
    (s.to_string(), false)
}

fn circle_table(args: &CircleArgs, settings: &Settings) -> Result<Table, CliError> {
    let mut jobs = Vec::new();
    for &dtheta in &args.dtheta {
        for &tau in &args.tau {
            for &delta in &args.delta {
                jobs.push((dtheta, tau, delta));
            }
        }
    }
    let c = &settings.constants;
    let trunc = settings.truncation;
    let rows = scan::try_map_in_order(&jobs, |&(dtheta, tau, delta)| {
        let from = CirclePoint::new(0.0, args.rho)?;
        let to = CirclePoint::new(dtheta, args.rho)?;
        let t = settings.time(tau)?;
        let chi = CharacterRep::IntegersZ { delta };
        let w = winding_sum(from, to, t, &chi, trunc, c)?;
        let s = spectral_sum(from, to, t, delta, trunc, c)?;
        Ok::<_, CliError>(vec![
            fmt_f64(dtheta),
            fmt_f64(tau),
            fmt_f64(delta),
            fmt_f64(w.re),
            fmt_f64(w.im),
            fmt_f64(s.re),
            fmt_f64(s.im),
            fmt_f64((w - s).norm()),
        ])
    })?;
    Ok(Table {
        header: vec![
            "dtheta",
            "tau",
            "delta",
            "re_winding",
            "im_winding",
            "re_spectral",
            "im_spectral",
            "abs_diff",
        ],
        rows,
    })
}

fn spin_table(args: &SpinArgs, settings: &Settings) -> Result<Table, CliError> {
    let two_jmax = (2.0 * args.jmax).round();
    if two_jmax < 0.0 || (two_jmax - 2.0 * args.jmax).abs() > 1e-9 {
        return Err(CliError::Input(format!(
            "jmax must be a nonnegative integer or half-integer, got {}",
            args.jmax
        )));
    }
    let two_jmax = two_jmax as i32;
    let space = match args.space {
        SpaceArg::Su2 => Space::SU2,
        SpaceArg::So3 => Space::SO3,
    };
    let space_name = match args.space {
        SpaceArg::Su2 => "su2",
        SpaceArg::So3 => "so3",
    };
    let mut jobs = Vec::new();
    for &theta in &args.theta {
        for &tau in &args.tau {
            jobs.push((theta, tau));
        }
    }
    let c = &settings.constants;
    let rows = scan::try_map_in_order(&jobs, |&(theta, tau)| {
        let from = EulerAngles::identity();
        let to = EulerAngles::new(0.0, theta, 0.0);
        let t = settings.time(tau)?;
        let k = propagator(space, from, to, t, two_jmax, c)?;
        let (k_i, k_ii) = class_partials(from, to, t, two_jmax, c)?;
        Ok::<_, CliError>(vec![
            fmt_name(space_name),
            fmt_f64(theta),
            fmt_f64(tau),
            fmt_f64(args.jmax),
            fmt_f64(k.re),
            fmt_f64(k.im),
            fmt_f64(k_i.re),
            fmt_f64(k_i.im),
            fmt_f64(k_ii.re),
            fmt_f64(k_ii.im),
        ])
    })?;
    Ok(Table {
        header: vec![
            "space", "theta", "tau", "jmax", "re_K", "im_K", "re_KI", "im_KI", "re_KII", "im_KII",
        ],
        rows,
    })
}

fn ab_table(args: &AbArgs, settings: &Settings) -> Result<Table, CliError> {
    let mut jobs = Vec::new();
    for &phi in &args.phi {
        for &alpha in &args.alpha {
            for &tau in &args.tau {
                jobs.push((phi, alpha, tau));
            }
        }
    }
    let c = &settings.constants;
    let trunc = settings.truncation;
    let rows = scan::try_map_in_order(&jobs, |&(phi, alpha, tau)| {
        let setup = ABSetup::new(args.radius, args.source, alpha, args.delta)?;
        let t = settings.time(tau)?;
        let k = ab_amplitude(&setup, phi, t, trunc, c)?;
        Ok::<_, CliError>(vec![
            fmt_f64(phi),
            fmt_f64(alpha),
            fmt_f64(args.delta),
            fmt_f64(tau),
            fmt_f64(k.re),
            fmt_f64(k.im),
            fmt_f64(k.norm_sqr()),
        ])
    })?;
    Ok(Table {
        header: vec![
            "phi_f",
            "alpha_flux",
            "delta",
            "tau",
            "re_K",
            "im_K",
            "intensity",
        ],
        rows,
    })
}

fn particles_table(args: &ParticlesArgs, settings: &Settings) -> Result<Table, CliError> {
    let from_rows = read_numeric_csv(&args.from)?;
    let to_rows = read_numeric_csv(&args.to)?;
    let d = match from_rows.first() {
        Some(row) => row.len(),
        None => return Err(CliError::Input("empty position file".to_string())),
    };
    let from = ParticleConfig::new(from_rows, d)?;
    let to = ParticleConfig::new(to_rows, d)?;
    let (kind, kind_name) = match args.kind {
        KindArg::Bose => (Statistics::Bose, "bose"),
        KindArg::Fermi => (Statistics::Fermi, "fermi"),
        KindArg::Anyon => (Statistics::Anyon { theta: args.theta }, "anyon"),
    };
    let c = &settings.constants;
    let rows = scan::try_map_in_order(&args.tau, |&tau| {
        let t = settings.time(tau)?;
        let k: Complex64 = statistics_propagator(&from, &to, kind, t, c)?;
        Ok::<_, CliError>(vec![
            fmt_int(from.n() as i64),
            fmt_int(d as i64),
            fmt_name(kind_name),
            fmt_f64(tau),
            fmt_f64(k.re),
            fmt_f64(k.im),
        ])
    })?;
    Ok(Table {
        header: vec!["n", "d", "kind", "tau", "re_K", "im_K"],
        rows,
    })
}

fn winding_command(args: &WindingArgs) -> Result<i64, CliError> {
    let rows = read_numeric_csv(&args.path)?;
    let vertices: Vec<[f64; 2]> = rows
        .into_iter()
        .map(|row| {
            if row.len() == 2 {
                Ok([row[0], row[1]])
            } else {
                Err(CliError::Input(format!(
                    "path rows must have 2 columns, found {}",
                    row.len()
                )))
            }
        })
        .collect::<Result<_, _>>()?;
    let puncture = parse_pair(&args.puncture)?;
    let path = PolylinePath::new(vertices)?;
    Ok(winding_number(&path, puncture)?)
}

fn parse_pair(s: &str) -> Result<[f64; 2], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Input(format!("expected `x,y`, got {s:?}")));
    }
    let x = parse_f64(parts[0])?;
    let y = parse_f64(parts[1])?;
    Ok([x, y])
}

fn parse_f64(s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad number {s:?}")))
}

fn read_numeric_csv(path: &PathBuf) -> Result<Vec<Vec<f64>>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(parse_f64)
            .collect::<Result<_, _>>()?;
        if let Some(first) = rows.first() as Option<&Vec<f64>> {
            if row.len() != first.len() {
                return Err(CliError::Input(format!(
                    "ragged CSV in {}",
                    path.display()
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn emit(settings: &Settings, table: &Table) -> Result<(), CliError> {
    let text = match settings.format {
        Format::Csv => render_csv(table),
        Format::Json => render_json(table),
    };
    write_text(settings, &text)
}

fn render_csv(table: &Table) -> String {
    let mut out = table.header.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<&str> = row.iter().map(|(s, _)| s.as_str()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(table: &Table) -> String {
    let mut out = String::from("[\n");
    for (i, row) in table.rows.iter().enumerate() {
        out.push_str("  {");
        for (j, ((cell, bare), key)) in row.iter().zip(&table.header).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            if *bare {
                out.push_str(&format!("\"{key}\": {cell}"));
            } else {
                out.push_str(&format!("\"{key}\": \"{cell}\""));
            }
        }
        out.push('}');
        if i + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

fn write_text(settings: &Settings, text: &str) -> Result<(), CliError> {
    match &settings.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
        }
    }
}
