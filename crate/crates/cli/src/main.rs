use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

mod airfoil_cmd;
mod input;
mod probe;
mod report;
mod transform;
mod verify;

use report::{Cell, Format, Report, Table};
use transform::TransformKind;
use verify::Suite;

/// Cauchy-type integrals, Hilbert transforms and the flat-plate airfoil.
///
/// Exit status: 0 on success, 1 when a numeric check fails, 2 on usage or
/// input errors.
#[derive(Debug, Parser)]
#[command(name = "cauchy-kit", version)]
struct Cli {
    /// Grid size (even, at least 8).
    #[arg(long, global = true, default_value_t = 256)]
    n: usize,
    /// Replace every check tolerance with this value.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomly placed test points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an invariant suite and report one row per check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Flat plate at incidence: chord table, circulation, lift and field grid.
    Airfoil {
        #[arg(long, default_value_t = 1.0)]
        speed: f64,
        /// Incidence in radians, or a form like pi/6.
        #[arg(long, default_value = "pi/6", value_parser = airfoil_cmd::parse_angle, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
    },
    /// Look for exterior poles in boundary samples (rows: theta, Re f, Im f).
    Probe {
        input: PathBuf,
        /// Numerator and denominator degrees, e.g. 1,2; scanned when omitted.
        #[arg(long, value_parser = parse_degrees)]
        degrees: Option<(usize, usize)>,
        /// Taylor coefficients to fit.
        #[arg(long, default_value_t = 64)]
        coefficients: usize,
    },
    /// Circular Hilbert transform of samples (rows: theta, value).
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        input: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(input::ParseError),
    Numeric(String),
}

impl From<input::ParseError> for CliError {
    fn from(e: input::ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
        }
    }
}

fn parse_degrees(s: &str) -> Result<(usize, usize), String> {
    let (m, k) = s.split_once(',').ok_or("expected two degrees as m,k")?;
    let m = m.trim().parse().map_err(|_| format!("bad numerator degree '{m}'"))?;
    let k = k.trim().parse().map_err(|_| format!("bad denominator degree '{k}'"))?;
    Ok((m, k))
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Build the report; the flag says whether every check passed.
fn execute(cli: &Cli) -> Result<(Report, bool), CliError> {
    if cli.n < 8 || !cli.n.is_multiple_of(2) {
        return Err(CliError::Usage(format!("--n must be even and at least 8, got {}", cli.n)));
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0) || !t.is_finite() {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Verify { suite } => {
            let checks = verify::run(*suite, cli.n, cli.seed).map_err(|e| CliError::Numeric(e.to_string()))?;
            let mut table = Table::new("checks", &["check", "residual", "tolerance", "pass"]);
            let mut all = true;
            for mut c in checks {
                if let Some(t) = cli.tol {
                    c.tolerance = t;
                }
                all &= c.passed();
                table.push(vec![c.id.clone().into(), c.residual.into(), c.tolerance.into(), c.passed().into()]);
            }
            let mut r = Report::new("verify")
                .config("suite", json!(suite.name()))
                .config("n", json!(cli.n))
                .config("seed", json!(cli.seed))
                .config("tol", json!(cli.tol));
            r.tables.push(table);
            r.details = Some(json!({ "passed": all }));
            Ok((r, all))
        }
        Command::Airfoil { speed, alpha, density } => {
            let r = airfoil_cmd::run(*speed, *alpha, *density, cli.n)?
                .config("speed", json!(speed))
                .config("alpha", json!(alpha))
                .config("density", json!(density))
                .config("n", json!(cli.n));
            Ok((r, true))
        }
        Command::Probe { input, degrees, coefficients } => {
            let (r, _) = probe::run(&read(input)?, *degrees, *coefficients)?;
            let r = r
                .config("input", json!(input.display().to_string()))
                .config("degrees", json!(degrees))
                .config("coefficients", json!(coefficients));
            Ok((r, true))
        }
        Command::Transform { kind, input } => {
            let r = transform::run(*kind, &read(input)?)?
                .config("kind", json!(kind.name()))
                .config("input", json!(input.display().to_string()));
            Ok((r, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (report, passed) = match execute(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("cauchy-kit: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cauchy-kit: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("cauchy-kit: cannot write output: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    }
    if !passed {
        if let Some(table) = report.tables.first() {
            for row in table.rows.iter().filter(|r| r.last() == Some(&Cell::Bool(false))) {
                if let Some(Cell::Text(id)) = row.first() {
                    eprintln!("cauchy-kit: check failed: {id}");
                }
            }
        }
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
