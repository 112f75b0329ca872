//! Command-line front end: `family`, `cubic` and `serve`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::io::{cubic_report, family_report, AngleUnit, ErrorReport, ProblemFile};
use crate::problem::G2Point;
use crate::sampling::PLOT_SAMPLES;
use crate::server::{serve, ServerState, DEFAULT_DTHETA_DEG};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const DEFAULT_PORT: u16 = 8787;

#[derive(Debug, Parser)]
#[command(name = "g2spiral", version, about = "G2 Hermite interpolation by rational spirals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the one-parameter family of quartic spirals.
    Family(FamilyArgs),
    /// Search for spirals that reduce to rational cubics.
    Cubic(CubicArgs),
    /// Serve the HTTP/JSON endpoints.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct UnitFlags {
    /// Read tangent angles in the input as degrees.
    #[arg(long)]
    pub degrees: bool,
    /// Read tangent angles in the input as radians.
    #[arg(long)]
    pub radians: bool,
}

impl UnitFlags {
    pub fn unit(&self) -> Option<AngleUnit> {
        match (self.degrees, self.radians) {
            (true, _) => Some(AngleUnit::Degrees),
            (_, true) => Some(AngleUnit::Radians),
            _ => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Problem file (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Samples per curve.
    #[arg(long, default_value_t = PLOT_SAMPLES)]
    pub samples: usize,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a two-panel SVG plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub units: UnitFlags,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Family parameter step in degrees.
    #[arg(long, default_value_t = DEFAULT_DTHETA_DEG)]
    pub dtheta: f64,
}

#[derive(Debug, Args)]
pub struct CubicArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = DEFAULT_PORT)]
    pub port: u16,
    /// Default problem for requests that do not carry one.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub units: UnitFlags,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        EXIT_VALIDATION
    } else if e.is_gate() {
        EXIT_NO_SOLUTION
    } else {
        EXIT_INTERNAL
    }
}

fn read_problem(path: &Path, unit: Option<AngleUnit>) -> Result<ProblemFile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let mut file = ProblemFile::parse(&text)?;
    if unit.is_some() {
        file.angle_unit = unit;
    }
    Ok(file)
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"));
    s.push('\n');
    s
}

fn emit(args: &OutputArgs, json: String, stdout: &mut dyn Write) -> Result<(), Error> {
    match &args.out {
        Some(p) => write_file(p, &json),
        None => stdout
            .write_all(json.as_bytes())
            .map_err(|e| Error::InvalidInput(format!("cannot write output: {e}"))),
    }
}

fn load(args: &OutputArgs) -> Result<(G2Point, G2Point), Error> {
    read_problem(&args.input, args.units.unit())?.points(None)
}

fn run_family(args: &FamilyArgs, stdout: &mut dyn Write) -> Result<(), Error> {
    let (a, b) = load(&args.output)?;
    let report = family_report(&a, &b, args.dtheta.to_radians(), args.output.samples)?;
    if let Some(p) = &args.output.svg {
        write_file(p, &svg::render(&report.members, &a, &b))?;
    }
    emit(&args.output, to_json(&report), stdout)
}

fn run_cubic(args: &CubicArgs, stdout: &mut dyn Write) -> Result<(), Error> {
    let (a, b) = load(&args.output)?;
    let report = cubic_report(&a, &b, args.output.samples)?;
    if let Some(p) = &args.output.svg {
        write_file(p, &svg::render(&report.cubics, &a, &b))?;
    }
    emit(&args.output, to_json(&report), stdout)
}

fn run_serve(args: &ServeArgs) -> Result<(), Error> {
    let default_problem = match &args.input {
        Some(p) => {
            let f = read_problem(p, args.units.unit())?;
            f.points(None)?;
            Some(f)
        }
        None => None,
    };
    let rt = tokio::runtime::Runtime::new().map_err(|e| Error::InvalidInput(format!("runtime: {e}")))?;
    rt.block_on(serve(args.port, ServerState { default_problem }))
        .map_err(|e| Error::InvalidInput(format!("cannot serve on port {}: {e}", args.port)))
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Family(a) => run_family(a, stdout),
        Command::Cubic(a) => run_cubic(a, stdout),
        Command::Serve(a) => run_serve(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = stdout.write_all(to_json(&ErrorReport::from(&e)).as_bytes());
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
