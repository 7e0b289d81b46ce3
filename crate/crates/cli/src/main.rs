//! `catchi`: batch verification runs over the catchi-core modules, emitting
//! JSON or Markdown reports.

mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use catchi_core::Error;

#[derive(Debug, Parser)]
#[command(
    name = "catchi",
    version,
    about = "Curvature and lattice verification runs"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Curvature bound χ of the model plane.
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub chi: f64,
    /// Sample points per triangle edge (at least 8).
    #[arg(long, global = true, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Exit 0 when some check fails and 1 when all pass.
    #[arg(long, global = true)]
    pub expect_fail: bool,
    /// Record wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// CAT(χ) test of one triangle read as JSON {"vertices": [[a, b], [a, b], [a, b]]}.
    CatCheck(CatCheckArgs),
    /// Curvature dichotomy on the cone over a circle of circumference L.
    Cone(ConeArgs),
    /// The k-sheeted branched cover of the plane at one point.
    BranchedPlane(BranchedArgs),
    /// The half-plane with its boundary crushed to a point.
    CrushedDemo(CrushedArgs),
    /// Geodesics near the cusp of the surface of revolution of y = x².
    CuspMeshDemo(CuspMeshArgs),
    /// limsup d(γ₁(t), γ₂(t))/t for two geodesic germs.
    TangentEstimate(TangentArgs),
    #[command(subcommand)]
    Lattice(LatticeCommand),
    #[command(subcommand)]
    Coxeter(CoxeterCommand),
    #[command(subcommand, alias = "cusp")]
    Singularities(SingularityCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Euclidean,
    Cone,
    Crushed,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CatCheckArgs {
    #[arg(long, value_enum)]
    pub space: SpaceKind,
    /// Cone angle for `--space cone` (e.g. 6.28, tau, 0.9tau, 3pi, inf).
    #[arg(long, value_parser = parse::parse_length, default_value = "tau")]
    pub circumference: f64,
    /// Path to the triangle JSON, or - for stdin. Vertices are (x, y) for the
    /// plane and the crushed half-plane (x = 0 is the crushed point) and
    /// (t, θ) on the cone.
    #[arg(long)]
    pub triangle: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConeArgs {
    #[arg(long, value_parser = parse::parse_length)]
    pub circumference: f64,
    #[arg(long, default_value_t = 200)]
    pub triangles: usize,
    /// Curvature for the cone scan; defaults to --chi.
    #[arg(long, allow_negative_numbers = true)]
    pub cat_test: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BranchedArgs {
    /// Number of sheets, or inf for the universal branched cover.
    #[arg(long, value_parser = parse_sheets)]
    pub sheets: Sheets,
    #[arg(long, default_value_t = 200)]
    pub triangles: usize,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 20)]
    pub probes: usize,
    #[arg(long, default_value_t = 50)]
    pub per_probe: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Sheets {
    Finite(u32),
    Infinite(&'static str),
}

fn parse_sheets(s: &str) -> Result<Sheets, String> {
    if matches!(s.trim(), "inf" | "infinity" | "∞") {
        return Ok(Sheets::Infinite("inf"));
    }
    match s.trim().parse::<u32>() {
        Ok(k) if k >= 1 => Ok(Sheets::Finite(k)),
        _ => Err(format!(
            "sheets must be a positive integer or inf, got {s:?}"
        )),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CrushedArgs {
    #[arg(long, default_value_t = 100)]
    pub triangles: usize,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 20)]
    pub probes: usize,
    #[arg(long, default_value_t = 50)]
    pub per_probe: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CuspMeshArgs {
    #[arg(long, default_value_t = 0.05)]
    pub x_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 200)]
    pub nx: usize,
    #[arg(long, default_value_t = 256)]
    pub nphi: usize,
    /// Ring on which the bigon endpoints sit.
    #[arg(long, default_value_t = 0.5)]
    pub x0: f64,
    /// Skip the run on the mesh with nx and nphi doubled.
    #[arg(long)]
    pub no_refine: bool,
    /// Skip the germ ratios at the cusp.
    #[arg(long)]
    pub no_germs: bool,
    /// Write the mesh graph as JSON.
    #[arg(long)]
    #[serde(skip)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TangentArgs {
    #[arg(long, value_enum)]
    pub space: TangentSpace,
    /// Angle between the rays in the plane.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Heights of the two germs leaving the crushed point.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub y1: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub y2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentSpace {
    Crushed,
    Euclidean,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LatticeSource {
    /// U, U2 (= U ⊕ U), K3, E8, E8-, or Y:p,q,r for the span of Y_{p,q,r}.
    #[arg(long, conflicts_with = "gram", required_unless_present = "gram")]
    pub named: Option<String>,
    /// JSON file holding the Gram matrix as rows of integers or "a/b" strings.
    #[arg(long)]
    pub gram: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum LatticeCommand {
    Signature {
        #[command(flatten)]
        source: LatticeSource,
        /// Expected signature "n+,n0,n-"; the check fails on mismatch.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Exact test of x = re + i·im ∈ Ω(L) for L of signature (2, n).
    Omega {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long)]
        re: String,
        #[arg(long)]
        im: String,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum CoxeterCommand {
    Roots {
        #[arg(long = "type")]
        kind: String,
    },
    /// Roots orthogonal to a point.
    Local {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        point: String,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum SingularityCommand {
    VerifyAlpha {
        #[arg(long, default_value_t = 22)]
        max_sum: usize,
    },
    /// E-set projections, 2+N values and α-sets for one triple.
    Eset {
        p: usize,
        q: usize,
        r: usize,
    },
    DualCycle {
        #[arg(required = true, num_args = 1..)]
        entries: Vec<String>,
    },
    Row {
        p: usize,
        q: usize,
        r: usize,
    },
    /// Every cusp-pair instance with p+q+r up to the bound.
    Table2 {
        #[arg(long, default_value_t = 22)]
        max_sum: usize,
    },
    Weights {
        #[arg(long = "type")]
        label: Option<String>,
    },
}

/// Failures that end a run before a report exists.
#[derive(Debug)]
pub enum RunError {
    Config(String),
    Core(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

impl RunError {
    fn exit_code(&self) -> u8 {
        match self {
            RunError::Core(Error::Invariant(_)) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn validate(common: &Common) -> Result<(), RunError> {
    if common.samples < 8 {
        return Err(RunError::Config(format!(
            "--samples must be at least 8, got {}",
            common.samples
        )));
    }
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(RunError::Config(format!(
            "--tol must be positive, got {}",
            common.tol
        )));
    }
    if !common.chi.is_finite() {
        return Err(RunError::Config("--chi must be finite".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = validate(&cli.common).and_then(|_| commands::run(&cli));
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("catchi: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if cli.common.timing {
        report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cli.common.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("catchi: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_passed() != cli.common.expect_fail {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
