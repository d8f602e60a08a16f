//! `g2flag`: exact checks on split g2 and its flag manifolds, metric
//! classifiers, and analysis of the Ricci flow on the flag of the short root.

mod commands;
mod config;
mod output;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use g2flag::flow::{Chart, Frame};
use g2flag::{FlagId, G2Error, QF13};
use serde::{Serialize, Serializer};

#[derive(Parser, Debug)]
#[command(name = "g2flag", version, about = "Split g2, its real flag manifolds and the Ricci flow on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the exact invariant suite; exits 1 on any failure.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Isotropy, modules and equivariant maps of a flag manifold.
    #[command(args_override_self = true)]
    Flags(FlagsArgs),
    /// Validity and geodesic-orbit verdict of an invariant metric.
    #[command(args_override_self = true)]
    Metric(MetricArgs),
    /// Whether a tangent vector is equigeodesic.
    #[command(args_override_self = true)]
    Equigeodesic(EquigeodesicArgs),
    /// Ricci components of a metric on the flag of the short root.
    #[command(args_override_self = true)]
    Ricci(RicciArgs),
    /// Integrate the flow from an initial state.
    #[command(args_override_self = true)]
    Flow(FlowArgs),
    /// Equilibria and their linearizations in a frame.
    #[command(args_override_self = true)]
    Equilibria(EquilibriaArgs),
    /// Darboux polynomials of the rescaled system.
    #[command(args_override_self = true)]
    Darboux(DarbouxArgs),
    /// The system in a blow-up or Poincare chart.
    #[command(args_override_self = true)]
    Chart(ChartArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Flat key=value file of defaults for the other flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn display_opt<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

/// Comma-separated exact scalars such as `1,3/2,1+2*sqrt13`.
#[derive(Clone, Debug)]
pub struct QList(pub Vec<QF13>);

impl FromStr for QList {
    type Err = G2Error;
    fn from_str(s: &str) -> Result<Self, G2Error> {
        if s.trim().is_empty() {
            return Ok(QList(Vec::new()));
        }
        s.split(',').map(str::parse).collect::<Result<_, _>>().map(QList)
    }
}

impl Serialize for QList {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

/// Three comma-separated reals; exact scalars are accepted too.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Point3(pub [f64; 3]);

impl FromStr for Point3 {
    type Err = G2Error;
    fn from_str(s: &str) -> Result<Self, G2Error> {
        let vals: Vec<f64> = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<f64>().or_else(|_| t.parse::<QF13>().map(|q| q.to_f64_lossy()))
            })
            .collect::<Result<_, _>>()?;
        match <[f64; 3]>::try_from(vals) {
            Ok(a) if a.iter().all(|v| v.is_finite()) => Ok(Point3(a)),
            Ok(_) => Err(G2Error::Parse {
                input: s.into(),
                reason: "coordinates must be finite".into(),
            }),
            Err(v) => Err(G2Error::Parse {
                input: s.into(),
                reason: format!("expected 3 coordinates, got {}", v.len()),
            }),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct FlagsArgs {
    /// One of empty, a1, a2; all three when omitted.
    #[arg(long)]
    #[serde(serialize_with = "display_opt")]
    pub theta: Option<FlagId>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct MetricArgs {
    #[arg(long, default_value = "a2")]
    #[serde(serialize_with = "display")]
    pub theta: FlagId,
    /// Diagonal parameters: six for the full flag, three otherwise.
    #[arg(long)]
    pub mu: QList,
    /// Off-diagonal parameters: three for the full flag, one for a1; zero when omitted.
    #[arg(long)]
    pub offdiag: Option<QList>,
    /// Tangent vector for the witness; all ones when omitted.
    #[arg(long)]
    pub x: Option<QList>,
    /// Random vectors tried by the witness search, on top of basis vectors and their pairwise sums.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = g2flag::sampling::Lcg::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct EquigeodesicArgs {
    #[arg(long, default_value = "a2")]
    #[serde(serialize_with = "display")]
    pub theta: FlagId,
    /// Coordinates of the tangent vector in the module basis.
    #[arg(long)]
    pub x: QList,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct RicciArgs {
    /// `mu1,mu2,mu3`.
    #[arg(long)]
    pub mu: QList,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct FlowArgs {
    /// Initial state in the chosen frame.
    #[arg(long)]
    pub init: Point3,
    /// mu, xyz, kappa1, U1, U2 or U3.
    #[arg(long, default_value = "xyz")]
    #[serde(serialize_with = "display")]
    pub frame: Frame,
    #[arg(long, default_value_t = 50.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: usize,
    /// Number of equally spaced output times; every accepted step when omitted.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: Option<u64>,
    /// CSV file for the trajectory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct EquilibriaArgs {
    /// xyz, kappa1, U1, U2 or U3.
    #[arg(long, default_value = "xyz")]
    #[serde(serialize_with = "display")]
    pub frame: Frame,
    /// Representative of the one-parameter families (z on the z-axis, z1 in kappa1).
    #[arg(long, default_value = "1")]
    #[serde(serialize_with = "display")]
    pub z_star: QF13,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct DarbouxArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub max_degree: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ChartArgs {
    /// kappa1, U1, U2 or U3.
    #[arg(long)]
    #[serde(serialize_with = "display")]
    pub chart: Chart,
    /// Point at which to evaluate the chart system.
    #[arg(long)]
    pub point: Option<Point3>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 3,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<G2Error> for CliError {
    fn from(e: G2Error) -> Self {
        match e {
            G2Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
