//! `wguide`: generate instances, solve the fractional program, build and
//! verify guidance systems, answer queries and approximate domination.
//!
//! Exit status: 0 success or valid, 1 invalid input object (failed
//! verification or precondition), 2 usage or format error, 3 internal error.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manifest::Manifest;

#[derive(Parser, Debug)]
#[command(name = "wguide", version, about = "Weak r-guidance systems: construction, verification and queries")]
pub struct Cli {
    /// Worker threads. Every stage currently runs sequentially, so results
    /// are identical for any value.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,

    /// Write a run manifest here; `wguide replay` re-runs it.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance family.
    Gen(GenArgs),
    /// Solve the fractional guidance program.
    Lp(LpArgs),
    /// Build an orientation with one of the constructions.
    Build(BuildArgs),
    /// Check an orientation or fractional orientation.
    Verify(VerifyArgs),
    /// Answer distance queries through a guidance system.
    Query(QueryArgs),
    /// Approximate r-domination and 2r-independence.
    Dominate(DominateArgs),
    /// Evaluate a dual lower-bound certificate.
    Lowerbound(LowerboundArgs),
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Petersen,
    Random,
    Interval,
    Universal,
    StarPower,
    Gak,
    Split,
    HalfgraphHard,
    TreeModel,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub family: Family,
    /// Output prefix; `.gr`, `.meta` and family-specific files are written.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for `random`.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub leaves: Option<usize>,
    /// Base graph for `universal` (default: edgeless on `--n` vertices).
    #[arg(long)]
    pub base: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LpArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub r: usize,
    /// Solve in exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,
    /// Fractional orientation output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dual certificate output, readable by `lowerbound`.
    #[arg(long)]
    pub dual: Option<PathBuf>,
    /// Dump the program in CPLEX LP format.
    #[arg(long)]
    pub dump_lp: Option<PathBuf>,
    #[arg(long, default_value_t = wguide::lp::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Round,
    VcRound,
    Interval,
    PowerLift,
    CutCompose,
    TreeModel,
    Complete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Greedy,
    EpsNet,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub method: Method,
    /// Input graph; `interval` and `tree-model` derive it from their model
    /// and only compare when given.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Where to write the graph the orientation lives on, for methods
    /// that produce a new graph.
    #[arg(long)]
    pub graph_out: Option<PathBuf>,
    /// Fractional input for `round` and `vc-round`.
    #[arg(long)]
    pub fractional: Option<PathBuf>,
    /// Orientation input for `power-lift` and `complete`.
    #[arg(long)]
    pub guidance: Option<PathBuf>,
    #[arg(long)]
    pub intervals: Option<PathBuf>,
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    #[arg(long)]
    pub tree_model: Option<PathBuf>,
    /// Power for `power-lift`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Strategy::Greedy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Type-enumeration budget for `tree-model`.
    #[arg(long, default_value_t = wguide::synthesize::DEFAULT_TYPE_BUDGET)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Weak,
    /// r-guidance: distances 1..=r through a meeting vertex.
    Strict,
    /// r⁺-guidance: distances 2..=r.
    Plus,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, conflicts_with = "fractional", required_unless_present = "fractional")]
    pub guidance: Option<PathBuf>,
    #[arg(long)]
    pub fractional: Option<PathBuf>,
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t = Mode::Weak)]
    pub mode: Mode,
    #[arg(long, default_value_t = wguide::lp::DEFAULT_TOL)]
    pub tol: f64,
    /// Also write the report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, conflicts_with = "fractional", required_unless_present = "fractional")]
    pub guidance: Option<PathBuf>,
    #[arg(long)]
    pub fractional: Option<PathBuf>,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub pairs: PathBuf,
    /// `k` in the `e^{-k}` error bound of fractional queries.
    #[arg(long, default_value_t = 10.0)]
    pub confidence: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct DominateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub guidance: PathBuf,
    #[arg(long)]
    pub r: usize,
    /// Use the weak-guidance algorithm; needs `--c` and `--k`.
    #[arg(long, requires_all = ["c", "k"])]
    pub weak: bool,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Node budget for the (r, k)-halfgraph search run with `--weak`.
    #[arg(long, default_value_t = 1_000_000)]
    pub halfgraph_budget: u64,
}

#[derive(Args, Debug)]
pub struct LowerboundArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, conflicts_with = "girth5", required_unless_present = "girth5")]
    pub certificate: Option<PathBuf>,
    /// Use the girth-5 certificate on the whole vertex set instead.
    #[arg(long)]
    pub girth5: bool,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Write the certificate used.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<wguide::Error> for Failure {
    fn from(e: wguide::Error) -> Self {
        use wguide::Error as E;
        let code = match e {
            E::Precondition(_) | E::NotAnEdge { .. } | E::DistanceUnknown { .. } => 1,
            E::InvalidGraph(_) | E::VertexOutOfRange { .. } | E::InvalidParameter(_) | E::Parse { .. } | E::Io(_) => 2,
            E::Invariant(_) | E::BudgetExhausted { .. } | E::Numerical(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

/// Output collected during a run.
#[derive(Default)]
pub struct Run {
    pub stdout: String,
    pub outputs: Vec<PathBuf>,
    pub inputs: Vec<PathBuf>,
    /// Exit status when no error occurred.
    pub status: u8,
}

fn execute(args: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Command::Replay { manifest } = &cli.command {
        return match Manifest::read(manifest) {
            Ok(m) => execute(m.argv()),
            Err(f) => {
                eprintln!("error: {}", f.message);
                ExitCode::from(f.code)
            }
        };
    }
    let start = Instant::now();
    let mut run = Run::default();
    let result = commands::dispatch(&cli.command, &mut run);
    print!("{}", run.stdout);
    let code = match &result {
        Ok(()) => run.status,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    if let Some(path) = &cli.manifest {
        let m = Manifest::new(&args, &run, code, start.elapsed());
        if let Err(e) = m.write(path) {
            eprintln!("error: cannot write manifest: {}", e.message);
            return ExitCode::from(3);
        }
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    execute(std::env::args().collect())
}
