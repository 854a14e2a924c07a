use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mts_spectrum::logic::Fragment;
use mts_spectrum::UnitValue;

#[derive(Debug, Parser)]
#[command(
    name = "mts-spectrum",
    version,
    about = "Behavioural equivalences and distances on metric transition systems"
)]
pub struct Cli {
    /// Iteration budget for every fixpoint computation.
    #[arg(long, global = true, value_name = "N")]
    pub max_iter: Option<usize>,
    /// Enumerate every Δ subset in trace steps instead of threshold sets.
    #[arg(long, global = true)]
    pub brute_delta: bool,
    /// Shift constants k/q for metric logics; 0 disables shifts.
    #[arg(long, global = true, value_name = "Q")]
    pub shift_grid: Option<i64>,
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a qualitative semantics on state pairs.
    Equiv(EquivArgs),
    /// Compute a distance between two sets of states.
    Dist(DistArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate a modal formula on every state.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    pub file: PathBuf,
    #[arg(value_enum)]
    pub semantics: EquivSemantics,
    /// Comma-separated `x:y` pairs; all related pairs are listed when absent.
    #[arg(long)]
    pub pairs: Option<String>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    pub file: PathBuf,
    #[arg(value_enum)]
    pub semantics: DistSemantics,
    /// Set expression such as `{x,y}`.
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(value_enum)]
    pub suite: Suite,
    /// Logic fragment for `hm`; every fragment when absent.
    #[arg(long, value_parser = parse_fragment)]
    pub fragment: Option<Fragment>,
    /// Saturation depth for `hm`.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Threshold for `game`; bisection over all candidates when absent.
    #[arg(long, value_parser = parse_unit)]
    pub epsilon: Option<UnitValue>,
    /// Restrict pair-based suites to one argument pair.
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    #[arg(long, requires = "from")]
    pub to: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub file: PathBuf,
    pub formula: String,
    #[arg(long, value_parser = parse_fragment)]
    pub fragment: Fragment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquivSemantics {
    Bisim,
    Sim,
    Trace,
    Completed,
    Failure,
    Ready,
    PossibleFutures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistSemantics {
    BisimM,
    SimM,
    TraceM,
    CompletedM,
    FailureDisc,
    FailureHaus,
    FailurePseudo,
    ReadyDisc,
    ReadyHaus,
    PossibleFuturesM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Hm,
    Game,
    Hierarchy,
}

fn parse_fragment(s: &str) -> Result<Fragment, String> {
    s.parse()
}

fn parse_unit(s: &str) -> Result<UnitValue, String> {
    s.parse().map_err(|e| format!("{e}"))
}

pub fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}
