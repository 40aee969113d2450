//! `setpair`: verify, weigh, construct, certify and search set-pair and
//! d-partition systems stored as JSON lines.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use setpair_core::exterior::{DEFAULT_MAX_TRIES, DEFAULT_PRIME};
use setpair_core::Variant;

#[derive(Parser, Debug)]
#[command(name = "setpair", version, about = "Bollobás-type set-pair systems: verifiers, constructions, certificates and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check each system in a JSON-lines file; prints the first failing cell.
    Verify(VerifyArgs),
    /// Exact weight of each system with the applicable bound.
    Weight(WeightArgs),
    /// Emit one of the extremal constructions as a JSON line.
    Construct(ConstructArgs),
    /// Issue exterior-algebra certificates for set-pair systems.
    Certify(CertifyArgs),
    /// Exhaustive or budgeted search for an optimum.
    Search(SearchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Strong,
    Skew,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Strong => Variant::Strong,
            VariantArg::Skew => Variant::Skew,
        }
    }
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Write the JSON report (or constructed system) here instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    input: String,
    #[arg(long, value_enum, default_value = "strong", conflicts_with_all = ["skew", "strong"])]
    variant: VariantArg,
    /// Shorthand for `--variant skew`.
    #[arg(long)]
    skew: bool,
    /// Shorthand for `--variant strong`.
    #[arg(long)]
    strong: bool,
    /// Intersection threshold for set-pair t-systems.
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[command(flatten)]
    out: OutputArg,
}

impl VerifyArgs {
    fn variant(&self) -> Variant {
        if self.skew {
            Variant::Skew
        } else if self.strong {
            Variant::Strong
        } else {
            self.variant.into()
        }
    }
}

#[derive(Args, Debug)]
struct WeightArgs {
    input: String,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Construction {
    FullPowerSet,
    Furedi,
    TSystem,
    LexDpartitions,
    FullDpartitions,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Construction,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Block sizes for full-dpartitions, e.g. `2,1,1`.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    input: String,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    field_prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// General-position draws allowed per system.
    #[arg(long, default_value_t = DEFAULT_MAX_TRIES)]
    max_tries: usize,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    SkewWeight,
    EqualityStructure,
    StrongWeight,
    TSystemSize,
    DpartitionWeight,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Unrestricted,
    FullPairs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(value_enum)]
    problem: Problem,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value = "skew")]
    variant: VariantArg,
    /// Candidate pool for skew-weight.
    #[arg(long, value_enum, default_value = "unrestricted")]
    mode: ModeArg,
    /// Stop after this many search nodes.
    #[arg(long, env = "SETPAIR_NODE_BUDGET")]
    node_budget: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long, env = "SETPAIR_TIME_BUDGET")]
    time_budget: Option<f64>,
    #[command(flatten)]
    out: OutputArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => commands::verify(args),
        Command::Weight(args) => commands::weight(args),
        Command::Construct(args) => commands::construct(args),
        Command::Certify(args) => commands::certify(args),
        Command::Search(args) => commands::search(args),
    };
    match outcome {
        Ok(status) => ExitCode::from(status as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.status as u8)
        }
    }
}
