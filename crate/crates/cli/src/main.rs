mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use asseq::Error;

#[derive(Parser)]
#[command(name = "asseq", version, about = "Absolutely superficial sequences over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_pair(s: &str) -> Result<[u32; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated integers, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok([p(a)?, p(b)?])
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Problem file (TOML).
    pub problem: PathBuf,
    /// Print a machine-readable JSON report.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub d_max: Option<u32>,
    /// Bounds `m,n` for the bounded colon-power check.
    #[arg(long, value_parser = parse_pair)]
    pub bounds: Option<[u32; 2]>,
    /// Window `lo,hi` of exponents for the bounded superficial check.
    #[arg(long, value_parser = parse_pair)]
    pub window: Option<[u32; 2]>,
    /// Shifts `c,d` for the bounded superficial check.
    #[arg(long, value_parser = parse_pair, default_value = "1,1")]
    pub shift: [u32; 2],
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cross-check condition (v) against (iv) and bounded (vi).
    #[arg(long)]
    pub verify: bool,
    /// Run diagnostics even when a precondition fails.
    #[arg(long)]
    pub force: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndepMode {
    Colon,
    Length,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOp {
    Colon,
    ColonIdeal,
    Intersect,
    Sum,
    Product,
    Power,
    Saturate,
    Length,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Linear,
    Monomial,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the sequence is absolutely superficial and run the related checks.
    Classify(Common),
    /// Tabulate l(M/q^{n+1}M) against the e-invariant bound.
    Hs(Common),
    /// Print the invariants e_0..e_r.
    Einv(Common),
    /// Check N-independence of the sequence.
    Indep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "both")]
        mode: IndepMode,
        /// Power of q used by the length criterion.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Compare vanishing forms of degree ≤ d_max with those generated by linear ones.
    Rees {
        #[command(flatten)]
        common: Common,
        /// Truncation degree (default d_max · max deg a_i + 4).
        #[arg(long)]
        k: Option<u32>,
    },
    /// Compare G_q(M/q_iM) with G_q(M)/q_iG_q(M) degree by degree.
    Graded {
        #[command(flatten)]
        common: Common,
        /// Only this prefix length (default: all).
        #[arg(long)]
        index: Option<usize>,
    },
    /// Tabulate l(M/a^{n+1}M) against the bound with auxiliary ideal a.
    AuxBound(Common),
    /// Run an ideal operation through Gröbner bases and the monomial oracle.
    OracleDiff {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "colon")]
        op: OracleOp,
        /// Exponent for `--op power`.
        #[arg(long, default_value_t = 2)]
        power: u32,
        /// Corrupt the Gröbner side to exercise the differ.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Sample random systems of parameters and compare l(M/qM) - e(q;M).
    SampleSop {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value = "linear")]
        mode: SampleMode,
    },
}

/// What a command produced: a report in both renderings, and whether it
/// uncovered an internal inconsistency.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub violation: bool,
}

fn run(cli: Cli) -> asseq::Result<(Outcome, bool)> {
    let (outcome, json) = match cli.command {
        Command::Classify(c) => (commands::classify(&c)?, c.json),
        Command::Hs(c) => (commands::hs(&c)?, c.json),
        Command::Einv(c) => (commands::einv(&c)?, c.json),
        Command::Indep { common, mode, n } => (commands::indep(&common, mode, n)?, common.json),
        Command::Rees { common, k } => (commands::rees(&common, k)?, common.json),
        Command::Graded { common, index } => (commands::graded(&common, index)?, common.json),
        Command::AuxBound(c) => (commands::aux_bound(&c)?, c.json),
        Command::OracleDiff { common, op, power, inject_fault } => {
            (commands::oracle_diff(&common, op, power, inject_fault)?, common.json)
        }
        Command::SampleSop { common, count, mode } => (commands::sample_sop(&common, count, mode)?, common.json),
    };
    Ok((outcome, json))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((outcome, json)) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json).expect("reports serialize"))
            } else {
                write!(out, "{}", outcome.text)
            };
            ExitCode::from(if outcome.violation { 2 } else { 0 })
        }
        Err(e @ Error::PropertyViolation(_)) => {
            eprintln!("internal property violation: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
