//! `forge`: compile, evaluate, translate and check from the command line.
//!
//! Exit status is 0 on success, 1 when the domain answer is negative or a
//! computation fails (invalid proof, oracle mismatch, size cap), and 2 on
//! usage errors, including unbound variables and unreadable inputs.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "forge", version, about = "Bounded arithmetic workbench")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a machine's acceptance predicate to a Σ^B_1 formula.
    CompileAcc(CompileAcc),
    /// Compile time-space bounded acceptance to a Σ^B_0 formula.
    CompileNepo(CompileNepo),
    /// Evaluate a formula on a finite slice.
    Eval(Eval),
    /// Translate a Σ^B_0 formula into a propositional formula.
    Translate(Translate),
    /// Evaluate a monotone formula tree and its MFV witness.
    Mfv(Mfv),
    /// Check a sequent proof.
    CheckProof(CheckProof),
    /// Build and decide a bounded reflection instance.
    Reflect(Reflect),
    /// Compare compiled formulas against the simulator.
    OracleTest(OracleTest),
}

#[derive(Debug, Args)]
pub struct CompileAcc {
    #[arg(long)]
    pub tm: PathBuf,
    /// Time bound coefficients, lowest degree first.
    #[arg(long, default_value = "2,1")]
    pub poly: String,
    /// Emit REACH(Y, Yp) instead of acceptance.
    #[arg(long)]
    pub reach: bool,
}

#[derive(Debug, Args)]
pub struct CompileNepo {
    #[arg(long)]
    pub tm: PathBuf,
    #[arg(long)]
    pub m: u64,
    /// Time exponent: the machine runs `m^c` steps.
    #[arg(long, default_value_t = 1)]
    pub c: u32,
    /// Space exponent as `p/q`.
    #[arg(long)]
    pub eps: String,
    #[arg(long)]
    pub k: u32,
    /// Recursion depth; defaults to the least that covers `m^c`.
    #[arg(long)]
    pub d: Option<u32>,
    /// Emit `Reach^level` instead of acceptance.
    #[arg(long)]
    pub level: Option<u32>,
}

#[derive(Debug, Args)]
pub struct Eval {
    #[arg(long)]
    pub formula: PathBuf,
    #[arg(long)]
    pub num_bound: u64,
    #[arg(long, default_value_t = 16)]
    pub str_width: usize,
    /// String binding `X=0101`; repeatable.
    #[arg(long = "bind")]
    pub binds: Vec<String>,
    /// Number binding `x=3`; repeatable.
    #[arg(long = "val")]
    pub vals: Vec<String>,
    /// Decide string quantifiers with the SAT solver instead of expanding.
    #[arg(long)]
    pub lifted: bool,
}

#[derive(Debug, Args)]
pub struct Translate {
    #[arg(long)]
    pub formula: PathBuf,
    /// String length `X=3`; repeatable.
    #[arg(long = "len")]
    pub lens: Vec<String>,
    /// Number value `x=2`; repeatable.
    #[arg(long = "val")]
    pub vals: Vec<String>,
    /// Fold constants before printing.
    #[arg(long)]
    pub simplify: bool,
}

#[derive(Debug, Args)]
pub struct Mfv {
    /// Gate labels `G`, position 0 ignored (1 is ∧, 0 is ∨).
    #[arg(long)]
    pub tree: String,
    /// Leaf count, a power of two.
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct CheckProof {
    #[arg(long)]
    pub proof: PathBuf,
    /// Check as a depth-`d` Frege proof.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Target formula; defaults to the last line's single succedent.
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Debug, Args)]
pub struct Reflect {
    /// `frege` or `depth:<d>`.
    #[arg(long, default_value = "frege")]
    pub system: String,
    /// Length bound: coefficients lowest degree first, or a constant.
    #[arg(long)]
    pub t: String,
    #[arg(long)]
    pub x: u64,
    /// Decide by direct enumeration instead of evaluating the sentence.
    #[arg(long)]
    pub sweep: bool,
    /// Use the checker that skips the axiom shape test.
    #[arg(long)]
    pub broken: bool,
    /// Also print the sentence.
    #[arg(long)]
    pub emit: bool,
}

#[derive(Debug, Args)]
pub struct OracleTest {
    #[arg(long)]
    pub tm: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[arg(long, default_value = "2,1")]
    pub poly: String,
    /// Witness mutations sampled per accepted input.
    #[arg(long, default_value_t = 64)]
    pub mutations: usize,
}

pub enum Failure {
    /// Bad arguments for the named subcommand.
    Usage(&'static str, String),
    /// The computation could not be carried out.
    Domain(String),
}

/// What a subcommand prints; `ok = false` exits with status 1.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("reports serialize"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(sub, msg)) => {
            eprintln!("error: {msg}");
            let mut cmd = Cli::command();
            cmd.build();
            if let Some(sc) = cmd.find_subcommand_mut(sub) {
                eprintln!("{}", sc.render_usage());
            }
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
