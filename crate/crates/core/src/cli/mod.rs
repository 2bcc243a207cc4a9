//! Command-line front end. The binary only forwards to [`run`].
//!
//! Exit codes: 0 ok, 1 input error, 2 infeasible demand, 3 synthesis failure,
//! 4 verification failure.

pub mod dot;
pub mod files;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::netgraph::{Demand, Network};
use crate::planner::{check_feasibility, synthesize_with, verify_plan, SynthesisOptions, DEFAULT_FIELD_BITS};
use files::{NetworkFile, PlanFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_SYNTHESIS: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

pub const DEFAULT_SEED: u64 = 1;

/// Feasibility checks and hybrid routing + network-coding plans for networks
/// with one source and two terminals.
///
/// Rates and capacities are nonnegative integers in symbols per network use.
/// Scale rational rates to a common denominator before use.
#[derive(Debug, Parser)]
#[command(name = "twosink", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the three min-cuts with a demand.
    Check {
        network: PathBuf,
        #[command(flatten)]
        demand: DemandArgs,
    },
    /// Build a transmission plan.
    Synthesize {
        network: PathBuf,
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Width m of the first field GF(2^m) tried for the common messages.
        #[arg(long, default_value_t = DEFAULT_FIELD_BITS)]
        field_bits: u32,
        /// Plan output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the rerouting steps as JSON lines to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Simulate a plan with random messages.
    Verify {
        network: PathBuf,
        plan: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the random test messages.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render the network (and optionally a plan) in Graphviz DOT.
    ExportDot {
        network: PathBuf,
        plan: Option<PathBuf>,
        /// Also draw the virtual terminals and collectors for the demand.
        #[arg(long)]
        augmented: bool,
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct DemandArgs {
    #[arg(long, default_value_t = 0)]
    pub h0: u32,
    #[arg(long, default_value_t = 0)]
    pub h1: u32,
    #[arg(long, default_value_t = 0)]
    pub h2: u32,
}

impl From<DemandArgs> for Demand {
    fn from(a: DemandArgs) -> Self {
        Demand::new(a.h0, a.h1, a.h2)
    }
}

fn load_network(path: &Path) -> Result<Network, Error> {
    NetworkFile::load(path)?.to_network()
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::UnknownNode(_)
        | Error::UnknownEdge(_)
        | Error::PlanMismatch(_)
        | Error::Io(_)
        | Error::Json(_) => EXIT_INPUT,
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        _ => EXIT_SYNTHESIS,
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs one command, writing normal output to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Check { network, demand } => {
            let net = load_network(&network)?;
            let report = check_feasibility(&net, demand.into())?;
            writeln!(out, "{report}")?;
            Ok(if report.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Synthesize { network, demand, seed, field_bits, output, trace } => {
            let net = load_network(&network)?;
            let d: Demand = demand.into();
            let report = match synthesize_with(&net, d, SynthesisOptions { seed, field_bits }) {
                Ok(r) => r,
                Err(Error::Infeasible(f)) => {
                    writeln!(err, "{f}")?;
                    return Ok(EXIT_INFEASIBLE);
                }
                Err(e) => return Err(e),
            };
            if let Some(path) = trace {
                let mut lines = String::new();
                for (pass, p) in [(1, &report.passes.first), (2, &report.passes.second)] {
                    for (i, step) in p.trace.steps.iter().enumerate() {
                        let mut v = serde_json::to_value(step)?;
                        v["pass"] = pass.into();
                        v["step"] = i.into();
                        lines.push_str(&serde_json::to_string(&v)?);
                        lines.push('\n');
                    }
                }
                std::fs::write(path, lines)?;
            }
            write_output(output.as_deref(), &PlanFile::from_plan(&report.plan).to_json(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { network, plan, trials, seed } => {
            let net = load_network(&network)?;
            let plan = PlanFile::load(&plan)?.to_plan()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = verify_plan(&net, &plan, trials, &mut rng)?;
            if report.all_passed() {
                writeln!(out, "OK ({}/{} trials decoded exactly)", report.passed, report.trials)?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "FAILED ({}/{} trials decoded exactly)", report.passed, report.trials)?;
                for f in &report.failures {
                    writeln!(err, "mismatch: {f}")?;
                }
                Ok(EXIT_VERIFY)
            }
        }
        Command::ExportDot { network, plan, augmented, demand, output } => {
            let net = load_network(&network)?;
            let plan = plan.map(|p| PlanFile::load(&p)?.to_plan()).transpose()?;
            let aug = augmented.then(|| demand.into());
            write_output(output.as_deref(), &dot::export_dot(&net, plan.as_ref(), aug), out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    }
}
