//! Command-line front end: enumerate factor plans with capacity tables,
//! run superdense coding rounds, sweep every lawful message, and verify
//! the algebra behind the protocol.
//!
//! Exit codes are a function of the outcome class only:
//! 0 success, 2 invalid arguments, 3 unlawful sender action, 4 decode
//! ambiguity, 5 failed verification.

mod checks;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudsim::protocol::{capacity, run_roundtrip, sweep_all, CodebookMode};
use qudsim::radix::{
    enumerate_factor_plans, enumerate_factor_plans_up_to, Dimension, FactorPlan,
};
use qudsim::{Error, SenderAction};

use checks::CheckName;
use output::{comma_list, render_plan_table, OutputFormat, TranscriptJson};

/// Tolerance for state-level checks; `QUDSIM_TOL` overrides the default.
const DEFAULT_STATE_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "qudsim",
    version,
    about = "Qudit superdense coding: plans, protocol rounds, and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List factor plans of a dimension with per-sender and total capacities
    Plan(PlanArgs),
    /// Run one protocol round and print its JSON transcript
    Run(RunArgs),
    /// Check protocol invariants for one plan
    Verify(VerifyArgs),
    /// Encode and decode every lawful message of a plan
    Sweep(SweepArgs),
}

#[derive(Args)]
struct PlanArgs {
    /// Qudit dimension
    #[arg(long)]
    d: usize,

    /// Number of senders
    #[arg(long)]
    senders: usize,

    /// Enumerate ordered factor tuples instead of canonical multisets
    #[arg(long)]
    ordered: bool,

    /// Include plans whose factor product falls short of d
    #[arg(long = "allow-delta-lt-d")]
    allow_delta_lt_d: bool,

    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Args)]
struct RunArgs {
    /// Qudit dimension
    #[arg(long)]
    d: usize,

    /// Comma-separated factors, one per sender
    #[arg(long, value_delimiter = ',', required = true)]
    factors: Vec<usize>,

    /// Particle layout
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,

    /// Explicit actions as n:i pairs, one per sender (e.g. 2:1,1:3)
    #[arg(long, value_delimiter = ',', value_parser = parse_action_spec, conflicts_with = "random")]
    actions: Option<Vec<ActionSpec>>,

    /// Draw actions uniformly from each sender set and the shift range
    #[arg(long)]
    random: bool,

    /// Seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Include the final state's amplitudes in the transcript
    #[arg(long = "dump-state")]
    dump_state: bool,

    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Qudit dimension
    #[arg(long)]
    d: usize,

    /// Comma-separated factors, one per sender
    #[arg(long, value_delimiter = ',', required = true)]
    factors: Vec<usize>,

    /// Checks to run (default: all)
    #[arg(long, value_delimiter = ',', value_enum)]
    checks: Option<Vec<CheckName>>,

    /// Particle layout used by the gram and roundtrip checks
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,

    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Qudit dimension
    #[arg(long)]
    d: usize,

    /// Comma-separated factors, one per sender
    #[arg(long, value_delimiter = ',', required = true)]
    factors: Vec<usize>,

    /// Particle layout
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,

    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ModeArg {
    Full,
    Reduced,
}

impl From<ModeArg> for CodebookMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Full => CodebookMode::Full,
            ModeArg::Reduced => CodebookMode::Reduced,
        }
    }
}

/// One sender's `n:i` pair from the command line.
#[derive(Debug, Clone, Copy)]
struct ActionSpec {
    phase: usize,
    shift: usize,
}

fn parse_action_spec(raw: &str) -> Result<ActionSpec, String> {
    let (n, i) = raw
        .split_once(':')
        .ok_or_else(|| format!("expected n:i, got `{raw}`"))?;
    let phase = n
        .trim()
        .parse()
        .map_err(|_| format!("bad phase index in `{raw}`"))?;
    let shift = i
        .trim()
        .parse()
        .map_err(|_| format!("bad shift index in `{raw}`"))?;
    Ok(ActionSpec { phase, shift })
}

/// A failure with its process exit code; diagnostics go to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn args(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn from_error(err: Error) -> Self {
        let code = match err {
            Error::UnlawfulPhase { .. } => 3,
            Error::DecodeAmbiguous { .. } => 4,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("qudsim: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn parse_dimension(d: usize) -> Result<Dimension, Failure> {
    Dimension::new(d).map_err(|e| Failure::args(e.to_string()))
}

fn parse_plan(d: usize, factors: &[usize]) -> Result<FactorPlan, Failure> {
    let dim = parse_dimension(d)?;
    FactorPlan::new(dim, factors).map_err(|e| Failure::args(e.to_string()))
}

fn state_tolerance() -> Result<f64, Failure> {
    match std::env::var("QUDSIM_TOL") {
        Ok(raw) => raw
            .parse::<f64>()
            .ok()
            .filter(|tol| tol.is_finite() && *tol > 0.0)
            .ok_or_else(|| Failure::args(format!("QUDSIM_TOL must be a positive number, got `{raw}`"))),
        Err(_) => Ok(DEFAULT_STATE_TOL),
    }
}

fn cmd_plan(args: PlanArgs) -> Result<u8, Failure> {
    let dim = parse_dimension(args.d)?;
    if args.senders < 1 {
        return Err(Failure::args("at least one sender is required"));
    }
    let canonical = !args.ordered;
    let plans = if args.allow_delta_lt_d {
        enumerate_factor_plans_up_to(dim, args.senders, canonical)
    } else {
        enumerate_factor_plans(dim, args.senders, canonical)
    };
    let rows: Vec<(FactorPlan, qudsim::CapacityReport)> = plans
        .into_iter()
        .map(|plan| {
            let report = capacity(&plan);
            (plan, report)
        })
        .collect();
    print!("{}", render_plan_table(&rows, args.output));
    Ok(0)
}

fn cmd_run(args: RunArgs) -> Result<u8, Failure> {
    let plan = parse_plan(args.d, &args.factors)?;
    let mode: CodebookMode = args.mode.into();

    let specs: Vec<ActionSpec> = match (&args.actions, args.random) {
        (Some(specs), false) => specs.clone(),
        (None, true) => draw_random_actions(&plan, args.seed)?,
        (None, false) => {
            return Err(Failure::args(
                "provide --actions n:i,... or --random (see --help)",
            ))
        }
        (Some(_), true) => unreachable!("clap rejects --actions with --random"),
    };
    if specs.len() != plan.num_senders() {
        return Err(Failure::args(format!(
            "expected {} actions, got {}",
            plan.num_senders(),
            specs.len()
        )));
    }
    let actions: Vec<SenderAction> = specs
        .iter()
        .enumerate()
        .map(|(idx, spec)| SenderAction {
            sender: idx + 1,
            phase: spec.phase,
            shift: spec.shift,
        })
        .collect();

    let transcript = run_roundtrip(&plan, mode, &actions).map_err(Failure::from_error)?;
    let ok = transcript.is_faithful();
    match args.output {
        OutputFormat::Json => {
            let json = TranscriptJson::from_transcript(&transcript, args.dump_state);
            println!(
                "{}",
                serde_json::to_string(&json).expect("transcript serializes")
            );
        }
        OutputFormat::Text => {
            println!(
                "plan {} mode {} decoded n={} i=[{}] ok={}",
                transcript.plan,
                transcript.mode,
                transcript.decoded.phase,
                comma_list(&transcript.decoded.shifts),
                ok
            );
        }
        OutputFormat::Csv => {
            return Err(Failure::args("run does not support csv output"));
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn draw_random_actions(plan: &FactorPlan, seed: u64) -> Result<Vec<ActionSpec>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = plan.dimension().get();
    (1..=plan.num_senders())
        .map(|k| {
            let set = plan.sender_set(k).map_err(Failure::from_error)?;
            let members = set.members();
            Ok(ActionSpec {
                phase: members[rng.random_range(0..members.len())],
                shift: rng.random_range(0..d),
            })
        })
        .collect()
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let plan = parse_plan(args.d, &args.factors)?;
    let mode: CodebookMode = args.mode.into();
    let state_tol = state_tolerance()?;
    let names = args.checks.unwrap_or_else(CheckName::all);

    let mut outcomes = Vec::new();
    for name in names {
        let outcome =
            checks::run_check(name, &plan, mode, state_tol).map_err(Failure::from_error)?;
        outcomes.push(outcome);
    }
    let all_pass = outcomes.iter().all(|o| o.pass);
    match args.output {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string(&outcomes).expect("outcomes serialize")
            );
        }
        OutputFormat::Text => {
            for o in &outcomes {
                println!(
                    "{:<10} {}  {} (tol {:.1e})",
                    o.check,
                    if o.pass { "pass" } else { "FAIL" },
                    o.detail,
                    o.tolerance
                );
            }
        }
        OutputFormat::Csv => {
            return Err(Failure::args("verify does not support csv output"));
        }
    }
    Ok(if all_pass { 0 } else { 5 })
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, Failure> {
    let plan = parse_plan(args.d, &args.factors)?;
    let mode: CodebookMode = args.mode.into();
    let started = Instant::now();
    let summary = sweep_all(&plan, mode).map_err(Failure::from_error)?;
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    match args.output {
        OutputFormat::Json => {
            let json = output::SweepJson {
                rounds: summary.rounds,
                failures: summary.failures,
                wall_time_ms,
            };
            println!("{}", serde_json::to_string(&json).expect("summary serializes"));
        }
        OutputFormat::Text => {
            println!(
                "rounds={} failures={} wall_time_ms={:.1}",
                summary.rounds, summary.failures, wall_time_ms
            );
        }
        OutputFormat::Csv => {
            return Err(Failure::args("sweep does not support csv output"));
        }
    }
    Ok(if summary.failures == 0 { 0 } else { 5 })
}
