use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use netreg::discrimination::{two_type_welfare_direction, verify_two_type, welfare_direction_large_delta};
use netreg::regulation::{classify_limit, equilibrium_outcome, pareto_certificate, Certificate};
use netreg_cli::{emit_csv, parse_scenario, run_named_experiment, run_sweep, EXPERIMENTS};

#[derive(Parser)]
#[command(name = "netreg", version, about = "Pricing and regulation under network demand spillovers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the spillover intensity over a scenario's grid and write CSV.
    Sweep {
        scenario: PathBuf,
        /// Output file (standard output if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a named figure experiment, writing one CSV per curve family.
    Experiment {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXPERIMENTS))]
        name: String,
        /// Output directory.
        #[arg(short, long, default_value = ".")]
        output: PathBuf,
    },
    /// Efficiency certificate, large-spillover classification and welfare
    /// direction of a scenario.
    Analyze {
        scenario: PathBuf,
        /// Spillover intensity for the certificate, as a fraction of 1/λ₁.
        #[arg(long, default_value_t = 0.5)]
        fraction: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let numerical = e.chain().any(|c| c.downcast_ref::<netreg::Error>().is_some_and(|n| n.is_numerical()));
            ExitCode::from(if numerical { 2 } else { 1 })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep { scenario, output } => {
            let scenario = parse_scenario(&read(&scenario)?)?;
            let rows = run_sweep(&scenario)?;
            match output {
                Some(path) => {
                    let mut buf = Vec::new();
                    emit_csv(&rows, &mut buf)?;
                    fs::write(&path, buf).with_context(|| format!("writing {}", path.display()))?;
                }
                None => emit_csv(&rows, &mut io::stdout().lock())?,
            }
        }
        Command::Experiment { name, output } => {
            fs::create_dir_all(&output).with_context(|| format!("creating {}", output.display()))?;
            for run in run_named_experiment(&name)? {
                let path = output.join(format!("{}.csv", run.label));
                let mut buf = Vec::new();
                emit_csv(&run.rows, &mut buf)?;
                fs::write(&path, buf).with_context(|| format!("writing {}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Analyze { scenario, fraction } => {
            if !(fraction >= 0.0 && fraction < 1.0) {
                anyhow::bail!(netreg::Error::Validation(format!("fraction = {fraction} must lie in [0, 1)")));
            }
            let scenario = parse_scenario(&read(&scenario)?)?;
            analyze(&scenario, fraction, &mut io::stdout().lock())?;
        }
    }
    Ok(())
}

fn analyze(scenario: &netreg_cli::Scenario, fraction: f64, out: &mut impl Write) -> Result<()> {
    let net = scenario.net();
    let delta = fraction / net.lambda1();
    let prim = scenario.primitives(delta)?;
    let k = scenario.regulation_set();
    writeln!(out, "regulation: {}", k.kind_name())?;
    writeln!(out, "lambda1: {}", net.lambda1())?;
    writeln!(out, "delta: {delta}")?;
    let outcome = equilibrium_outcome(&prim, k)?;
    writeln!(out, "r_v_star: {}", outcome.r_v)?;
    writeln!(out, "r_pi_star: {}", outcome.r_pi)?;
    match pareto_certificate(&prim, k) {
        Ok(Certificate::Efficient { eta }) => writeln!(out, "certificate: efficient (eta = {eta})")?,
        Ok(Certificate::Inefficient(reason)) => writeln!(out, "certificate: inefficient ({reason})")?,
        Err(netreg::Error::Unsupported(what)) => writeln!(out, "certificate: unsupported ({what})")?,
        Err(e) => return Err(e.into()),
    }
    let limit = classify_limit(&prim, k)?;
    writeln!(
        out,
        "limit: {:?}, A* = {}, A(K) = [{}, {}]{}",
        limit.label,
        limit.a_star,
        limit.a_interval.lo,
        limit.a_interval.hi,
        if limit.a_interval.approximate { " (approximate)" } else { "" }
    )?;
    writeln!(out, "limit ratios: r_v = {}, r_pi = {}", limit.limit_r_v, limit.limit_r_pi)?;
    match welfare_direction_large_delta(net, scenario.a()) {
        Ok(d) if scenario.c().iter().all(|c| *c == 0.0) => writeln!(out, "uniform-price direction: {d:?}")?,
        Ok(_) => writeln!(out, "uniform-price direction: n/a (nonzero costs)")?,
        Err(e) => writeln!(out, "uniform-price direction: n/a ({e})")?,
    }
    if let Some(part1) = scenario.partition() {
        let tt = verify_two_type(net, &part1)?;
        if tt.verified {
            let d = two_type_welfare_direction(&tt, scenario.a())?;
            writeln!(out, "two-type direction: {d:?} (classes {:?} / {:?})", tt.part1, tt.part2)?;
        } else {
            writeln!(out, "two-type direction: n/a (partition not verified)")?;
        }
    }
    Ok(())
}
