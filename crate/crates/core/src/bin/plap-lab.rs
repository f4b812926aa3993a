use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plap_lab::commands::{
    check_summary, cmd_check, cmd_limits, cmd_pack, cmd_sweep, limits_summary,
};
use plap_lab::config::RunConfig;

#[derive(Parser)]
#[command(
    version,
    about = "Weighted p-Laplacian eigenvalues and their large-p geometric limits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured output prefix.
    #[arg(long)]
    out: Option<String>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric limits: R+, R-, R2,+ and the limiting eigenvalues.
    Limits(Common),
    /// Principal eigenvalue for each p in the configured list.
    Sweep(Common),
    /// Residual of the limit equation for a stored field.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        lambda: f64,
    },
    /// Largest common radius of k disjoint balls centered in the positive region.
    Pack(Common),
}

fn load(c: &Common) -> plap_lab::Result<RunConfig> {
    let mut cfg = RunConfig::load(&c.config)?;
    if let Some(out) = &c.out {
        cfg.out = out.clone();
    }
    if let Some(seed) = c.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> plap_lab::Result<u8> {
    match cli.command {
        Command::Limits(c) => {
            print!("{}", limits_summary(&cmd_limits(&load(&c)?)?));
        }
        Command::Sweep(c) => {
            let outcome = cmd_sweep(&load(&c)?)?;
            for (p, entry) in &outcome.entries {
                match entry {
                    Ok(r) => println!(
                        "p = {p:<4} root {:.6}  target {:.6}  deviation {:.6}  cone {:.6}  iters {}{}",
                        r.lambda_root,
                        r.target,
                        r.deviation,
                        r.cone_bound,
                        r.iterations,
                        if r.converged { "" } else { "  (not converged)" }
                    ),
                    Err(e) => println!("p = {p:<4} failed: {e}"),
                }
            }
            if !outcome.all_converged() {
                return Ok(2);
            }
        }
        Command::Check {
            common,
            field,
            lambda,
        } => {
            print!(
                "{}",
                check_summary(&cmd_check(&load(&common)?, &field, lambda)?)
            );
        }
        Command::Pack(c) => {
            let r = cmd_pack(&load(&c)?)?;
            println!(
                "k = {}  radius {:.6}  {}",
                r.k,
                r.radius,
                if r.exact {
                    "exact"
                } else {
                    "heuristic lower bound"
                }
            );
            for n in &r.centers {
                println!("  center ({}, {})", n.i, n.j);
            }
        }
    }
    Ok(0)
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
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
