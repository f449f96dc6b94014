use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fplab::{default_zoo, run_config, run_preset, verify_suite, Overrides, DEFAULT_SEED};
use fplab_core::verify::{
    bound_corollary_mild, bound_fixed_step, bound_ghal_expansive_error, bound_leb, bound_mild,
    BoundInputs, DEFAULT_PAIRS,
};

#[derive(Parser)]
#[command(name = "fplab", version, about = "Halpern-family fixed-point experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cell of a named preset.
    RunPreset {
        name: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override a preset parameter, e.g. `--set d=10`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long, env = "FPLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run a single configuration file.
    Run {
        config: PathBuf,
        #[arg(long, env = "FPLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, env = "FPLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PAIRS)]
        pairs: u64,
    },
    /// Evaluate an iteration-count bound.
    Bounds {
        lemma: Lemma,
        #[arg(long)]
        eps0: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long = "D")]
        d: Option<f64>,
        #[arg(long = "D-star")]
        d_star: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long = "beta-prime")]
        beta_prime: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    FixedStep,
    Mild,
    CorollaryMild,
    Leb,
    GhalError,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::RunPreset { name, out, set, seed } => {
            let overrides = Overrides::parse_all(set.iter().map(String::as_str))?;
            let outcomes = run_preset(&name, &out, &overrides, seed)?;
            for o in &outcomes {
                println!(
                    "{} {} queries={} residual={:e}",
                    o.meta.run_id, o.result.termination, o.result.total_queries, o.result.final_residual
                );
            }
        }
        Command::Run { config, seed } => {
            let (_, o) = run_config(&config, seed).with_context(|| config.display().to_string())?;
            println!(
                "{} {} queries={} residual={:e} -> {}",
                o.meta.run_id,
                o.result.termination,
                o.result.total_queries,
                o.result.final_residual,
                o.path.display()
            );
        }
        Command::Verify { out, seed, pairs } => {
            let outcome = verify_suite(&default_zoo()?, seed, pairs, Some(&out))?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            for c in &outcome.checks {
                let tag = if c.ok() { "ok" } else { "FAIL" };
                println!("{tag:4} {} {}", c.name, c.detail);
            }
            if !outcome.all_passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bounds {
            lemma,
            eps0,
            eps,
            gamma,
            d,
            d_star,
            beta,
            beta_prime,
            mu,
        } => {
            let mut inputs = BoundInputs::new(eps0, eps).with_gamma(gamma);
            inputs.d = d;
            inputs.d_star = d_star;
            inputs.beta = beta;
            inputs.beta_prime = beta_prime;
            inputs.mu = mu;
            match lemma {
                Lemma::FixedStep => {
                    let b = bound_fixed_step(&inputs)?;
                    println!("lambda={:e} k={} saturated={}", b.lambda, b.k, b.saturated);
                }
                Lemma::Mild => {
                    let b = bound_mild(&inputs)?;
                    println!("lambda={:e} k={} saturated={}", b.lambda, b.k, b.saturated);
                }
                Lemma::CorollaryMild => {
                    let b = bound_corollary_mild(&inputs)?;
                    println!(
                        "lambda={:e} k={} error_level={:e} saturated={}",
                        b.lambda, b.k, b.error_level, b.saturated
                    );
                }
                Lemma::Leb => {
                    let (Some(beta), Some(mu)) = (beta, mu) else {
                        bail!("leb requires --beta and --mu");
                    };
                    let b = bound_leb(beta, mu)?;
                    println!("lambda_max={:e} k={} saturated={}", b.lambda_max, b.k, b.saturated);
                }
                Lemma::GhalError => {
                    let (Some(d), Some(beta), Some(bp)) = (d, beta, beta_prime) else {
                        bail!("ghal-error requires --D, --beta and --beta-prime");
                    };
                    println!("error_level={:e}", bound_ghal_expansive_error(d, gamma, beta, bp)?);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
