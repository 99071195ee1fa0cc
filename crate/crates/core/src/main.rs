use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gtlab::bounds::{beta, BoundReport};
use gtlab::extremal::{
    build_t_even, build_t_odd, closed_count_even, closed_count_odd, closed_count_odd_telescoped, parse_ells,
    EvenSpec, OddSpec,
};
use gtlab::forest::{format_level_sequence, Forest};
use gtlab::sweep::{emit_report, sweep, ReportFormat, SweepOptions};
use gtlab::tdp::{dp_gamma_t, list_gamma_t_sets};
use gtlab::treegen::{gen_trees, max_order};

#[derive(Parser)]
#[command(name = "gtlab", version, about = "Count minimum total dominating sets of forests and check their bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, γ_t, the number of γ_t-sets and the bound report for an edge-list file.
    Compute { file: PathBuf },
    /// List every minimum total dominating set as a JSON array.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
    },
    /// Check every tree in an order range against all bounds.
    Sweep {
        #[arg(long, default_value_t = 2)]
        n_lo: usize,
        #[arg(long)]
        n_hi: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check a sample of trees against brute force.
        #[arg(long)]
        oracle_spot_check: bool,
    },
    /// Build a candidate extremal tree and compare its closed-form count with the DP.
    Extremal {
        #[arg(long, value_enum)]
        parity: Parity,
        /// Comma-separated leaf counts, e.g. 2,3
        #[arg(long)]
        ells: String,
    },
    /// Print one canonical level sequence per non-isomorphic tree of order N.
    GenTrees {
        #[arg(long)]
        n: usize,
    },
    /// Print the base of the exponential bound.
    Beta,
}

fn read_forest(path: &PathBuf) -> Result<Forest> {
    let text = fs::read_to_string(path).with_context(|| path.display().to_string())?;
    Forest::parse(&text).with_context(|| path.display().to_string())
}

/// Runs one subcommand and returns the process exit status.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Compute { file } => {
            let forest = read_forest(&file)?;
            let result = dp_gamma_t(&forest)?;
            let report = BoundReport::new(forest.order(), result.gamma_t, result.count.clone())?;
            println!("n = {}", forest.order());
            println!("gamma_t = {}", result.gamma_t);
            println!("count = {}", result.count);
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Enumerate { file, cap } => {
            let forest = read_forest(&file)?;
            let family = list_gamma_t_sets(&forest, cap)?;
            println!("{}", serde_json::to_string(&family.sets)?);
        }
        Command::Sweep { n_lo, n_hi, jobs, format, out, oracle_spot_check } => {
            let options = SweepOptions::new(n_lo, n_hi).jobs(jobs).oracle_spot_check(oracle_spot_check);
            let report = sweep(options)?;
            let format = match format {
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
            };
            let doc = emit_report(&report, format)?;
            match out {
                Some(path) => fs::write(&path, doc).with_context(|| path.display().to_string())?,
                None => print!("{doc}"),
            }
            eprintln!(
                "processed {} trees of order {n_lo}..={n_hi} in {:.2?}",
                report.totals.trees, report.elapsed
            );
            if oracle_spot_check {
                eprintln!(
                    "oracle spot checks: {} ({} mismatches)",
                    report.totals.spot_checks,
                    report.spot_check_mismatches.len()
                );
            }
            for v in &report.violations {
                eprintln!(
                    "VIOLATION {}: n={} gamma_t={} count={} witness={}",
                    v.bound, v.witness.n, v.gamma_t, v.count, v.witness
                );
            }
            for t in &report.spot_check_mismatches {
                eprintln!("ORACLE MISMATCH: witness={t}");
            }
            return Ok(report.exit_code() as u8);
        }
        Command::Extremal { parity, ells } => {
            let ells = parse_ells(&ells)?;
            let (forest, closed, extra) = match parity {
                Parity::Even => {
                    let spec = EvenSpec::new(ells)?;
                    (build_t_even(&spec), closed_count_even(&spec), None)
                }
                Parity::Odd => {
                    let spec = OddSpec::new(ells)?;
                    (build_t_odd(&spec), closed_count_odd(&spec), Some(closed_count_odd_telescoped(&spec)))
                }
            };
            let dp = dp_gamma_t(&forest)?;
            print!("{}", forest.to_edge_list());
            let mut summary = json!({
                "n": forest.order(),
                "gamma_t": dp.gamma_t,
                "closed_form_count": closed.to_string(),
                "dp_count": dp.count.to_string(),
                "agree": closed == dp.count,
            });
            if let Some(t) = extra {
                summary["telescoped_count"] = json!(t.to_string());
            }
            eprintln!("{summary}");
            if closed != dp.count {
                return Ok(1);
            }
        }
        Command::GenTrees { n } => {
            for tree in gen_trees(n)? {
                println!("{}", format_level_sequence(&tree.level_sequence));
            }
        }
        Command::Beta => {
            let b = beta();
            println!("beta = {:.15}", b.value);
            println!("residual = {:.3e}", b.residual);
            println!("bracket = [{:.17}, {:.17}]", b.bracket.0, b.bracket.1);
            println!("treegen max order = {}", max_order());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
