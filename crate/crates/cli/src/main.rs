mod cache;
mod report;
mod select;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use lehmer_core::forms::write_qexp;
use lehmer_core::vanish::{classify, compute_mf, first_vanishing};
use lehmer_core::{Error, FormSpec, MfResult, QSeries};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use cache::Cache;
use select::{Resolved, Selector};

/// Bound of the classical Lehmer verification, `τ(n) ≠ 0` for `n < 3316799`.
const LEHMER_BOUND: usize = 3_316_799;

/// Exit status when a first zero coprime to M_f is not prime.
const EXIT_GUARANTEE_VIOLATED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lehmer", version, about = "Exact newform coefficients and their zeros")]
struct Cli {
    /// JSON output (classify, mf and scan always emit JSON)
    #[arg(long, global = true)]
    json: bool,
    /// Cache directory (default: $LEHMER_CACHE_DIR, $XDG_CACHE_HOME/lehmer or ~/.cache/lehmer)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Bypass the coefficient cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest accepted --limit
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a(1..=limit) in q-expansion format, or residues with --mod
    Coeffs {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        /// Odd prime modulus; repeat for several residue lanes
        #[arg(long = "mod")]
        moduli: Vec<u64>,
    },
    /// Classify the zeros of r -> a(p^r)
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        ap: BigInt,
        #[arg(long)]
        k: u32,
        /// p divides the level
        #[arg(long)]
        bad: bool,
    },
    /// Compute the modulus M_f
    Mf {
        #[command(flatten)]
        selector: Selector,
    },
    /// Find the zeros of a(1..=limit)
    Scan {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), required_unless_present = "full_lehmer")]
        limit: Option<u64>,
        /// Also report the first zero coprime to M_f and require it to be prime
        #[arg(long)]
        coprime_mf: bool,
        /// Scan Δ up to 3316799 (long running)
        #[arg(long, conflicts_with = "limit")]
        full_lehmer: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn cache_for(cli: &Cli) -> Option<Cache> {
    if cli.no_cache {
        return None;
    }
    cli.cache_dir.clone().or_else(cache::default_dir).map(Cache::new)
}

fn check_limit(cli: &Cli, limit: u64) -> Result<usize> {
    let limit = usize::try_from(limit)?;
    if limit > cli.max_limit {
        bail!("--limit {limit} exceeds the compute budget --max-limit {}", cli.max_limit);
    }
    Ok(limit)
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn emit_json(v: &serde_json::Value) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string(v)?))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cache = cache_for(cli);
    match &cli.command {
        Command::Coeffs { selector, limit, moduli } => {
            let bound = check_limit(cli, *limit)?;
            let (spec, series) = selector.resolve()?.series(bound, cache.as_ref())?;
            if moduli.is_empty() {
                if cli.json {
                    emit_json(&report::coefficients(&spec, &series))?;
                } else {
                    emit(&write_qexp(&spec, &series))?;
                }
            } else {
                let lanes = moduli
                    .iter()
                    .map(|&m| series.reduce(m))
                    .collect::<Result<Vec<_>, Error>>()?;
                if cli.json {
                    emit_json(&report::residues(&spec, &lanes))?;
                } else {
                    emit(&report::residues_text(&spec, &lanes))?;
                }
            }
        }
        Command::Classify { p, ap, k, bad } => {
            let vc = classify(ap, *p, *k, *bad)?;
            emit_json(&report::classification(&vc))?;
        }
        Command::Mf { selector } => {
            let resolved = selector.resolve()?;
            let (spec, mf) = mf_for(&resolved, cache.as_ref())?;
            emit_json(&report::mf(&spec, &mf))?;
        }
        Command::Scan { selector, limit, coprime_mf, full_lehmer } => {
            let resolved = selector.resolve()?;
            let bound = if *full_lehmer {
                if !matches!(resolved, Resolved::Delta) {
                    bail!("--full-lehmer applies to --form delta only");
                }
                LEHMER_BOUND
            } else {
                check_limit(cli, limit.expect("clap requires --limit"))?
            };
            let mf = if *coprime_mf {
                Some(mf_for(&resolved, cache.as_ref())?.1)
            } else {
                None
            };
            let source = resolved.source(bound, cache.as_ref())?;
            let report = first_vanishing(source.as_ref(), bound, mf.as_ref().map(|m| m.value))?;
            emit_json(&report::scan(&report, mf.as_ref()))?;
            if !report.guarantee_holds() {
                eprintln!(
                    "error: first zero coprime to M_f is n = {}, which is not prime",
                    report.first_zero_coprime.unwrap_or_default()
                );
                return Ok(ExitCode::from(EXIT_GUARANTEE_VIOLATED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn mf_for(resolved: &Resolved, cache: Option<&Cache>) -> Result<(FormSpec, MfResult)> {
    let (spec, series) = resolved.series(3, cache)?;
    check_normalized(&spec, &series)?;
    let c = series.coeffs();
    Ok((spec.clone(), compute_mf(spec.level(), &c[2], &c[3], spec.weight())))
}

fn check_normalized(spec: &FormSpec, series: &QSeries) -> Result<()> {
    let c = series.coeffs();
    if !c[0].is_zero() || !c[1].is_one() {
        return Err(Error::NotNormalized(spec.label().to_string()))
            .context("M_f needs a normalized cusp eigenform");
    }
    Ok(())
}
