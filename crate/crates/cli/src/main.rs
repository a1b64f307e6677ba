//! `layered-erasure`: analyze instances, simulate schemes, run the built-in
//! regression examples and sweep simulation parameters.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when a regression
//! assertion fails.

mod regression;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use layered_erasure::analysis::{best_private_split, classify, private_split, MAX_SPLIT_DEPTH};
use layered_erasure::model::parse_instance;
use layered_erasure::report::{build_report, render_text};
use layered_erasure::simulator::{monte_carlo, MonteCarlo, SchemeKind, SchemeSpec, SummaryRow};
use layered_erasure::Instance;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "layered-erasure", version, about = "Ergodic layered erasure MAC / one-sided IFC toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print bounds, regimes, I1, the lemma table and the best private split.
    Analyze {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte Carlo simulation of one scheme; the summary row goes to stdout.
    Simulate {
        instance: PathBuf,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long = "T", default_value_t = 2000)]
        block_length: usize,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        epsilon: f64,
        /// Per-trial CSV log.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in examples through analysis and simulation.
    Examples {
        /// Read example1.json … example4.json from here instead of the
        /// embedded copies.
        #[arg(long)]
        fixtures_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One summary row per value of the varied parameter.
    Sweep {
        instance: PathBuf,
        #[arg(long, value_enum)]
        vary: Axis,
        /// Comma-separated values of the varied parameter.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<String>,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long = "T", default_value_t = 2000)]
        block_length: usize,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct SimArgs {
    /// Scheme name, `private-split:<levels>:<inner>`, or `auto`.
    #[arg(long, default_value = "auto")]
    scheme: String,
    /// Private levels for `--scheme private-split`, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    private: Vec<u32>,
    /// Inner scheme for `--scheme private-split`.
    #[arg(long)]
    inner: Option<String>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Axis {
    Epsilon,
    #[value(name = "T")]
    BlockLength,
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Resolves `--scheme`. `auto` picks the MAC corner, the scheme of the
/// governing regime, or the best private split when that beats plain mixed
/// coding.
fn resolve_scheme(args: &SimArgs, instance: &Instance) -> Result<SchemeKind> {
    let kind = match args.scheme.as_str() {
        "auto" => match instance {
            Instance::Mac(_) => SchemeKind::MacCorner,
            Instance::Ifc(d) => {
                let report = classify(d);
                match (&report.chosen_regime, d.q() <= MAX_SPLIT_DEPTH) {
                    (None, true) => {
                        let (private, total) = best_private_split(d)?;
                        if private.is_empty() || total <= report.lower {
                            report.scheme_hint
                        } else {
                            let split = private_split(d, &private)?;
                            let inner = classify(&split.transformed).scheme_hint;
                            SchemeKind::PrivateSplit { private, inner: Box::new(inner) }
                        }
                    }
                    _ => report.scheme_hint,
                }
            }
        },
        "private-split" => {
            if args.private.is_empty() {
                bail!("--scheme private-split needs --private");
            }
            let inner = args.inner.as_deref().context("--scheme private-split needs --inner")?;
            SchemeKind::PrivateSplit {
                private: args.private.iter().copied().collect(),
                inner: Box::new(inner.parse()?),
            }
        }
        other => other.parse()?,
    };
    Ok(kind)
}

fn write_csv<R: Serialize>(rows: &[R], sink: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_csv_to(rows: &[impl Serialize], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(rows, io::BufWriter::new(file))
        }
        None => write_csv(rows, io::stdout().lock()),
    }
}

fn simulate_once(instance: &Instance, sim: &SimArgs, kind: &SchemeKind, eps: f64, t: usize) -> Result<MonteCarlo> {
    if sim.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let spec = SchemeSpec::new(kind.clone(), eps, t)?;
    Ok(monte_carlo(instance, &spec, sim.trials, sim.seed)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { instance, format } => {
            let report = build_report(&load(&instance)?);
            match format {
                Format::Text => print!("{}", render_text(&report)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
        }
        Command::Simulate { instance, sim, block_length, epsilon, out } => {
            let inst = load(&instance)?;
            let kind = resolve_scheme(&sim, &inst)?;
            let mc = simulate_once(&inst, &sim, &kind, epsilon, block_length)?;
            if let Some(path) = out {
                write_csv_to(&mc.rows(), Some(&path))?;
            }
            write_csv_to(&[mc.summary()], None)?;
        }
        Command::Examples { fixtures_dir, seed } => {
            let texts = regression::load_fixtures(fixtures_dir.as_deref())?;
            let passed = regression::run(&texts, seed, &mut io::stdout().lock())?;
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(2) });
        }
        Command::Sweep { instance, vary, values, sim, block_length, epsilon, out } => {
            if values.iter().all(|v| v.trim().is_empty()) {
                bail!("--values must list at least one value");
            }
            let inst = load(&instance)?;
            let kind = resolve_scheme(&sim, &inst)?;
            let mut rows: Vec<SummaryRow> = Vec::with_capacity(values.len());
            for v in values.iter().map(|v| v.trim()).filter(|v| !v.is_empty()) {
                let (eps, t) = match vary {
                    Axis::Epsilon => (v.parse().with_context(|| format!("bad epsilon `{v}`"))?, block_length),
                    Axis::BlockLength => (epsilon, v.parse().with_context(|| format!("bad T `{v}`"))?),
                };
                rows.push(simulate_once(&inst, &sim, &kind, eps, t)?.summary());
            }
            write_csv_to(&rows, out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
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
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
