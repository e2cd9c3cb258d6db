//! Command-line front end: sweeps, fits, dimension reports, exact game values
//! and random-class utilities.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use apple_tasting::adversaries::{sample_random_class, verify_random_class, RandomClassSpec, VerifyOptions};
use apple_tasting::combinatorics::{minimax_oracle, FiniteClass, SearchBudget};
use apple_tasting::harness::{dims_report, fit_csv, run_sweep, write_rows, SweepConfig};
use apple_tasting::{Error, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "apple-tasting", version, about = "Apple-tasting learners, adversaries and class tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep and write one CSV row per cell and seed.
    Run {
        config: PathBuf,
        /// Overrides the output path of the config; `-` for stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit `mistakes ≈ a·T^α` per group of a sweep CSV.
    Fit {
        input: PathBuf,
        /// Comma-separated grouping columns.
        #[arg(long, default_value = "learner,adversary,k")]
        group_by: String,
    },
    /// Report Littlestone dimension, width depths and the trichotomy label.
    Dims {
        class: PathBuf,
        /// Budgets for which to report the k-shattered width-1 depth.
        #[arg(short, long, value_delimiter = ',')]
        k: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        cap: u32,
        #[arg(long, default_value_t = SearchBudget::default().max_work)]
        budget: u64,
    },
    /// Exact minimax number of mistakes at tiny scale.
    Oracle {
        /// Class file; omit when using `-u`.
        class: Option<PathBuf>,
        /// Use the universal class with this many hypotheses.
        #[arg(short = 'u', long = "universal", conflicts_with = "class")]
        universal: Option<usize>,
        #[arg(short = 'T', long = "horizon")]
        horizon: usize,
        #[arg(short, long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
    },
    /// Sample a random class and write it in the class file format.
    SampleClass {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Audit a class for the random-class properties.
    VerifyClass {
        class: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(short, long, default_value_t = 1.0)]
        c: f64,
        /// Defaults to `√(dT log₂T)·c/100`.
        #[arg(long)]
        ones_threshold: Option<f64>,
        /// Defaults to `1000·√(d log₂T / T)·c/100`.
        #[arg(long)]
        decay: Option<f64>,
        #[arg(long, default_value_t = 8)]
        chains: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(short, long)]
    d: u32,
    #[arg(short = 'T', long = "horizon")]
    horizon: usize,
    #[arg(short, long, default_value_t = 1.0)]
    c: f64,
    /// Entry probability; defaults to `min(1/2, c·√(d log₂T / T))`.
    #[arg(short, long)]
    p: Option<f64>,
    #[arg(short, long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1 << 22)]
    max_hypotheses: usize,
}

fn read_class(path: &PathBuf) -> Result<FiniteClass> {
    FiniteClass::parse(&fs::read_to_string(path)?)
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(io::stdout().lock())),
    }
}

/// `Ok(false)` when the command ran but found a failing row or item.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, output: out } => {
            let cfg = SweepConfig::parse(&fs::read_to_string(&config)?)?;
            let rows = run_sweep(&cfg)?;
            let path = out.or_else(|| cfg.sweep.output.clone());
            write_rows(&rows, output(path.as_ref())?)?;
            let failed = rows.iter().filter(|r| r.within_bound() == Some(false)).count();
            if failed > 0 {
                eprintln!("{failed} of {} rows outside their bounds", rows.len());
            }
            Ok(failed == 0)
        }
        Command::Fit { input, group_by } => {
            let cols: Vec<String> = group_by.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect();
            let fits = fit_csv(File::open(&input)?, &cols)?;
            let mut w = io::stdout().lock();
            writeln!(w, "group,alpha,coefficient,residual,samples")?;
            for f in fits {
                writeln!(w, "\"{}\",{:.6},{:.6},{:.6},{}", f.group, f.alpha, f.coefficient, f.residual, f.samples)?;
            }
            Ok(true)
        }
        Command::Dims { class, k, cap, budget } => {
            let report = dims_report(&read_class(&class)?, &k, cap, SearchBudget::new(budget))?;
            println!("{report}");
            Ok(true)
        }
        Command::Oracle { class, universal, horizon, k, max_nodes } => {
            let h = match (class, universal) {
                (Some(p), None) => read_class(&p)?,
                (None, Some(n)) => FiniteClass::universal(n)?,
                _ => return Err(Error::Parameter("give either a class file or -u".into())),
            };
            println!("{}", minimax_oracle(&h, horizon, k, max_nodes)?);
            Ok(true)
        }
        Command::SampleClass { spec, out } => {
            let s = RandomClassSpec {
                d: spec.d,
                horizon: spec.horizon,
                c: spec.c,
                p: spec.p,
                seed: spec.seed,
                max_hypotheses: spec.max_hypotheses,
            };
            let h = sample_random_class(&s)?;
            fs::write(&out, h.to_text(&[s.header()]))?;
            eprintln!("wrote {} hypotheses over {} instances", h.len(), h.domain_size());
            Ok(true)
        }
        Command::VerifyClass { class, d, c, ones_threshold, decay, chains, seed } => {
            let h = read_class(&class)?;
            let mut opts = VerifyOptions::scaled(d, h.domain_size(), c);
            opts.ones_threshold = ones_threshold.unwrap_or(opts.ones_threshold);
            opts.decay = decay.unwrap_or(opts.decay);
            opts.chains = chains;
            opts.seed = seed;
            let report = verify_random_class(&h, &opts);
            println!("{report}");
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
