use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fiverank::family::{Constants, MestreSpecialization};
use fiverank_cli::commands::{self, write_record, ErrorRecord};
use fiverank_cli::{paper, Outcome, RunConfig, Sign};

#[derive(Parser)]
#[command(name = "fiverank", version, about = "Quadratic fields with 5-rank at least 3: construction, sieve, certificates, class-group checks")]
struct Cli {
    /// TOML config file (default: $FIVERANK_CONFIG, then built-in defaults)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    trial_bound: Option<u64>,
    /// bound on |D| for class group enumeration
    #[arg(long, global = true)]
    disc_bound: Option<u64>,
    /// write JSONL here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite and write the specialization dump
    Derive {
        #[arg(long)]
        emit: Option<PathBuf>,
        /// constants table as JSON, in place of the built-in one
        #[arg(long)]
        constants: Option<PathBuf>,
    },
    /// Admissible parameters with their extension reports
    Sieve {
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum)]
        sign: Option<Sign>,
        /// smallest |z| considered
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, value_enum, default_value = "jsonl")]
        emit: Format,
    },
    /// Field certificates for one z or for the first admissible ones
    Verify {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "batch")]
        z: Option<String>,
        #[arg(long)]
        batch: Option<usize>,
        #[arg(long, value_enum)]
        sign: Option<Sign>,
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// Class group of an imaginary quadratic discriminant
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Single-curve instances checked against the class number
    Oracle {
        #[arg(long, default_value_t = 25)]
        count: usize,
        /// bound on |D|, overriding --disc-bound
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 5)]
        per_curve: usize,
    },
    /// Every mechanically checkable published claim, one record each
    PaperCheck,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Derive { .. } => "derive",
            Command::Sieve { .. } => "sieve",
            Command::Verify { .. } => "verify",
            Command::Classgroup { .. } => "classgroup",
            Command::Oracle { .. } => "oracle",
            Command::PaperCheck => "paper-check",
        }
    }
}

fn configure(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    if let Some(b) = cli.trial_bound {
        cfg.trial_bound = b;
    }
    if let Some(b) = cli.disc_bound {
        cfg.disc_bound = b;
    }
    if let Some(o) = &cli.out {
        cfg.output.jsonl = Some(o.clone());
    }
    match &cli.command {
        Command::Sieve { count, sign, start, .. } | Command::Verify { batch: count, sign, start, .. } => {
            if let Some(c) = count {
                cfg.sieve.count = *c;
            }
            if let Some(s) = sign {
                cfg.sieve.sign = *s;
            }
            if let Some(s) = start {
                cfg.sieve.start = s.clone();
            }
        }
        Command::Oracle { bound: Some(b), .. } => cfg.disc_bound = *b,
        _ => {}
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli, cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Derive { emit, constants } => {
            let constants = match constants {
                Some(p) => Constants::from_json(&std::fs::read_to_string(p)?)?,
                None => Constants::paper(),
            };
            let emit = emit.clone().unwrap_or_else(|| cfg.output.specialization.clone());
            commands::derive(&constants, &emit, out)
        }
        Command::Sieve { .. } => commands::sieve(cfg, &MestreSpecialization::paper()?, out),
        Command::Verify { z, batch, .. } => {
            commands::verify(cfg, &MestreSpecialization::paper()?, z.as_deref(), *batch, out)
        }
        Command::Classgroup { disc } => commands::classgroup(cfg, *disc, out),
        Command::Oracle { count, per_curve, .. } => commands::oracle(cfg, *count, *per_curve, out),
        Command::PaperCheck => paper::paper_check(cfg, &MestreSpecialization::paper()?, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match configure(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut out: Box<dyn Write + Send> = match &cfg.output.jsonl {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli, &cfg, &mut *out)),
        Err(e) => Err(e.into()),
    };
    let code = match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            let _ = write_record(&mut *out, &ErrorRecord::new(cli.command.name(), format!("{e:#}")));
            ExitCode::from(1)
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(1);
    }
    code
}
