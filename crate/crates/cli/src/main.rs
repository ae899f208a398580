use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use npfree::series::{DEFAULT_SINE_AMPLITUDE, DEFAULT_SINE_LEN, DEFAULT_SINE_PERIOD};
use npfree::{sine_series, Series};
use npfree_cli::bench::{run_bench, BenchReport};
use npfree_cli::commands::{run_compare, run_convert, run_detect};
use npfree_cli::experiment::{self, Separation};
use npfree_cli::io::{ingest_path, read_rmse_path};
use npfree_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "npfree", version, about = "Streaming RMSE representations and anomaly detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a series into its RMSE representation.
    Convert(StreamArgs),
    /// Flag anomalies with the AARE detector.
    Detect(StreamArgs),
    /// Euclidean distance between two converter outputs.
    Compare { a: PathBuf, b: PathBuf },
    /// Time converter steps with and without retraining.
    Bench {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Append the CSV summary row here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sine: SineArgs,
    },
    /// Run one of the representation experiments.
    Experiment {
        #[arg(value_enum)]
        set: Option<ExperimentSet>,
        #[arg(long = "set", value_enum, conflicts_with = "set")]
        set_flag: Option<ExperimentSet>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Directory for per-variant RMSE files (offsets only).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sine: SineArgs,
    },
}

#[derive(Args)]
struct StreamArgs {
    /// Input CSV; stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flush every row as soon as it is computed.
    #[arg(long)]
    stream: bool,
}

#[derive(Args)]
struct SineArgs {
    #[arg(long, default_value_t = DEFAULT_SINE_LEN)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SINE_PERIOD)]
    period: usize,
    #[arg(long, default_value_t = DEFAULT_SINE_AMPLITUDE)]
    amplitude: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentSet {
    Offsets,
    Reverse,
    Sine,
    ZnormDemo,
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn Read>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p)?)),
        None => Box::new(io::stdin().lock()),
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn require_input(input: Option<&Path>, what: &str) -> Result<Series> {
    let path = input.ok_or_else(|| CliError::Usage(format!("{what} needs --in <file>")))?;
    ingest_path(path)
}

fn print_separation(s: &Separation) {
    println!("pair,distance");
    for (c, d) in &s.similar {
        println!("{0} vs {0}+{1},{2:.6}", s.name, c, d);
    }
    println!("{0} vs {0}-reverse,{1:.6}", s.name, s.opposite);
    println!("ratio,{:.6}", s.ratio());
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Convert(a) => {
            let summary = run_convert(open_input(a.input.as_deref())?, open_output(a.out.as_deref())?, a.stream)?;
            eprintln!("{} points in, {} rows out, {} retrains", summary.inputs, summary.rows, summary.retrains);
        }
        Command::Detect(a) => {
            let summary = run_detect(open_input(a.input.as_deref())?, open_output(a.out.as_deref())?, a.stream)?;
            eprintln!(
                "{} points in, {} verdicts, {} anomalous, {} retrains",
                summary.inputs, summary.rows, summary.anomalies, summary.retrains
            );
        }
        Command::Compare { a, b } => {
            let d = run_compare(&read_rmse_path(&a)?, &read_rmse_path(&b)?)?;
            println!("{d:.6}");
        }
        Command::Bench { input, out, sine } => {
            let series = match input {
                Some(p) => ingest_path(&p)?,
                None => sine_series(sine.n, sine.period, sine.amplitude)?,
            };
            let report = run_bench(&series)?;
            print!("{report}");
            println!("latency ratio     {:.1}", report.latency_ratio());
            match out {
                Some(p) => {
                    let fresh = !p.exists();
                    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(p)?;
                    if fresh {
                        writeln!(f, "{}", BenchReport::CSV_HEADER)?;
                    }
                    writeln!(f, "{}", report.csv_row())?;
                }
                None => {
                    println!("{}", BenchReport::CSV_HEADER);
                    println!("{}", report.csv_row());
                }
            }
        }
        Command::Experiment { set, set_flag, input, out, sine } => {
            let set = set
                .or(set_flag)
                .ok_or_else(|| CliError::Usage("experiment needs a set: offsets, reverse, sine or znorm-demo".into()))?;
            match set {
                ExperimentSet::Offsets => {
                    let base = require_input(input.as_deref(), "offsets")?;
                    if let Some(dir) = &out {
                        std::fs::create_dir_all(dir)?;
                    }
                    println!("variant,distance");
                    for row in experiment::offsets(&base, out.as_deref())? {
                        println!("{},{:.6}", row.variant, row.distance);
                    }
                }
                ExperimentSet::Reverse => {
                    let base = require_input(input.as_deref(), "reverse")?;
                    print_separation(&experiment::separation(&base)?);
                }
                ExperimentSet::Sine => {
                    print_separation(&experiment::sine(sine.n, sine.period, sine.amplitude)?);
                }
                ExperimentSet::ZnormDemo => {
                    let base = match input {
                        Some(p) => ingest_path(&p)?,
                        None => experiment::demo_series(),
                    };
                    let d = experiment::znorm_demo(&base)?;
                    println!("index,original,affine,z_original,z_affine");
                    for i in 0..d.original.len() {
                        println!(
                            "{},{},{},{:.6},{:.6}",
                            i,
                            d.original.values()[i],
                            d.affine.values()[i],
                            d.z_original.values()[i],
                            d.z_affine.values()[i]
                        );
                    }
                    println!("raw distance,{:.6}", d.raw_distance);
                    println!("max z gap,{:.3e}", d.max_z_gap);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Keep clap's usage errors off the ParseError code.
            return if e.use_stderr() {
                ExitCode::from(CliError::Usage(String::new()).exit_code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("npfree: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
