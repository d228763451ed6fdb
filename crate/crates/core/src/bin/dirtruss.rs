use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dirtruss::report::{self, EnsembleParams, OutputFormat, RunConfig};
use dirtruss::randomize::{DEFAULT_ATTEMPTS_PER_EDGE, DEFAULT_SWAPS_PER_EDGE};
use dirtruss::{Error, TrussType};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Cycle and flow trusses of directed networks.
#[derive(Parser)]
#[command(name = "dirtruss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-edge cycle and flow triangle supports.
    Census(Common),
    /// Truss numbers, distributions, R and (with --samples) D.
    Truss {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ensemble: EnsembleArgs,
    },
    /// Write every k-truss of one type as an edge list and a DOT file.
    Extract {
        #[command(flatten)]
        common: Common,
        #[arg(long = "type", value_enum)]
        truss_type: TypeArg,
        #[arg(long)]
        k: u32,
    },
    /// Degree-preserving randomizations of the input.
    Randomize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ensemble: EnsembleArgs,
    },
}

#[derive(Args)]
struct Common {
    /// Edge list, one `source target` pair per line.
    #[arg(long)]
    input: PathBuf,
    /// Node labels, one `token<TAB>label` pair per line.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
}

#[derive(Args)]
struct EnsembleArgs {
    /// Number of randomized networks.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SWAPS_PER_EDGE)]
    swaps_per_edge: u64,
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS_PER_EDGE)]
    max_attempts_per_edge: u64,
}

impl EnsembleArgs {
    fn params(&self, default_samples: Option<usize>) -> Option<EnsembleParams> {
        self.samples.or(default_samples).map(|samples| EnsembleParams {
            samples,
            seed: self.seed,
            swaps_per_edge: self.swaps_per_edge,
            max_attempts_per_edge: self.max_attempts_per_edge,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    Cycle,
    Flow,
}

impl Common {
    fn config(&self, ensemble: Option<EnsembleParams>) -> RunConfig {
        RunConfig {
            input: self.input.clone(),
            labels: self.labels.clone(),
            out_dir: self.out_dir.clone(),
            format: match self.format {
                FormatArg::Tsv => OutputFormat::Tsv,
                FormatArg::Json => OutputFormat::Json,
            },
            ensemble,
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Census(common) => {
            let summary = report::run_census(&common.config(None))?;
            println!("{}", serde_json::to_string_pretty(&summary).map_err(std::io::Error::from)?);
        }
        Command::Truss { common, ensemble } => {
            let r = report::run_truss(&common.config(ensemble.params(None)))?;
            eprintln!(
                "k_max: cycle {} flow {}; R = {}",
                r.cycle.k_max,
                r.flow.k_max,
                r.overlap.value.map_or("undefined".to_owned(), |v| format!("{v:.3}"))
            );
            if let Some(e) = &r.ensemble {
                eprintln!("D: cycle {:.3} (K={}) flow {:.3} (K={})", e.cycle.d.d, e.cycle.d.k_cutoff, e.flow.d.d, e.flow.d.k_cutoff);
            }
        }
        Command::Extract { common, truss_type, k } => {
            let t = match truss_type {
                TypeArg::Cycle => TrussType::Cycle,
                TypeArg::Flow => TrussType::Flow,
            };
            let written = report::run_extract(&common.config(None), t, k)?;
            for c in &written {
                println!("{}\t{} nodes\t{} edges", c.edge_file.display(), c.nodes.len(), c.edges);
            }
        }
        Command::Randomize { common, ensemble } => {
            for s in report::run_randomize(&common.config(ensemble.params(Some(1))))? {
                println!("{}\t{} swaps\t{} attempts", s.file.display(), s.stats.successful_swaps, s.stats.attempts);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) => EXIT_USAGE,
                Error::Invariant(_) => EXIT_INTERNAL,
                Error::Parse { .. } | Error::Io(_) | Error::NoEdges => EXIT_INPUT,
            })
        }
    }
}
