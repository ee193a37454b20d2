use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::input::Source;
use spectral_chroma::hoffman::SearchBudget;

#[derive(Debug, Parser)]
#[command(
    name = "spectral-chroma",
    version,
    about = "Theta-function, Hoffman and fractional-coloring bounds on the chromatic number, with certificates",
    after_help = "Exit status: 0 success, 2 parse or input error, 3 solver failure, 4 inequality chain violation."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All parameters of one graph and the chain verdict.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The weighted k-colorable-subgraph theta function at a real level k.
    ThetaK {
        #[command(flatten)]
        input: InputArgs,
        /// Level in [0, n]; fractional values are allowed.
        #[arg(long)]
        k: f64,
        /// File with one nonnegative weight per line (default: all ones).
        #[arg(long, value_name = "PATH")]
        weights: Option<String>,
        /// Include the dual matrix X and the primal pair (Z, Y, eta).
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certified bracket around h(G); with --out, certificates go to `<out>.cert/`.
    Hbracket {
        #[command(flatten)]
        input: InputArgs,
        /// Also report the best partial sum S(m) found at this level.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One row per graph for a family range, the corpus or a graph6 file.
    /// Resumes: graphs already present in --out are skipped.
    Batch {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["graph6", "file", "family"])))]
pub struct InputArgs {
    /// A graph in graph6 format.
    #[arg(long, value_name = "STRING")]
    pub graph6: Option<String>,
    /// graph6 lines, a DIMACS file or an edge list (detected from content).
    #[arg(long, value_name = "PATH")]
    pub file: Option<String>,
    /// Family spec such as `cycle 5`, `cycle 3..11`, `kneser 7 3`,
    /// `multipartite 2,3,4`, `gnp 8 0.5 0..9`, `petersen` or `corpus`.
    #[arg(long, num_args = 1.., value_name = "SPEC")]
    pub family: Option<Vec<String>>,
}

impl InputArgs {
    pub fn source(&self) -> Source {
        if let Some(s) = &self.graph6 {
            Source::Graph6(s.clone())
        } else if let Some(p) = &self.file {
            Source::File(p.clone())
        } else {
            Source::Family(self.family.clone().unwrap_or_default())
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// `quick`, `default`, `thorough`, or `restarts,iterations,w_restarts,w_iterations`.
    #[arg(long, default_value = "default", value_parser = parse_budget)]
    pub budget: SearchBudget,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "SPECTRAL_CHROMA_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Default: text for single graphs, csv for batch.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
    /// Omit timestamps and timings so identical runs give identical bytes.
    #[arg(long)]
    pub no_timestamp: bool,
}

pub fn parse_budget(s: &str) -> Result<SearchBudget, String> {
    match s {
        "quick" => Ok(SearchBudget {
            restarts: 6,
            iterations: 150,
            w_restarts: 2,
            w_iterations: 10,
        }),
        "default" => Ok(SearchBudget::default()),
        "thorough" => Ok(SearchBudget {
            restarts: 64,
            iterations: 2000,
            w_restarts: 12,
            w_iterations: 60,
        }),
        _ => {
            let v: Vec<usize> = s
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| format!("bad budget `{s}`"))?;
            match v[..] {
                [restarts, iterations, w_restarts, w_iterations] => Ok(SearchBudget {
                    restarts,
                    iterations,
                    w_restarts,
                    w_iterations,
                }),
                _ => Err(format!("budget needs 4 comma-separated counts, got `{s}`")),
            }
        }
    }
}
