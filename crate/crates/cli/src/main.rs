//! Command-line front end: sequence and table export, the d-ary bijection,
//! seeded sampling and the asymptotic validation harness.
//!
//! Machine-readable output goes to stdout; progress and diagnostics to stderr.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use multiedge::asymptotics::{validate, Claim};
use multiedge::bijection::{from_dary, to_dary};
use multiedge::counting::{
    a_n_bfile, a_n_csv, a_n_json, a_sequence, height_table_csv, vertex_table_csv, HeightCountTable,
    TableCache, VertexCountTable,
};
use multiedge::sampler::Sampler;
use multiedge::trees::{DAryMultiEdgeTree, DAryNode, DAryTree, Enumerator, MultiEdgeTree};

type BoxError = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "multiedge",
    version,
    about = "Exact counts, sampling and asymptotics of plane multi-edge trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print A_0 .. A_{n-max}, the number of trees of each size.
    Count {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = SeqFormat::Bfile)]
        format: SeqFormat,
    },
    /// Number of trees of size n by exact height, as CSV `height,count`.
    HeightTable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Number of trees of size n by number of vertices, as CSV `vertices,count`.
    Vertices {
        #[arg(long)]
        n: usize,
    },
    /// Map a multi-edge tree with out-degrees at most d to its pruned d-ary tree.
    ///
    /// Prints the image on one line and its shape statistics as JSON on the next.
    Bijection {
        #[arg(long)]
        d: u32,
        /// Read a d-ary tree (`position:child` pairs) and map it back instead.
        #[arg(long)]
        reverse: bool,
        /// Tree text; read from stdin when absent.
        tree: Option<String>,
    },
    /// Draw uniform trees of size n, one per line.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Print a CSV histogram of this statistic instead of the trees.
        #[arg(long, value_enum)]
        histogram: Option<Statistic>,
    },
    /// Compare exact values with an asymptotic claim; exit status 0 iff it passes.
    Validate {
        #[arg(long, value_parser = parse_claim)]
        claim: Claim,
        /// Comma-separated sizes (or alpha values for poisson-duality).
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFormat {
    Bfile,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Series,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Statistic {
    Height,
    Vertices,
    Leaves,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse()
}

fn read_tree_text(arg: Option<String>) -> io::Result<String> {
    match arg {
        Some(t) => Ok(t),
        None => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn height_table(n: usize, method: Method) -> Result<HeightCountTable, BoxError> {
    Ok(match method {
        Method::Formula => HeightCountTable::by_formula(n),
        Method::Series => {
            let cache = TableCache::from_env();
            if let Some(dir) = cache.dir() {
                eprintln!("using table cache in {}", dir.display());
            }
            cache
                .height_tables(n, n)?
                .pop()
                .expect("one table per size 0..=n")
        }
        Method::Brute => HeightCountTable::by_enumeration(n, &Enumerator::default())?,
    })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, BoxError> {
    match cli.command {
        Command::Count { n_max, format } => {
            let seq = a_sequence(n_max);
            let text = match format {
                SeqFormat::Bfile => a_n_bfile(&seq),
                SeqFormat::Csv => a_n_csv(&seq),
                SeqFormat::Json => a_n_json(&seq),
            };
            write!(out, "{text}")?;
        }
        Command::HeightTable { n, method } => {
            write!(out, "{}", height_table_csv(&height_table(n, method)?))?;
        }
        Command::Vertices { n } => {
            write!(out, "{}", vertex_table_csv(&VertexCountTable::new(n)))?;
        }
        Command::Bijection { d, reverse, tree } => {
            let text = read_tree_text(tree)?;
            if reverse {
                let node: DAryNode = text.trim().parse()?;
                let image = from_dary(&DAryTree::new(node, d)?);
                writeln!(out, "{}", image.tree())?;
                writeln!(out, "{}", image.stats().to_json())?;
            } else {
                let t: MultiEdgeTree = text.trim().parse()?;
                let image = to_dary(&DAryMultiEdgeTree::new(t, d)?)?;
                writeln!(out, "{}", image.root())?;
                writeln!(out, "{}", image.stats().to_json())?;
            }
        }
        Command::Sample {
            n,
            count,
            seed,
            histogram,
        } => {
            let mut sampler = Sampler::new(n, seed);
            match histogram {
                None => {
                    for _ in 0..count {
                        writeln!(out, "{}", sampler.sample())?;
                    }
                }
                Some(stat) => {
                    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
                    for _ in 0..count {
                        let s = sampler.sample().stats();
                        let v = match stat {
                            Statistic::Height => s.height,
                            Statistic::Vertices => s.vertices,
                            Statistic::Leaves => s.leaves,
                        };
                        *hist.entry(v).or_default() += 1;
                    }
                    let name = match stat {
                        Statistic::Height => "height",
                        Statistic::Vertices => "vertices",
                        Statistic::Leaves => "leaves",
                    };
                    writeln!(out, "{name},count")?;
                    for (v, c) in hist {
                        writeln!(out, "{v},{c}")?;
                    }
                }
            }
        }
        Command::Validate {
            claim,
            grid,
            format,
        } => {
            let grid = grid.unwrap_or_else(|| claim.default_grid());
            eprintln!("validating {claim} on {grid:?}");
            let report = validate(claim, &grid)?;
            match format {
                ReportFormat::Json => writeln!(out, "{}", report.to_json()),
                ReportFormat::Csv => write!(out, "{}", report.to_csv()),
            }?;
            eprintln!("{claim}: {} ({})", report.verdict, report.criterion);
            if !report.verdict.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli, &mut out).and_then(|code| Ok(out.flush().map(|_| code)?)) {
        Ok(code) => code,
        // a closed pipe (e.g. `| head`) is not a failure
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
