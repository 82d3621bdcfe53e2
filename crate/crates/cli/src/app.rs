use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use property_o::constructions::{theorem2_edge_count, GeneralLayout};
use property_o::{
    arith, check_property_o, coverage_histogram, edge_minimality, estimate_property_o_rate,
    lower_bound_audit, prove_vertex_lower_bound, CensusOptions, Family, LinearOrder, Method,
    MethodChoice, OrientedHypergraph, Verdict, VerifyOptions,
};
use thiserror::Error;

use crate::format::{parse_hypergraph, serialize, ParseError};

pub const EXIT_OK: u8 = 0;
/// `verify` found a violating order, or `census` found a Property O tournament.
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_PARSE: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;
pub const EXIT_INTERNAL: u8 = 6;

const EXIT_CODES: &str = "\
Exit codes:
  0  success; verify: Property O holds; census: no tournament has Property O
  1  verify: a violating order exists; census: a tournament with Property O exists
  2  usage error (unknown flag, missing or out-of-range argument)
  3  I/O error (unreadable input, unwritable output)
  4  invalid input (malformed file, invalid hypergraph, no Property O where required)
  5  budget refused (search space or arithmetic too large)
  6  internal error";

#[derive(Debug, Parser)]
#[command(
    name = "propo",
    version,
    about = "Constructs, verifies and searches oriented hypergraphs with Property O",
    after_help = EXIT_CODES
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Cyclic2,
    Claim1,
    General,
    H1,
    H2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Dfs,
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one of the built-in constructions as a hypergraph file
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Uniformity, required for the general family
        #[arg(long)]
        k: Option<usize>,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide Property O
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Abort the depth-first search after this many nodes
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Count orders by number of consistent edges
    Histogram {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Per-edge consistency counts over the orders permuting one base edge
    Audit {
        file: PathBuf,
        #[arg(long)]
        base_edge: usize,
    },
    /// Report which edges are needed for Property O
    Minimality { file: PathBuf },
    /// Exhaustive search over all k-tournaments on n vertices
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Skip tournaments that are not minimal under relabeling
        #[arg(long)]
        symmetry: bool,
        /// Keep counting after the first tournament with Property O
        #[arg(long)]
        all: bool,
        /// Enumerate even when C(n,k) <= k! settles the question
        #[arg(long)]
        no_early_reject: bool,
        /// Re-check every violating order against all edges
        #[arg(long)]
        recheck: bool,
        /// Print a progress line to standard error every this many tournaments
        #[arg(long, default_value_t = 0)]
        progress: u64,
    },
    /// Estimate the fraction of random k-tournaments with Property O
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Edge and vertex counts of the general construction
    Stats {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Core(#[from] property_o::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use property_o::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Core(e) => match e {
                E::OutOfRange { .. } => EXIT_USAGE,
                E::VertexOutOfRange { .. } | E::Invalid(_) | E::NotPropertyO => EXIT_PARSE,
                E::BudgetExceeded { .. } | E::Overflow(_) => EXIT_BUDGET,
                E::Invariant(_) => EXIT_INTERNAL,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn load(path: &Path) -> Result<OrientedHypergraph> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_hypergraph(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn order_text(order: &LinearOrder) -> String {
    join(order.ascending(), " ")
}

/// Parses `args` (including the program name), executes the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?
    };
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Construct {
            family,
            k,
            out: path,
        } => {
            let family = match (family, k) {
                (FamilyArg::General, Some(k)) => Family::General(k),
                (FamilyArg::General, None) => {
                    return Err(CliError::Usage("--family general needs --k".into()))
                }
                (_, Some(_)) => {
                    return Err(CliError::Usage(
                        "--k only applies to --family general".into(),
                    ))
                }
                (FamilyArg::Cyclic2, None) => Family::CyclicTriangle,
                (FamilyArg::Claim1, None) => Family::Claim1,
                (FamilyArg::H1, None) => Family::H1,
                (FamilyArg::H2, None) => Family::H2,
            };
            let text = serialize(&property_o::construct(family)?);
            match path {
                Some(path) => {
                    fs::write(&path, text).map_err(|source| CliError::Io { path, source })?
                }
                None => {
                    out.write_all(text.as_bytes())
                        .map_err(|source| CliError::Io {
                            path: "<stdout>".into(),
                            source,
                        })?;
                }
            }
            Ok(EXIT_OK)
        }

        Command::Verify {
            file,
            method,
            jobs,
            node_limit,
        } => {
            let h = load(&file)?;
            let choice = match method {
                MethodArg::Brute => MethodChoice::Exhaustive,
                MethodArg::Dfs => MethodChoice::Backtracking,
                MethodArg::Auto => MethodChoice::Auto,
            };
            let opts = VerifyOptions {
                jobs: jobs.max(1),
                node_limit,
                ..VerifyOptions::default()
            };
            let cert = check_property_o(&h, choice, &opts)?;
            match (&cert.verdict, &cert.violating_order) {
                (Verdict::PropertyO, _) => {
                    emit!(
                        out,
                        "PROPERTY_O method={} orders={}",
                        cert.method.name(),
                        cert.orders_examined
                    );
                    if cert.method == Method::Backtracking {
                        emit!(out, "nodes={}", cert.nodes_expanded);
                    }
                    Ok(EXIT_OK)
                }
                (Verdict::Violated, Some(order)) => {
                    emit!(out, "VIOLATION order={}", order_text(order));
                    Ok(EXIT_NEGATIVE)
                }
                (Verdict::Violated, None) => {
                    Err(property_o::Error::Invariant("violation without an order".into()).into())
                }
            }
        }

        Command::Histogram { file, jobs } => {
            let h = load(&file)?;
            let opts = VerifyOptions {
                jobs: jobs.max(1),
                ..VerifyOptions::default()
            };
            let hist = coverage_histogram(&h, &opts)?;
            for (c, m) in &hist.counts {
                emit!(out, "count={c} orders={m}");
            }
            let cons = property_o::coverage::Conservation::of(&h, &hist)?;
            emit!(
                out,
                "identity=orders sum={} expected={} holds={}",
                cons.total_orders,
                cons.expected_orders,
                cons.orders_hold()
            );
            emit!(
                out,
                "identity=weighted sum={} expected={} holds={}",
                cons.weighted_sum,
                cons.expected_weighted_sum,
                cons.weighted_holds()
            );
            Ok(EXIT_OK)
        }

        Command::Audit { file, base_edge } => {
            let h = load(&file)?;
            let r = lower_bound_audit(&h, base_edge)?;
            emit!(out, "base_edge={}", r.base_edge);
            emit!(out, "class_sizes={}", join(&r.class_sizes, ","));
            emit!(
                out,
                "intersection_sizes={}",
                join(&r.intersection_sizes, ",")
            );
            emit!(out, "total={}", r.total);
            emit!(out, "residue={}", r.residue);
            emit!(out, "min_coverage={}", r.min_coverage);
            Ok(EXIT_OK)
        }

        Command::Minimality { file } => {
            let h = load(&file)?;
            for v in edge_minimality(&h, &VerifyOptions::default())? {
                match (&v.witness, v.essential) {
                    (Some(w), true) => {
                        emit!(out, "edge={} essential witness={}", v.edge, order_text(w))
                    }
                    _ => emit!(out, "edge={} redundant", v.edge),
                }
            }
            Ok(EXIT_OK)
        }

        Command::Census {
            n,
            k,
            jobs,
            symmetry,
            all,
            no_early_reject,
            recheck,
            progress,
        } => {
            let options = CensusOptions {
                parallel_partitions: jobs.max(1),
                symmetry_pruning: symmetry,
                progress_interval: progress,
                stop_on_witness: !all,
                early_reject: !no_early_reject,
                recheck_violations: recheck,
                ..CensusOptions::default()
            };
            let r = prove_vertex_lower_bound(n, k, &options)?;
            emit!(out, "n={}", r.n);
            emit!(out, "k={}", r.k);
            emit!(out, "total_enumerated={}", r.total_enumerated);
            emit!(out, "property_o_found={}", r.property_o_found);
            emit!(out, "early_rejected={}", r.early_rejected);
            match (&r.first_witness, r.first_witness_index) {
                (Some(w), Some(i)) => {
                    emit!(out, "first_witness_index={i}");
                    emit!(
                        out,
                        "first_witness={}",
                        join(w.edges().map(|e| join(e, " ")), ",")
                    );
                }
                _ => emit!(out, "first_witness=none"),
            }
            if recheck {
                emit!(out, "violations_rechecked={}", r.violations_rechecked);
            }
            emit!(out, "elapsed_seconds={:.3}", r.elapsed.as_secs_f64());
            Ok(if r.property_o_found == 0 {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }

        Command::Sample {
            n,
            k,
            trials,
            seed,
            jobs,
        } => {
            let s = estimate_property_o_rate(n, k, trials, seed, jobs.max(1))?;
            emit!(out, "n={}", s.n);
            emit!(out, "k={}", s.k);
            emit!(out, "trials={}", s.trials);
            emit!(out, "successes={}", s.successes);
            emit!(out, "rate={}", s.rate);
            emit!(out, "standard_error={}", s.standard_error);
            emit!(out, "seed={}", s.seed);
            Ok(EXIT_OK)
        }

        Command::Stats { k } => {
            let edges = theorem2_edge_count(k)?;
            let vertices = GeneralLayout::new(k)?.vertex_count();
            let lower = arith::factorial(k)?
                .checked_add(1)
                .ok_or(property_o::Error::Overflow("k! + 1"))?;
            let reference = (k as f64 / std::f64::consts::E).powi(2);
            emit!(out, "k={k}");
            emit!(out, "edge_count={edges}");
            emit!(out, "vertex_count={vertices}");
            emit!(out, "edge_lower_bound={lower}");
            emit!(out, "asymptotic_reference={reference:.6}");
            emit!(
                out,
                "# asymptotic reference: (k/e)^2, the leading factor of the vertex estimate"
            );
            Ok(EXIT_OK)
        }
    }
}
