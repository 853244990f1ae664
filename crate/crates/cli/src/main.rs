use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nilred::graphs::{
    encode_simple, graph_iso, multigraph_iso, read_graph, read_multigraph, write_graph, write_multigraph,
};
use nilred::group2graph::{build_gamma, read_cayley};
use nilred::halgebra::{build_graph_algebra, build_h_algebra};
use nilred::hgroup::{group_iso_small, HGroup};
use nilred::matrixwild::{read_matrix_pair, simsim, write_matrix};
use nilred::modarith::Prime;
use nilred::verify::{self, Suite, VerifyConfig};

/// Graphs, class-2 nilpotent Lie algebras over Z/p^3 and their p-groups.
#[derive(Parser)]
#[command(name = "nilred", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebra of a graph.
    Graph2algebra {
        graph: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Kind::Lie)]
        kind: Kind,
    },
    /// Print the presentation of the group of a graph.
    Graph2group {
        graph: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Print the multigraph of a group given by its Cayley table.
    Group2graph {
        cayley: PathBuf,
        /// Encode the multigraph as a simple graph.
        #[arg(long)]
        simple: bool,
    },
    /// Decide isomorphism. Exit 0 and print a witness if isomorphic, 1 if not, 2 on error.
    CheckIso {
        #[arg(value_enum)]
        kind: IsoKind,
        first: PathBuf,
        second: PathBuf,
    },
    /// Run self-check suites and print one line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lie,
    Commutative,
}

#[derive(Clone, Copy, ValueEnum)]
enum IsoKind {
    Graph,
    Multigraph,
    GroupSmall,
    MatrixPair,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Algebra,
    Group,
    Gamma,
    Sizes,
    Matrix,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Group => Suite::Group,
            SuiteArg::Gamma => Suite::Gamma,
            SuiteArg::Sizes => Suite::Sizes,
            SuiteArg::Matrix => Suite::Matrix,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse<T, E>(path: &Path, f: impl FnOnce(&str) -> Result<T, E>) -> Result<T>
where
    E: std::error::Error + Send + Sync + 'static,
{
    f(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p).with_context(|| format!("invalid --p {p}"))
}

/// 1-based images, space separated.
fn one_based(images: impl IntoIterator<Item = usize>) -> String {
    images.into_iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn check_iso(kind: IsoKind, first: &Path, second: &Path) -> Result<Option<String>> {
    Ok(match kind {
        IsoKind::Graph => {
            let (a, b) = (parse(first, read_graph)?, parse(second, read_graph)?);
            graph_iso(&a, &b).map(|w| one_based(w.as_slice().iter().copied()))
        }
        IsoKind::Multigraph => {
            let (a, b) = (parse(first, read_multigraph)?, parse(second, read_multigraph)?);
            multigraph_iso(&a, &b).map(|w| one_based(w.as_slice().iter().copied()))
        }
        IsoKind::GroupSmall => {
            let (a, b) = (parse(first, read_cayley)?, parse(second, read_cayley)?);
            group_iso_small(&a, &b)?.map(one_based)
        }
        IsoKind::MatrixPair => {
            let (a, b) = (parse(first, read_matrix_pair)?, parse(second, read_matrix_pair)?);
            simsim(&a, &b, a.prime())?.map(|s| write_matrix(&s).trim_end().to_string())
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Graph2algebra { graph, p, kind } => {
            let (g, p) = (parse(&graph, read_graph)?, prime(p)?);
            let algebra = match kind {
                Kind::Lie => build_h_algebra(&g, p),
                Kind::Commutative => build_graph_algebra(&g, p),
            };
            print!("{}", algebra.dump());
        }
        Command::Graph2group { graph, p } => {
            let (g, p) = (parse(&graph, read_graph)?, prime(p)?);
            print!("{}", HGroup::from_graph(&g, p).export_presentation());
        }
        Command::Group2graph { cayley, simple } => {
            let gamma = build_gamma(&parse(&cayley, read_cayley)?)?;
            if simple {
                print!("{}", write_graph(&encode_simple(&gamma)?));
            } else {
                print!("{}", write_multigraph(&gamma));
            }
        }
        Command::CheckIso { kind, first, second } => {
            return Ok(match check_iso(kind, &first, &second)? {
                Some(witness) => {
                    println!("isomorphic");
                    println!("{witness}");
                    ExitCode::SUCCESS
                }
                None => {
                    println!("not isomorphic");
                    ExitCode::from(1)
                }
            });
        }
        Command::Verify { suite, p, max_n, seed, samples } => {
            let mut cfg = VerifyConfig::new(prime(p)?, max_n, seed);
            cfg.samples = samples;
            let report = verify::run(suite.into(), &cfg);
            print!("{report}");
            return Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
