//! Command-line front end. Exit codes: 0 on success, 1 on domain errors
//! (bad files, invalid graphs, failed preconditions), 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use critfix::attractor::{default_max_steps, iterate_to_attractor, transition_graph};
use critfix::blowup::blow_up;
use critfix::classify::{census, enumerate_charge_graphs};
use critfix::cli_io::{self, TextFormat};
use critfix::curves::{parse_word, CurveWord, SpanningTree, DEFAULT_SIMPLE_CAP};
use critfix::pullback::OverlayComplex;
use critfix::tischler::{radial_tischler, verify_tischler_structure, ChargeGraph};

#[derive(Parser)]
#[command(
    name = "critfix",
    version,
    about = "Combinatorics of critically fixed rational maps: charge graphs, \
             blow-up covers, curve pullbacks, and the finite curve attractor"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Dot,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a graph file and report its structural properties.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the face walks of a graph.
    Faces {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the radial bipartite model of a charge graph and verify it.
    Tischler {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Blow up every edge and report the induced branched self-cover.
    Blowup {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the wreath recursion of the blown-up map on a spanning tree.
    Recursion {
        file: PathBuf,
        /// Comma-separated 1-based edge ids forming a spanning tree
        /// (default: smallest-index greedy tree).
        #[arg(long)]
        tree: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pull back a curve word under the blown-up map.
    Pullback {
        file: PathBuf,
        #[arg(long)]
        tree: Option<String>,
        /// Curve word in x<i>/X<i> syntax, e.g. "x1 X3 X2 x3".
        #[arg(long)]
        curve: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Iterate pullback of a curve until it lands in the attractor, or
    /// print the whole attractor transition graph when no curve is given.
    Attractor {
        file: PathBuf,
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        curve: Option<String>,
        /// Iteration budget (default: complexity + generators + 1).
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate isomorphism classes of charge graphs with a given edge count.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate every class up to an edge count with its invariants.
    Census {
        #[arg(long)]
        edges: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit a graph file as DOT.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Domain(critfix::Error),
    Usage(String),
}

impl From<critfix::Error> for Failure {
    fn from(e: critfix::Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_charge(path: &Path) -> Result<ChargeGraph, Failure> {
    let g = cli_io::read_graph(path)?;
    Ok(ChargeGraph::new(g)?)
}

fn pick_tree(g: &ChargeGraph, spec: Option<&str>) -> Result<SpanningTree, Failure> {
    let Some(spec) = spec else {
        return Ok(SpanningTree::greedy(g));
    };
    let mut ids = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        let id: usize = tok.parse().map_err(|_| {
            Failure::Usage(format!("--tree entry {:?} is not an edge id", tok))
        })?;
        if id == 0 {
            return Err(Failure::Usage("--tree edge ids are 1-based".into()));
        }
        ids.push(id - 1);
    }
    Ok(SpanningTree::new(g, ids)?)
}

/// Resolves --format for the text-only subcommands.
fn text_format(fmt: Format, cmd: &str) -> Result<TextFormat, Failure> {
    match fmt {
        Format::Table => Ok(TextFormat::Table),
        Format::Machine => Ok(TextFormat::Machine),
        Format::Dot => Err(Failure::Usage(format!("{} has no dot output", cmd))),
    }
}

fn deliver(text: String, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Domain(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_curve(input: &str, tree: &SpanningTree) -> Result<CurveWord, Failure> {
    let letters = parse_word(input, tree.n_generators())?;
    Ok(CurveWord::reduce(&letters))
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Validate { file, format, output } => {
            let g = cli_io::read_graph(&file)?;
            let fmt = text_format(format, "validate")?;
            deliver(cli_io::validate_report(&g, fmt), output.as_deref())
        }
        Cmd::Faces { file, format, output } => {
            let g = cli_io::read_graph(&file)?;
            let fmt = text_format(format, "faces")?;
            deliver(cli_io::faces_report(&g, fmt), output.as_deref())
        }
        Cmd::Tischler { file, format, output } => {
            let g = load_charge(&file)?;
            let t = radial_tischler(&g);
            let text = match format {
                Format::Dot => cli_io::tischler_dot(&t),
                _ => {
                    let rep = verify_tischler_structure(&t);
                    let fmt = text_format(format, "tischler")?;
                    cli_io::tischler_report(&t, &rep, fmt)
                }
            };
            deliver(text, output.as_deref())
        }
        Cmd::Blowup { file, format, output } => {
            let g = load_charge(&file)?;
            let cover = blow_up(&g);
            let text = match format {
                Format::Dot => cli_io::graph_dot(cover.blown()),
                _ => cli_io::blowup_report(&cover, text_format(format, "blowup")?),
            };
            deliver(text, output.as_deref())
        }
        Cmd::Recursion { file, tree, format, output } => {
            let g = load_charge(&file)?;
            let tree = pick_tree(&g, tree.as_deref())?;
            let overlay = OverlayComplex::build(&blow_up(&g), &tree)?;
            let rec = overlay.wreath_recursion();
            let fmt = text_format(format, "recursion")?;
            deliver(cli_io::recursion_table(&rec, fmt), output.as_deref())
        }
        Cmd::Pullback { file, tree, curve, format, output } => {
            let g = load_charge(&file)?;
            let tree = pick_tree(&g, tree.as_deref())?;
            let overlay = OverlayComplex::build(&blow_up(&g), &tree)?;
            let w = parse_curve(&curve, &tree)?;
            let pulled = overlay.pullback(&w);
            let fmt = text_format(format, "pullback")?;
            deliver(cli_io::pullback_report(&w, &pulled, fmt), output.as_deref())
        }
        Cmd::Attractor { file, tree, curve, max_steps, format, output } => {
            let g = load_charge(&file)?;
            let tree = pick_tree(&g, tree.as_deref())?;
            let overlay = OverlayComplex::build(&blow_up(&g), &tree)?;
            match curve {
                Some(curve) => {
                    let w = parse_curve(&curve, &tree)?;
                    let budget = max_steps
                        .unwrap_or_else(|| default_max_steps(&w, tree.n_generators()));
                    if budget == 0 {
                        return Err(Failure::Usage("--max-steps must be at least 1".into()));
                    }
                    let it = iterate_to_attractor(&overlay, &w, budget);
                    let fmt = text_format(format, "attractor --curve")?;
                    deliver(cli_io::trajectory_report(&it, fmt), output.as_deref())
                }
                None => {
                    let tg = transition_graph(&overlay, &tree, DEFAULT_SIMPLE_CAP)?;
                    let text = match format {
                        Format::Dot => cli_io::attractor_dot(&tg),
                        _ => cli_io::attractor_report(&tg, text_format(format, "attractor")?),
                    };
                    deliver(text, output.as_deref())
                }
            }
        }
        Cmd::Enumerate { edges, format, output } => {
            let graphs = enumerate_charge_graphs(edges)?;
            let fmt = text_format(format, "enumerate")?;
            deliver(cli_io::enumerate_report(&graphs, fmt), output.as_deref())
        }
        Cmd::Census { edges, format, output } => {
            let rows = census(edges)?;
            let fmt = text_format(format, "census")?;
            deliver(cli_io::census_report(&rows, fmt), output.as_deref())
        }
        Cmd::ExportDot { file, output } => {
            let g = cli_io::read_graph(&file)?;
            deliver(cli_io::graph_dot(&g), output.as_deref())
        }
    }
}
