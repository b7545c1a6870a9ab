use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homstab::complexes::{parse_text, DeltaComplex};
use homstab::spine::{graph_from_text, quotient_poset, symmetry_group, BasedGraph, GraphClass};
use homstab::suites::{run_suite, Caps, Outcome, RunConfig, Suite, DEFAULT_SEED};
use homstab::wordcomplexes::{Family, WordComplex};
use homstab::Error;
use serde_json::json;

mod request;
mod runs;

const EXIT_FAIL: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Exact verification of the finite ingredients of a homological stability
/// argument.
#[derive(Parser)]
#[command(name = "homstab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology of a builtin complex or a complex file.
    Homology {
        /// `injective:N`, `signed:N`, or a path to a `deltacomplex 1` file
        complex: String,
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite and store the report.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        ranges: request::Ranges,
        #[command(flatten)]
        common: RunArgs,
    },
    /// Show a stored report, the most recent one by default.
    Report {
        run_id: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value = runs::DEFAULT_DIR)]
        runs_dir: PathBuf,
    },
    /// Invariants of a based graph given in the `basedgraph 1` format.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The poset of graph classes of rank `n` and degree `≤ degree`, as JSON.
    Poset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value = runs::DEFAULT_DIR)]
    runs_dir: PathBuf,
    /// do not store the report
    #[arg(long)]
    no_save: bool,
    /// largest chain group of a bar complex
    #[arg(long, default_value_t = Caps::default().max_chain_rank)]
    max_chain_rank: usize,
    /// largest graph symmetry group built element by element
    #[arg(long, default_value_t = Caps::default().max_group_order)]
    max_group_order: usize,
    /// largest word complex, in simplices
    #[arg(long, default_value_t = Caps::default().max_simplices)]
    max_simplices: usize,
    /// largest graph enumerated, in edges
    #[arg(long, default_value_t = Caps::default().max_graph_edges)]
    max_graph_edges: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures that end the process with a given exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_USAGE };
        Exit(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = std::env::var("HOMSTAB_THREADS").ok().and_then(|t| t.parse().ok()) {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8, Exit> {
    match command {
        Command::Homology { complex, reduced, format } => {
            let x = load_complex(&complex)?;
            let profile = x.homology(reduced)?;
            match format {
                Format::Text => println!("{complex}: {profile}"),
                Format::Json => {
                    let out = json!({ "complex": complex, "counts": x.counts(), "homology": profile });
                    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
                }
            }
            Ok(0)
        }
        Command::Verify { suite, ranges, common } => {
            let request = ranges.into_request(suite).map_err(|m| Exit(EXIT_USAGE, m))?;
            let config = RunConfig {
                seed: common.seed,
                caps: Caps {
                    max_chain_rank: common.max_chain_rank,
                    max_group_order: common.max_group_order,
                    max_simplices: common.max_simplices,
                    max_graph_edges: common.max_graph_edges,
                },
            };
            let report = run_suite(&request, &config)?;
            match common.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if !common.no_save {
                let id = runs::save(&common.runs_dir, &report).map_err(|e| Exit(EXIT_USAGE, e))?;
                if common.format == Format::Text {
                    println!("run {id}");
                }
            }
            Ok(match report.outcome {
                Outcome::Pass => 0,
                Outcome::Fail => EXIT_FAIL,
                Outcome::Capped => EXIT_CAP,
            })
        }
        Command::Report { run_id, format, runs_dir } => {
            let report = runs::load(&runs_dir, run_id.as_deref()).map_err(|e| Exit(EXIT_USAGE, e))?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(0)
        }
        Command::Graph { file, format } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", file.display())))?;
            let g = graph_from_text(&text)?;
            graph_summary(&g, format)?;
            Ok(0)
        }
        Command::Poset { n, degree } => {
            let p = quotient_poset(n, degree)?;
            println!("{}", serde_json::to_string_pretty(&p).expect("json"));
            Ok(0)
        }
    }
}

fn load_complex(spec: &str) -> Result<DeltaComplex, Exit> {
    let builtin = |family: Family, n: &str| -> Result<DeltaComplex, Exit> {
        let n: usize = n.parse().map_err(|_| Exit(EXIT_USAGE, format!("bad size in {spec:?}")))?;
        Ok(WordComplex::build(family, n)?.complex().clone())
    };
    if let Some(n) = spec.strip_prefix("injective:") {
        return builtin(Family::Symmetric, n);
    }
    if let Some(n) = spec.strip_prefix("signed:") {
        return builtin(Family::Signed, n);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Exit(EXIT_USAGE, format!("{spec}: {e}")))?;
    parse_text(&text).map_err(|e| Exit(EXIT_USAGE, format!("{spec}: {e}")))
}

fn graph_summary(g: &BasedGraph, format: Format) -> Result<(), Exit> {
    let class = GraphClass::of(g);
    let violation = g.violation().map(|v| v.to_string());
    let order = symmetry_group(g, Caps::default().max_group_order).map(|s| s.order()).ok();
    match format {
        Format::Text => {
            println!("{} (certificate {})", class.name, class.certificate);
            println!("rank {}, degree {}, {} loops at the basepoint", class.rank, class.degree, g.loops_at_basepoint());
            match order {
                Some(o) => println!("symmetry group of order {o}"),
                None => println!("symmetry group over the order cap"),
            }
            if let Some(v) = &violation {
                println!("not a spine vertex: {v}");
            }
        }
        Format::Json => {
            let out = json!({
                "class": class,
                "loops_at_basepoint": g.loops_at_basepoint(),
                "symmetry_order": order,
                "violation": violation,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
    }
    Ok(())
}
