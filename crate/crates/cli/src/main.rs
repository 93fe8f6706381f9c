use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eventlab::cycles::{find_straight_cycle, DEFAULT_MAX_LEN};
use eventlab::domain::{enumerate_domain, DEFAULT_DOMAIN_CAP};
use eventlab::gen::{generate, GenParams, Shape};
use eventlab::graph::{chromatic_number, clique_number, OrthoGraph};
use eventlab::io::{domain_to_dot, graph_to_dot, parse_document, parse_labelling, serialize_es, serialize_labelling};
use eventlab::label::{self, Labelling, Stratifying};
use eventlab::report::StructuralReport;
use eventlab::EventStructure;

/// Inspect coherent event structures and compute nice labellings.
///
/// A file argument of `-` reads standard input.
#[derive(Debug, Parser)]
#[command(name = "eventlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a file describes a coherent event structure.
    Validate { file: PathBuf },
    /// Print structural properties as `key: value` lines.
    Stats { file: PathBuf },
    /// Print the index (chromatic number of the orthogonality graph).
    Chi { file: PathBuf },
    /// Print the degree (clique number of the orthogonality graph).
    Omega { file: PathBuf },
    /// Compute a nice labelling.
    Label {
        file: PathBuf,
        #[arg(long, value_enum)]
        strategy: Strategy,
        /// Stratifying function for the stratified strategy.
        #[arg(long, value_enum, default_value = "height")]
        h: Levels,
    },
    /// Check a labelling; exits 1 and lists offending pairs if it is not nice.
    Verify {
        file: PathBuf,
        #[arg(long)]
        labels: PathBuf,
    },
    /// Enumerate the domain of configurations.
    Domain {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_DOMAIN_CAP)]
        cap: usize,
    },
    /// Print the orthogonality graph as an edge list or DOT.
    Graph {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        /// Fill vertices by the symbols of this labelling.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Search for a straight cycle; exits 1 if one is found.
    Cycles {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Generate a random structure of bounded degree.
    Gen {
        #[arg(long)]
        events: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "general")]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        conflict_density: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Forest3,
    Stratified,
    Dilworth,
    Simple12,
    Degree2,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Levels {
    Height,
    BelowCount,
}

/// Failure with the exit code to report.
struct Failure(u8, String);

fn input_error(e: impl Display) -> Failure {
    Failure(2, e.to_string())
}

fn read_input(path: &PathBuf, stdin_used: &mut bool) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        if *stdin_used {
            return Err(Failure(2, "UsageError: standard input named twice".into()));
        }
        *stdin_used = true;
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure(2, format!("ReadError: <stdin>: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure(2, format!("ReadError: {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load(path: &PathBuf, stdin_used: &mut bool) -> Result<EventStructure, Failure> {
    let doc = parse_document(&read_input(path, stdin_used)?).map_err(input_error)?;
    EventStructure::build(doc.spec).map_err(input_error)
}

fn load_labels(e: &EventStructure, path: &PathBuf, stdin_used: &mut bool) -> Result<Labelling, Failure> {
    parse_labelling(e, &read_input(path, stdin_used)?).map_err(input_error)
}

fn compute_labelling(e: &EventStructure, strategy: Strategy, h: Levels) -> Result<Labelling, label::LabelError> {
    match strategy {
        Strategy::Forest3 => label::label_forest3(e),
        Strategy::Stratified => {
            let h = match h {
                Levels::Height => Stratifying::Height,
                Levels::BelowCount => Stratifying::BelowCount,
            };
            label::label_stratified(e, &h)
        }
        Strategy::Dilworth => Ok(label::label_dilworth(e)),
        Strategy::Simple12 => label::label_simple12(e),
        Strategy::Degree2 => label::label_degree2(e),
        Strategy::Exact => label::label_exact(e),
    }
}

fn run(command: Command, out: &mut String) -> Result<u8, Failure> {
    use std::fmt::Write as _;
    let mut stdin_used = false;
    match command {
        Command::Validate { file } => {
            let e = load(&file, &mut stdin_used)?;
            writeln!(out, "ok: {} events", e.len()).unwrap();
        }
        Command::Stats { file } => {
            let e = load(&file, &mut stdin_used)?;
            out.push_str(&StructuralReport::of(&e).to_key_values());
        }
        Command::Chi { file } => {
            let e = load(&file, &mut stdin_used)?;
            let (chi, _) = chromatic_number(&OrthoGraph::from_structure(&e)).map_err(input_error)?;
            writeln!(out, "{chi}").unwrap();
        }
        Command::Omega { file } => {
            let e = load(&file, &mut stdin_used)?;
            writeln!(out, "{}", clique_number(&OrthoGraph::from_structure(&e)).0).unwrap();
        }
        Command::Label { file, strategy, h } => {
            let e = load(&file, &mut stdin_used)?;
            let lam = compute_labelling(&e, strategy, h).map_err(input_error)?;
            out.push_str(&serialize_labelling(&e, &lam));
        }
        Command::Verify { file, labels } => {
            let e = load(&file, &mut stdin_used)?;
            let lam = load_labels(&e, &labels, &mut stdin_used)?;
            let bad = label::verify_nice(&e, &lam).map_err(input_error)?;
            if bad.is_empty() {
                out.push_str("nice\n");
            } else {
                for (a, b) in bad {
                    writeln!(out, "violation {} {}", e.name(a), e.name(b)).unwrap();
                }
                return Ok(1);
            }
        }
        Command::Domain { file, dot, cap } => {
            let e = load(&file, &mut stdin_used)?;
            let d = enumerate_domain(&e, cap).map_err(input_error)?;
            if dot {
                out.push_str(&domain_to_dot(&d, None));
            } else {
                writeln!(out, "nodes: {}", d.nodes().len()).unwrap();
                writeln!(out, "edges: {}", d.edges().len()).unwrap();
                writeln!(out, "max_out_degree: {}", d.max_out_degree()).unwrap();
            }
        }
        Command::Graph { file, dot, labels } => {
            let e = load(&file, &mut stdin_used)?;
            let g = OrthoGraph::from_structure(&e);
            let lam = labels.map(|l| load_labels(&e, &l, &mut stdin_used)).transpose()?;
            if dot {
                out.push_str(&graph_to_dot(&g, lam.as_ref().map(Labelling::assignment)));
            } else {
                for (a, b) in g.edges() {
                    writeln!(out, "{} {}", g.names()[a], g.names()[b]).unwrap();
                }
            }
        }
        Command::Cycles { file, max_len } => {
            let e = load(&file, &mut stdin_used)?;
            match find_straight_cycle(&e, max_len) {
                Some(c) => {
                    writeln!(out, "cycle {}", c.render(&e)).unwrap();
                    return Ok(1);
                }
                None => out.push_str("none\n"),
            }
        }
        Command::Gen {
            events,
            degree,
            shape,
            seed,
            conflict_density,
        } => {
            let params = GenParams::new(events, degree, shape, conflict_density, seed);
            let e = generate(&params).map_err(input_error)?;
            out.push_str(&serialize_es(e.spec()));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            eprintln!("{message}");
            code
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
