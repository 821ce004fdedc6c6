//! Batch front-end for the distance packing toolkit.
//!
//! Every invocation prints one report to standard output (JSON by default,
//! `--output text` for a human summary) and exits with:
//!
//! * 0 - computed, and the checked property holds (where one applies)
//! * 1 - computed, but the property fails (inequality, failed biconditional)
//! * 2 - input, parse, or parameter error
//! * 3 - search-node budget exceeded
//!
//! `PACKLAB_BUDGET` overrides the default node budget; `--budget` overrides
//! both. Graph files ending in `.g6` are read and written as graph6,
//! anything else as edge lists.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use packlab_core::decomposer::{decompose_into_k_units, recognize_cameron_walker};
use packlab_core::recognizer::{
    check_gap_regime, recognize_matching_equality, recognize_packing_equality,
};
use packlab_core::sat::{
    build_reduction, parse_dimacs, validate_reduction_distances, verify_artifact,
    ReductionArtifact, ReductionSidecar,
};
use packlab_core::solver::{max_k_matching, max_k_packing, DEFAULT_NODE_BUDGET};
use packlab_core::{Error, Graph, GraphFormat};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "packlab",
    version,
    about = "Exact distance packing and matching numbers, equality recognition, k-unit decompositions, and 3SAT reduction instances"
)]
struct Cli {
    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Json)]
    output: OutputMode,
    /// Search-node budget for exact solves (overrides PACKLAB_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a maximum k-packing exactly.
    Pack {
        #[arg(short)]
        k: usize,
        input: PathBuf,
        /// Write the witness to a file instead of inlining it.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Compute a maximum k-matching exactly.
    Match {
        #[arg(short)]
        k: usize,
        input: PathBuf,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Write the k-th power of a graph.
    Power {
        #[arg(short)]
        k: usize,
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the line graph together with its edge map.
    Linegraph {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the packing numbers at k and 2k coincide.
    Recognize {
        #[arg(short)]
        k: usize,
        input: PathBuf,
        /// Check the matching numbers instead of the packing numbers.
        #[arg(long)]
        matching: bool,
    },
    /// Check the widely separated regime k2 > 2*k1 on a connected graph.
    GapCheck {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        input: PathBuf,
    },
    /// Decompose a graph with equal matching numbers into k-units.
    Decompose {
        #[arg(short)]
        k: usize,
        input: PathBuf,
        /// Write the decomposition JSON to a file as well.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Recognize the star / triangle / bipartite-core structure at k = 1.
    CwCheck { input: PathBuf },
    /// Build the 3SAT reduction instance for a DIMACS formula.
    Reduce {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        input: PathBuf,
        /// Graph output file.
        #[arg(short, long)]
        out: PathBuf,
        /// Label sidecar output file (JSON).
        #[arg(long)]
        labels: PathBuf,
    },
    /// Re-verify a reduction instance from its files.
    VerifyReduction {
        graph: PathBuf,
        labels: PathBuf,
        cnf: PathBuf,
    },
    /// Sample a G(n, p) graph deterministically.
    Gen {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// A fully rendered invocation result.
struct Outcome {
    report: Value,
    text: String,
    exit_code: i32,
}

fn envelope(command: &str, payload: Value) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = payload {
        map.extend(fields);
    }
    Value::Object(map)
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, content: &str) -> Result<(), Error> {
    std::fs::write(path, content)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    GraphFormat::from_path(&path.display().to_string()).decode(&read_text(path)?)
}

fn save_graph(path: &Path, g: &Graph) -> Result<(), Error> {
    let mut text = GraphFormat::from_path(&path.display().to_string()).encode(g);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_text(path, &text)
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("PACKLAB_BUDGET") {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| Error::Input(format!("PACKLAB_BUDGET={raw:?} is not a number"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Serializes a witness inline or to a side file, per `--witness-out`.
fn witness_field<T: Serialize>(
    witness: &T,
    out: &Option<PathBuf>,
) -> Result<(String, Value), Error> {
    match out {
        Some(path) => {
            let body = serde_json::to_string(witness).expect("witness serializes");
            write_text(path, &format!("{body}\n"))?;
            Ok(("witness_file".into(), json!(path.display().to_string())))
        }
        None => Ok((
            "witness".into(),
            serde_json::to_value(witness).expect("witness serializes"),
        )),
    }
}

fn graph_payload(g: &Graph, out: &Option<PathBuf>) -> Result<Value, Error> {
    let mut payload = json!({
        "vertex_count": g.vertex_count(),
        "edge_count": g.edge_count(),
    });
    match out {
        Some(path) => {
            save_graph(path, g)?;
            payload["output"] = json!(path.display().to_string());
        }
        None => {
            payload["edges"] = json!(g.edges());
        }
    }
    Ok(payload)
}

fn run(command: Command, budget: u64) -> Result<Outcome, Error> {
    match command {
        Command::Pack {
            k,
            input,
            witness_out,
        } => {
            let g = load_graph(&input)?;
            let cert = max_k_packing(&g, k, budget)?;
            let (key, value) = witness_field(&cert.vertices, &witness_out)?;
            let mut payload = json!({
                "input": input.display().to_string(),
                "k": k,
                "rho": cert.cardinality,
                "optimal": cert.optimal,
            });
            payload[key] = value;
            Ok(Outcome {
                text: format!(
                    "rho_{k} = {} with witness {:?}",
                    cert.cardinality, cert.vertices
                ),
                report: envelope("pack", payload),
                exit_code: 0,
            })
        }
        Command::Match {
            k,
            input,
            witness_out,
        } => {
            let g = load_graph(&input)?;
            let cert = max_k_matching(&g, k, budget)?;
            let (key, value) = witness_field(&cert.edges, &witness_out)?;
            let mut payload = json!({
                "input": input.display().to_string(),
                "k": k,
                "nu": cert.cardinality,
                "optimal": cert.optimal,
            });
            payload[key] = value;
            Ok(Outcome {
                text: format!(
                    "nu_{k} = {} with witness {:?}",
                    cert.cardinality, cert.edges
                ),
                report: envelope("match", payload),
                exit_code: 0,
            })
        }
        Command::Power { k, input, out } => {
            let g = load_graph(&input)?;
            let power = g.power(k)?;
            let mut payload = graph_payload(&power, &out)?;
            payload["input"] = json!(input.display().to_string());
            payload["k"] = json!(k);
            Ok(Outcome {
                text: format!(
                    "power {k}: {} vertices, {} edges",
                    power.vertex_count(),
                    power.edge_count()
                ),
                report: envelope("power", payload),
                exit_code: 0,
            })
        }
        Command::Linegraph { input, out } => {
            let g = load_graph(&input)?;
            let (line, edge_map) = g.line_graph();
            let mut payload = graph_payload(&line, &out)?;
            payload["input"] = json!(input.display().to_string());
            payload["edge_map"] = json!(edge_map);
            Ok(Outcome {
                text: format!(
                    "line graph: {} vertices, {} edges",
                    line.vertex_count(),
                    line.edge_count()
                ),
                report: envelope("linegraph", payload),
                exit_code: 0,
            })
        }
        Command::Recognize { k, input, matching } => {
            let g = load_graph(&input)?;
            let (equal, mut payload, text) = if matching {
                let report = recognize_matching_equality(&g, k)?;
                let text = format!(
                    "nu_{k} = nu_{}: {}",
                    2 * k,
                    if report.equal { "equal" } else { "not equal" }
                );
                (
                    report.equal,
                    serde_json::to_value(&report).expect("report serializes"),
                    text,
                )
            } else {
                let report = recognize_packing_equality(&g, k)?;
                let text = format!(
                    "rho_{k} = rho_{}: {}",
                    2 * k,
                    if report.equal { "equal" } else { "not equal" }
                );
                (
                    report.equal,
                    serde_json::to_value(&report).expect("report serializes"),
                    text,
                )
            };
            payload["mode"] = json!(if matching { "matching" } else { "packing" });
            payload["input"] = json!(input.display().to_string());
            Ok(Outcome {
                text,
                report: envelope("recognize", payload),
                exit_code: i32::from(!equal),
            })
        }
        Command::GapCheck { k1, k2, input } => {
            let g = load_graph(&input)?;
            let report = check_gap_regime(&g, k1, k2)?;
            let equal = report.equal;
            let mut payload = serde_json::to_value(&report).expect("report serializes");
            payload["input"] = json!(input.display().to_string());
            Ok(Outcome {
                text: format!(
                    "rho_{k1} = rho_{k2}: {}",
                    if equal { "equal (both 1)" } else { "not equal" }
                ),
                report: envelope("gap-check", payload),
                exit_code: i32::from(!equal),
            })
        }
        Command::Decompose { k, input, out } => {
            let g = load_graph(&input)?;
            match decompose_into_k_units(&g, k) {
                Ok(decomposition) => {
                    let mut payload = json!({
                        "input": input.display().to_string(),
                        "k": k,
                        "equal": true,
                        "unit_count": decomposition.units.len(),
                        "decomposition": serde_json::to_value(&decomposition)
                            .expect("decomposition serializes"),
                    });
                    if let Some(path) = &out {
                        write_text(path, &format!("{}\n", decomposition.to_json()))?;
                        payload["output"] = json!(path.display().to_string());
                    }
                    Ok(Outcome {
                        text: format!("decomposed into {} {k}-units", decomposition.units.len()),
                        report: envelope("decompose", payload),
                        exit_code: 0,
                    })
                }
                Err(Error::Precondition(violation)) => Ok(Outcome {
                    text: format!("not decomposable: {violation}"),
                    report: envelope(
                        "decompose",
                        json!({
                            "input": input.display().to_string(),
                            "k": k,
                            "equal": false,
                            "violation": violation,
                        }),
                    ),
                    exit_code: 1,
                }),
                Err(other) => Err(other),
            }
        }
        Command::CwCheck { input } => {
            let g = load_graph(&input)?;
            let report = recognize_cameron_walker(&g)?;
            let is_cw = report.is_cw;
            let text = match &report.shape {
                Some(shape) => format!("Cameron-Walker: yes ({shape:?})"),
                None => format!(
                    "Cameron-Walker: no ({})",
                    report.violation.as_deref().unwrap_or("")
                ),
            };
            let mut payload = serde_json::to_value(&report).expect("report serializes");
            payload["input"] = json!(input.display().to_string());
            Ok(Outcome {
                text,
                report: envelope("cw-check", payload),
                exit_code: i32::from(!is_cw),
            })
        }
        Command::Reduce {
            k1,
            k2,
            input,
            out,
            labels,
        } => {
            let formula = parse_dimacs(&read_text(&input)?)?;
            let artifact = build_reduction(&formula, k1, k2)?;
            let validation = validate_reduction_distances(&artifact, &formula)?;
            save_graph(&out, &artifact.graph)?;
            let sidecar = artifact.sidecar();
            write_text(
                &labels,
                &format!(
                    "{}\n",
                    serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")
                ),
            )?;
            Ok(Outcome {
                text: format!(
                    "built instance: {} vertices, {} edges, expected packing {}",
                    artifact.graph.vertex_count(),
                    artifact.graph.edge_count(),
                    artifact.expected_packing()
                ),
                report: envelope(
                    "reduce",
                    json!({
                        "input": input.display().to_string(),
                        "k1": k1,
                        "k2": k2,
                        "n": artifact.variable_count,
                        "m": artifact.clause_count,
                        "vertex_count": artifact.graph.vertex_count(),
                        "edge_count": artifact.graph.edge_count(),
                        "expected_packing": artifact.expected_packing(),
                        "distance_checks_passed": validation.checks_passed,
                        "output": out.display().to_string(),
                        "labels_output": labels.display().to_string(),
                    }),
                ),
                exit_code: 0,
            })
        }
        Command::VerifyReduction { graph, labels, cnf } => {
            let g = load_graph(&graph)?;
            let sidecar: ReductionSidecar =
                serde_json::from_str(&read_text(&labels)?).map_err(|e| Error::Parse {
                    line: e.line(),
                    offset: e.column(),
                    message: format!("labels sidecar: {e}"),
                })?;
            let formula = parse_dimacs(&read_text(&cnf)?)?;
            let artifact = ReductionArtifact::from_parts(g, sidecar)?;
            let validation = validate_reduction_distances(&artifact, &formula)?;
            let report = verify_artifact(&artifact, &formula, budget)?;
            let holds = report.biconditional_holds;
            let mut payload = serde_json::to_value(&report).expect("report serializes");
            payload["distance_checks_passed"] = json!(validation.checks_passed);
            payload["graph"] = json!(graph.display().to_string());
            payload["cnf"] = json!(cnf.display().to_string());
            Ok(Outcome {
                text: format!(
                    "rho_{} = {}, rho_{} = {}, expected {}, satisfiable {}: biconditional {}",
                    report.k1,
                    report.rho_k1,
                    report.k2,
                    report.rho_k2,
                    report.expected,
                    report.satisfiable,
                    if holds { "holds" } else { "FAILS" }
                ),
                report: envelope("verify-reduction", payload),
                exit_code: i32::from(!holds),
            })
        }
        Command::Gen { n, p, seed, out } => {
            let g = Graph::random(n, p, seed)?;
            let mut payload = graph_payload(&g, &out)?;
            payload["n"] = json!(n);
            payload["p"] = json!(p);
            payload["seed"] = json!(seed);
            Ok(Outcome {
                text: format!(
                    "generated G({n}, {p}) with seed {seed}: {} edges",
                    g.edge_count()
                ),
                report: envelope("gen", payload),
                exit_code: 0,
            })
        }
    }
}

fn error_outcome(command_name: &str, error: &Error) -> Outcome {
    let (kind, exit_code) = match error {
        Error::Input(_) => ("input", 2),
        Error::Parse { .. } => ("parse", 2),
        Error::Parameter(_) => ("parameter", 2),
        Error::Precondition(_) => ("precondition", 2),
        Error::Validation(_) => ("validation", 2),
        Error::Extraction(_) => ("extraction", 2),
        Error::Budget { .. } => ("budget", 3),
    };
    Outcome {
        report: envelope(
            command_name,
            json!({ "error": { "kind": kind, "message": error.to_string() } }),
        ),
        text: format!("error: {error}"),
        exit_code,
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Pack { .. } => "pack",
        Command::Match { .. } => "match",
        Command::Power { .. } => "power",
        Command::Linegraph { .. } => "linegraph",
        Command::Recognize { .. } => "recognize",
        Command::GapCheck { .. } => "gap-check",
        Command::Decompose { .. } => "decompose",
        Command::CwCheck { .. } => "cw-check",
        Command::Reduce { .. } => "reduce",
        Command::VerifyReduction { .. } => "verify-reduction",
        Command::Gen { .. } => "gen",
    }
}

fn main() {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let outcome = match resolve_budget(cli.budget).and_then(|budget| run(cli.command, budget)) {
        Ok(outcome) => outcome,
        Err(error) => error_outcome(name, &error),
    };
    match cli.output {
        OutputMode::Json => println!(
            "{}",
            serde_json::to_string(&outcome.report).expect("report serializes")
        ),
        OutputMode::Text => println!("{}", outcome.text),
    }
    std::process::exit(outcome.exit_code);
}
