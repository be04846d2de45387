//! `positroid`: command-line front end for the positroid library.
//!
//! Every subcommand prints one JSON report on stdout. Errors go to stderr as
//! JSON; exit code 1 means the input could not be read, 2 means a
//! mathematical precondition failed (or a verification check did).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use positroid::io::{read_graph, read_id_map, read_matrix, read_moves, to_pretty};
use positroid::matchings::enumerate_matchings;
use positroid::moves::apply_moves;
use positroid::perm::{necklace_from_perm, positroid_from_necklace};
use positroid::subset::parse_subset;
use positroid::{
    synthesize, verify_diagram, BoundedAffinePermutation, Direction, Error, LabelMode, PlabicGraph,
    PlabicModel, StrandDiagram, TwistSide,
};

#[derive(Parser)]
#[command(name = "positroid", version, about = "Plabic graphs, positroids and the twist")]
struct Cli {
    /// Also write the report to this golden file (overwriting it).
    #[arg(long, global = true, value_name = "PATH")]
    regen_golden: Option<PathBuf>,

    /// Print the elapsed wall time on stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trip permutation, necklaces, positroid size, face count and reducedness.
    Inspect {
        graph: PathBuf,
        /// Print the graph in DOT format instead of the report.
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate perfect matchings, optionally with a fixed boundary.
    Matchings {
        graph: PathBuf,
        /// Comma-separated boundary subset, e.g. "1,3".
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Boundary measurement of an edge weighting.
    Measure { graph: PathBuf, weights: PathBuf },
    /// Face labels from source or target strands.
    Labels {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Left or right twist of a matrix.
    #[command(group(ArgGroup::new("side").required(true).args(["left", "right"])))]
    Twist {
        matrix: PathBuf,
        #[arg(long)]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// The map mu, which agrees with the double right twist up to torus action.
    Mu { matrix: PathBuf },
    /// Seeded checks of the measurement, the twist and their inverses.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Build a reduced graph for a decorated permutation from lollipops and bridges.
    Synth {
        /// The values pi(1), ..., pi(n), e.g. "3,4,5,6".
        #[arg(long)]
        perm: String,
    },
    /// Apply a JSON list of moves to a weighted graph.
    Move {
        graph: PathBuf,
        weights: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Laurent expansion of a twisted Pluecker coordinate in face coordinates.
    Laurent {
        graph: PathBuf,
        #[arg(long = "J", value_name = "J")]
        j: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Source,
    Target,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    inputs: Value,
    status: Status,
    payload: Value,
}

enum Output {
    Report(Report),
    Text(String),
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn model(path: &Path) -> positroid::Result<PlabicModel> {
    PlabicModel::new(read_graph(path)?)
}

fn label_strings(g: &PlabicGraph, labels: &[positroid::KSubset]) -> serde_json::Map<String, Value> {
    g.faces().iter().zip(labels).map(|(f, l)| (f.id.clone(), Value::from(l.label(g.n())))).collect()
}

fn sorted_labels(g: &PlabicGraph, labels: &[positroid::KSubset]) -> Vec<String> {
    let mut v: Vec<String> = labels.iter().map(|l| l.label(g.n())).collect();
    v.sort();
    v
}

/// Compares the graph against the transcriptions in its `expect` block.
fn self_checks(g: &PlabicGraph, sd: &StrandDiagram) -> positroid::Result<Vec<Value>> {
    let Some(expect) = g.expect() else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    if let Some(p) = expect.get("perm") {
        let want: Vec<i64> = serde_json::from_value(p.clone())
            .map_err(|e| Error::Malformed(format!("expect.perm: {e}")))?;
        out.push(json!({
            "check": "perm",
            "ok": sd.perm().values() == want.as_slice(),
        }));
    }
    for (key, mode) in [("source", LabelMode::Source), ("target", LabelMode::Target)] {
        if let Some(l) = expect.get(key) {
            let mut want: Vec<String> = serde_json::from_value(l.clone())
                .map_err(|e| Error::Malformed(format!("expect.{key}: {e}")))?;
            want.sort();
            let got = sorted_labels(g, &sd.face_labels(g, mode)?);
            out.push(json!({ "check": key, "ok": got == want }));
        }
    }
    Ok(out)
}

fn inspect(path: &Path, dot: bool) -> positroid::Result<Output> {
    let g = read_graph(path)?;
    if dot {
        return Ok(Output::Text(g.to_dot()));
    }
    let sd = StrandDiagram::new(&g);
    let pi = sd.perm().clone();
    let (n, k) = (pi.n(), pi.k());
    let forward = necklace_from_perm(&pi, Direction::Forward);
    let reverse = necklace_from_perm(&pi, Direction::Reverse);
    let size = positroid_from_necklace(&forward).bases.len();
    let expected_faces = (k * (n - k) + 1) as i64 - pi.length() as i64;
    let faces = g.faces().len();
    let witness = sd.reducedness_witness(&g);
    let checks = self_checks(&g, &sd)?;
    let ok = witness.is_none()
        && faces as i64 == expected_faces
        && checks.iter().all(|c| c["ok"] == Value::Bool(true));
    let necklace_labels = |nk: &positroid::GrassmannNecklace| -> Vec<String> {
        nk.elements.iter().map(|s| s.label(n)).collect()
    };
    let mut payload = json!({
        "n": n,
        "k": k,
        "perm": pi.values(),
        "length": pi.length(),
        "necklace": necklace_labels(&forward),
        "reverse_necklace": necklace_labels(&reverse),
        "positroid_size": size,
        "faces": faces,
        "expected_faces": expected_faces,
        "reduced": witness.is_none(),
        "self_checks": checks,
    });
    if let Some(w) = witness {
        payload["witness"] = Value::from(w);
    }
    Ok(Output::Report(Report {
        command: "inspect",
        inputs: json!({ "graph": path_str(path) }),
        status: if ok { Status::Pass } else { Status::Fail },
        payload,
    }))
}

fn run(cli: &Cli) -> positroid::Result<Output> {
    let report = match &cli.command {
        Command::Inspect { graph, dot } => return inspect(graph, *dot),
        Command::Matchings { graph, boundary } => {
            let g = read_graph(graph)?;
            let filter = boundary.as_deref().map(|b| parse_subset(g.n(), b)).transpose()?;
            let ms = enumerate_matchings(&g, filter);
            Report {
                command: "matchings",
                inputs: json!({ "graph": path_str(graph), "boundary": boundary }),
                status: Status::Pass,
                payload: json!({
                    "count": ms.len(),
                    "matchings": ms.iter().map(|m| m.to_json(&g)).collect::<Vec<_>>(),
                }),
            }
        }
        Command::Measure { graph, weights } => {
            let m = model(graph)?;
            let z = read_id_map(weights)?.edge_vec(&m.graph)?;
            let p = m.measure(&z);
            Report {
                command: "measure",
                inputs: json!({ "graph": path_str(graph), "weights": path_str(weights) }),
                status: Status::Pass,
                payload: json!({
                    "pluecker": p,
                    "matrix": positroid::linalg::matrix_from_pluecker(&p)?,
                }),
            }
        }
        Command::Labels { graph, mode } => {
            let g = read_graph(graph)?;
            let (mode, name) = match mode {
                Mode::Source => (LabelMode::Source, "source"),
                Mode::Target => (LabelMode::Target, "target"),
            };
            let labels = StrandDiagram::new(&g).face_labels(&g, mode)?;
            Report {
                command: "labels",
                inputs: json!({ "graph": path_str(graph), "mode": name }),
                status: Status::Pass,
                payload: Value::Object(label_strings(&g, &labels)),
            }
        }
        Command::Twist { matrix, left, times, .. } => {
            let side = if *left { TwistSide::Left } else { TwistSide::Right };
            let m = read_matrix(matrix)?;
            Report {
                command: "twist",
                inputs: json!({
                    "matrix": path_str(matrix),
                    "side": if *left { "left" } else { "right" },
                    "times": times,
                }),
                status: Status::Pass,
                payload: serde_json::to_value(m.twist_times(side, *times)?).expect("serializable"),
            }
        }
        Command::Mu { matrix } => Report {
            command: "mu",
            inputs: json!({ "matrix": path_str(matrix) }),
            status: Status::Pass,
            payload: serde_json::to_value(read_matrix(matrix)?.mu()?).expect("serializable"),
        },
        Command::Verify { graph, seed, trials } => {
            let m = model(graph)?;
            let items = verify_diagram(&m, *seed, *trials);
            let failed = items.iter().filter(|c| !c.passed()).count();
            Report {
                command: "verify",
                inputs: json!({ "graph": path_str(graph), "seed": seed, "trials": trials }),
                status: if failed == 0 { Status::Pass } else { Status::Fail },
                payload: json!({ "checks": items, "failed": failed }),
            }
        }
        Command::Synth { perm } => {
            let pi = BoundedAffinePermutation::parse(perm)?;
            let s = synthesize(&pi)?;
            Report {
                command: "synth",
                inputs: json!({ "perm": pi.values() }),
                status: Status::Pass,
                payload: json!({
                    "steps": s.steps,
                    "graph": s.graph.raw(),
                    "weights": s.weights,
                }),
            }
        }
        Command::Move { graph, weights, spec } => {
            let g = read_graph(graph)?;
            let z = read_id_map(weights)?;
            let moves = read_moves(spec)?;
            let (out, gauge) = apply_moves(&g, &z, &moves)?;
            Report {
                command: "move",
                inputs: json!({
                    "graph": path_str(graph),
                    "weights": path_str(weights),
                    "spec": path_str(spec),
                }),
                status: Status::Pass,
                payload: json!({
                    "graph": out.graph.raw(),
                    "weights": out.weights,
                    "gauge": gauge,
                }),
            }
        }
        Command::Laurent { graph, j } => {
            let m = model(graph)?;
            let j = parse_subset(m.graph.n(), j)?;
            let terms = m.laurent_terms(j);
            Report {
                command: "laurent",
                inputs: json!({ "graph": path_str(graph), "J": j }),
                status: Status::Pass,
                payload: json!({ "count": terms.len(), "terms": terms }),
            }
        }
    };
    Ok(Output::Report(report))
}

fn fail(code: u8, kind: &str, message: String) -> ExitCode {
    eprint!("{}", to_pretty(&json!({ "status": "error", "kind": kind, "message": message })));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(1, "usage", e.to_string()),
    };
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    let out = match result {
        Ok(o) => o,
        Err(e) if e.is_malformed() => return fail(1, "malformed", e.to_string()),
        Err(e) => return fail(2, "precondition", e.to_string()),
    };
    let (text, status) = match out {
        Output::Text(t) => (t, Status::Pass),
        Output::Report(r) => (to_pretty(&r), r.status),
    };
    if let Some(path) = &cli.regen_golden {
        if let Err(e) = std::fs::write(path, &text) {
            return fail(1, "io", format!("cannot write {}: {e}", path.display()));
        }
    }
    print!("{text}");
    if status == Status::Pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
