//! Batch front end. Exit codes: 0 success, 1 bad input or invalid graph,
//! 2 a failed check, 3 the two GRC checkers disagree.

mod dot;
mod io;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};

pub use dot::to_dot;
pub use io::{
    graph_from_json, graph_to_json, load_graph, load_residues, residues_from_json, EdgeFile,
    GraphFile, IoError, VertexFile,
};
pub use report::{analysis_report, render_text};

use crate::degenerations::undegenerate;
use crate::enumerate::{enumerate_with_keys, CanonicalKey};
use crate::level_graph::{validate, EnhancedLevelGraph, SignatureMu};
use crate::residue_grc::{check_grc, check_grc_homological, residue_theorem_failures};

#[derive(Debug, Parser)]
#[command(
    name = "msd-strata",
    version,
    about = "Invariants of enhanced level graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every invariant of a graph.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write all graphs of a type, one file each, plus index.json.
    Enumerate {
        #[arg(long)]
        genus: u64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        mu: Vec<i64>,
        #[arg(long)]
        max_codim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a residue assignment against the global residue condition.
    Grc {
        graph: PathBuf,
        #[arg(long)]
        residues: PathBuf,
    },
    /// Merge levels and smooth horizontal edges.
    Undegenerate {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        keep_levels: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        smooth_horizontal: Vec<usize>,
    },
    /// Graphviz export.
    Dot { graph: PathBuf },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::input(e)
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::input(e)
    }
}

/// Writes to stdout; a closed pipe is not an error for a batch tool.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

/// Loads a graph and insists on a valid one, printing the report otherwise.
fn load_valid(path: &Path) -> Result<EnhancedLevelGraph, Failure> {
    let graph = load_graph(path)?;
    let report = validate(&graph);
    if !report.valid {
        emit(&(pretty(&serde_json::to_value(&report).expect("report serializes")) + "\n"));
        return Err(Failure::input(format!(
            "{} is not a valid enhanced level graph",
            path.display()
        )));
    }
    Ok(graph)
}

/// File name for a canonical key.
pub fn key_file_name(key: &CanonicalKey) -> String {
    let digest = Sha256::digest(&key.0);
    format!("{}.json", &hex::encode(digest)[..16])
}

fn analyze(file: &Path, as_json: bool) -> Result<(), Failure> {
    let graph = load_valid(file)?;
    if as_json {
        emit(&(pretty(&analysis_report(&graph)) + "\n"));
    } else {
        emit(&render_text(&graph));
    }
    Ok(())
}

fn enumerate(genus: u64, mu: Vec<i64>, max_codim: usize, out: &Path) -> Result<(), Failure> {
    let mu = SignatureMu::new(genus, mu);
    let graphs = enumerate_with_keys(&mu, max_codim)?;
    fs::create_dir_all(out).map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
    let mut index = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let name = key_file_name(&g.key);
        fs::write(out.join(&name), graph_to_json(&g.graph) + "\n")
            .map_err(|e| Failure::input(format!("{name}: {e}")))?;
        index.push(json!({ "file": name, "key": g.key.to_hex(), "codim": g.codim }));
    }
    let index = json!({
        "genus": genus,
        "mu": mu.orders(),
        "max_codim": max_codim,
        "count": graphs.len(),
        "graphs": index,
    });
    fs::write(out.join("index.json"), pretty(&index) + "\n")
        .map_err(|e| Failure::input(format!("index.json: {e}")))?;
    emit(&format!(
        "{} graphs written to {}\n",
        graphs.len(),
        out.display()
    ));
    Ok(())
}

fn grc(graph_path: &Path, residues: &Path) -> Result<(), Failure> {
    let graph = load_valid(graph_path)?;
    let rho = load_residues(residues)?;
    let theorem = residue_theorem_failures(&graph, &rho)?;
    if !theorem.is_empty() {
        return Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: format!("residue theorem fails at vertices {theorem:?}"),
        });
    }
    let direct = check_grc(&graph, &rho)?;
    let cycle = check_grc_homological(&graph, &rho)?;
    if direct.pass != cycle.pass {
        return Err(Failure {
            code: EXIT_DISAGREEMENT,
            message: format!(
                "checkers disagree: direct {}, homological {}",
                direct.pass, cycle.pass
            ),
        });
    }
    let report = json!({
        "pass": direct.pass,
        "violated": direct.violated.iter().map(|c| json!({
            "level": c.level,
            "component_vertices": c.component_vertices,
            "edges": c.edges,
        })).collect::<Vec<_>>(),
        "homological_violations": serde_json::to_value(&cycle.violated).expect("serializes"),
    });
    emit(&(pretty(&report) + "\n"));
    if direct.pass {
        Ok(())
    } else {
        let names: Vec<String> = direct
            .violated
            .iter()
            .map(|c| {
                format!(
                    "level {} component {:?} edges {:?}",
                    c.level, c.component_vertices, c.edges
                )
            })
            .collect();
        Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: format!("violated: {}", names.join("; ")),
        })
    }
}

fn undegenerate_cmd(path: &Path, keep: &[i64], smooth: &[usize]) -> Result<(), Failure> {
    let graph = load_valid(path)?;
    let (target, map) = undegenerate(&graph, keep, smooth)?;
    let out = json!({
        "graph": serde_json::to_value(GraphFile::from(&target)).expect("serializes"),
        "undegeneration": serde_json::to_value(&map).expect("serializes"),
    });
    emit(&(pretty(&out) + "\n"));
    Ok(())
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Analyze { file, json } => analyze(&file, json),
        Command::Enumerate {
            genus,
            mu,
            max_codim,
            out,
        } => enumerate(genus, mu, max_codim, &out),
        Command::Grc { graph, residues } => grc(&graph, &residues),
        Command::Undegenerate {
            graph,
            keep_levels,
            smooth_horizontal,
        } => undegenerate_cmd(&graph, &keep_levels, &smooth_horizontal),
        Command::Dot { graph } => load_valid(&graph).map(|g| emit(&to_dot(&g))),
    };
    match result {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
