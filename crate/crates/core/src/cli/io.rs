//! Graph and residue files. Legs are 1-based in files and 0-based in memory;
//! vertex and edge indices are 0-based in both.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::level_graph::{Edge, EnhancedLevelGraph, SignatureMu, Vertex};
use crate::residue_grc::{GaussianRational, ResidueAssignment};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Graph(#[from] crate::Error),
    #[error("{0}")]
    Schema(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub mu: Vec<i64>,
    pub vertices: Vec<VertexFile>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexFile {
    pub genus: u64,
    pub level: i64,
    pub legs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub ends: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<u64>,
}

impl From<&EnhancedLevelGraph> for GraphFile {
    fn from(g: &EnhancedLevelGraph) -> Self {
        GraphFile {
            mu: g.mu().orders().to_vec(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexFile {
                    genus: v.genus,
                    level: v.level,
                    legs: v.legs.iter().map(|l| l + 1).collect(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    ends: e.ends,
                    kappa: e.kappa,
                })
                .collect(),
        }
    }
}

impl GraphFile {
    /// The genus is read off `mu`; levels are normalized.
    pub fn to_graph(&self) -> Result<EnhancedLevelGraph, IoError> {
        let mu = SignatureMu::from_orders(self.mu.clone())?;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.level > 0 {
                return Err(IoError::Schema(format!(
                    "vertex {i} has positive level {}",
                    v.level
                )));
            }
            let legs = v
                .legs
                .iter()
                .map(|&l| {
                    l.checked_sub(1).ok_or_else(|| {
                        IoError::Schema(format!("vertex {i} has leg 0; legs are 1-based"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            vertices.push(Vertex::new(v.genus, v.level, legs));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                ends: e.ends,
                kappa: e.kappa,
            })
            .collect();
        Ok(EnhancedLevelGraph::new(mu, vertices, edges)?)
    }
}

pub fn graph_to_json(g: &EnhancedLevelGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from(g)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<EnhancedLevelGraph, IoError> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<EnhancedLevelGraph, IoError> {
    graph_from_json(&read(path)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidueFile {
    #[serde(default)]
    vertical: BTreeMap<String, [Value; 4]>,
    #[serde(default)]
    horizontal: BTreeMap<String, [Value; 4]>,
    #[serde(default)]
    marked_poles: Option<BTreeMap<String, [Value; 4]>>,
}

/// An integer given as a JSON number or as a decimal string.
fn big(v: &Value) -> Result<BigInt, IoError> {
    let parsed = match v {
        Value::Number(n) if n.is_i64() => n.as_i64().map(BigInt::from),
        Value::Number(n) if n.is_u64() => n.as_u64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    };
    parsed.ok_or_else(|| IoError::Schema(format!("{v} is not an integer")))
}

fn residue(entry: &[Value; 4]) -> Result<GaussianRational, IoError> {
    let [a, b, c, d] = entry;
    let (a, b, c, d) = (big(a)?, big(b)?, big(c)?, big(d)?);
    if b <= BigInt::from(0) || d <= BigInt::from(0) {
        return Err(IoError::Schema(
            "residue denominators must be positive".into(),
        ));
    }
    Ok(GaussianRational::from_fractions(a, b, c, d).expect("nonzero denominators"))
}

fn index_map(
    raw: &BTreeMap<String, [Value; 4]>,
    offset: usize,
) -> Result<BTreeMap<usize, GaussianRational>, IoError> {
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let i: usize = k
            .parse()
            .map_err(|_| IoError::Schema(format!("bad index {k:?}")))?;
        let i = i
            .checked_sub(offset)
            .ok_or_else(|| IoError::Schema(format!("index {k} out of range")))?;
        out.insert(i, residue(v)?);
    }
    Ok(out)
}

pub fn residues_from_json(text: &str) -> Result<ResidueAssignment, IoError> {
    let file: ResidueFile = serde_json::from_str(text)?;
    Ok(ResidueAssignment {
        vertical: index_map(&file.vertical, 0)?,
        horizontal: index_map(&file.horizontal, 0)?,
        marked_poles: file
            .marked_poles
            .as_ref()
            .map(|m| index_map(m, 1))
            .transpose()?,
    })
}

pub fn load_residues(path: &Path) -> Result<ResidueAssignment, IoError> {
    residues_from_json(&read(path)?)
}
