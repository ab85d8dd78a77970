use serde::Serialize;

use super::grc_conditions;
use crate::level_graph::{EnhancedLevelGraph, SignatureMu};
use crate::twist_lattice::{smith_normal_form, IntegerMatrix};

/// Dimension of relative cohomology `H^1(X - P, Z)` of a genus `g` surface
/// with `p` punctures and `z` relative points.
fn relative_h1(genus: u64, p: usize, z: usize) -> i128 {
    2 * genus as i128 + p as i128 + z as i128 - 2 + (p == 0) as i128 + (z == 0) as i128
}

/// Dimension of the stratum of differentials of type `mu`.
pub fn stratum_dim(mu: &SignatureMu) -> u64 {
    let p = mu.orders().iter().filter(|&&m| m < 0).count();
    let z = mu.n() - p;
    relative_h1(mu.genus(), p, z).max(0) as u64
}

/// A pole at level `i`, indexing a residue variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pole {
    Marked(usize),
    Lower(usize),
    /// Horizontal half-edge; `true` for the "+" end.
    Horizontal(usize, bool),
}

fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    smith_normal_form(&IntegerMatrix::from_rows(cols, rows)).rank()
}

/// Dimension of the GRC space at `level`: relative cohomology of the level
/// `level` components cut by the horizontal matching and the level's global
/// residue conditions, counted modulo the residue theorem.
pub fn grc_space_dim(graph: &EnhancedLevelGraph, level: i64) -> u64 {
    let at: Vec<usize> = (0..graph.vertices().len())
        .filter(|&v| graph.level(v) == level)
        .collect();
    let mut poles: Vec<(usize, Pole)> = Vec::new();
    let mut ambient: i128 = 0;
    for &v in &at {
        let vert = graph.vertex(v);
        let mut p = 0;
        let mut z = 0;
        for &j in &vert.legs {
            if graph.mu().orders()[j] < 0 {
                poles.push((v, Pole::Marked(j)));
                p += 1;
            } else {
                z += 1;
            }
        }
        for e in 0..graph.edges().len() {
            if graph.is_horizontal(e) {
                for (end, plus) in [(graph.top(e), true), (graph.bottom(e), false)] {
                    if end == v {
                        poles.push((v, Pole::Horizontal(e, plus)));
                        p += 1;
                    }
                }
            } else if graph.bottom(e) == v {
                poles.push((v, Pole::Lower(e)));
                p += 1;
            } else if graph.top(e) == v {
                z += 1;
            }
        }
        ambient += relative_h1(vert.genus, p, z);
    }

    let var = |pole: Pole| poles.iter().position(|&(_, q)| q == pole).unwrap();
    let nvars = poles.len();
    let unit = |idx: &[usize]| {
        let mut row = vec![0i64; nvars];
        for &i in idx {
            row[i] += 1;
        }
        row
    };

    let residue_theorem: Vec<Vec<i64>> = at
        .iter()
        .filter_map(|&v| {
            let idx: Vec<usize> = (0..nvars).filter(|&i| poles[i].0 == v).collect();
            (!idx.is_empty()).then(|| unit(&idx))
        })
        .collect();
    let mut conditions = residue_theorem.clone();
    for e in graph.horizontal_edges() {
        if graph.level(graph.top(e)) == level {
            conditions.push(unit(&[
                var(Pole::Horizontal(e, true)),
                var(Pole::Horizontal(e, false)),
            ]));
        }
    }
    for cond in grc_conditions(graph) {
        if cond.level == level {
            let idx: Vec<usize> = cond.edges.iter().map(|&e| var(Pole::Lower(e))).collect();
            conditions.push(unit(&idx));
        }
    }
    let cut = rank(&conditions, nvars) - rank(&residue_theorem, nvars);
    (ambient - cut as i128).max(0) as u64
}

/// GRC space dimensions for levels `0, -1, ..., -N`.
pub fn grc_space_dims(graph: &EnhancedLevelGraph) -> Vec<u64> {
    graph.levels().map(|l| grc_space_dim(graph, l)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimIdentity {
    pub per_level: Vec<u64>,
    /// Sum of the GRC space dimensions.
    pub lhs: i128,
    /// Stratum dimension minus the number of horizontal edges.
    pub rhs: i128,
    pub equal: bool,
}

pub fn dim_identity_check(graph: &EnhancedLevelGraph) -> DimIdentity {
    let per_level = grc_space_dims(graph);
    let lhs: i128 = per_level.iter().map(|&d| d as i128).sum();
    let rhs = stratum_dim(graph.mu()) as i128 - graph.n_horizontal() as i128;
    DimIdentity {
        per_level,
        lhs,
        rhs,
        equal: lhs == rhs,
    }
}
