//! Exhaustive enumeration of enhanced level graphs of a given type, up to
//! isomorphisms fixing the legs.

mod canonical;
mod enhancements;

use std::collections::BTreeMap;

pub use canonical::{canonical_form, CanonicalKey};
pub use enhancements::{enumerate_enhancements, kappa_bound};

use crate::error::{Error, Result};
use crate::level_graph::{codim, validate, Edge, EnhancedLevelGraph, SignatureMu, Vertex};
use enhancements::{with_kappa, DegreeSystem};

/// Largest `2g - 2 + n` (the vertex bound) accepted.
pub const MAX_VERTICES: usize = 6;
/// Largest `3g - 3 + n` (the edge bound) accepted.
pub const MAX_EDGES: usize = 7;
pub const MAX_CODIM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedGraph {
    pub key: CanonicalKey,
    pub graph: EnhancedLevelGraph,
    pub codim: usize,
}

/// Canonical graphs sorted by key.
pub fn enumerate_enhanced_level_graphs(
    mu: &SignatureMu,
    max_codim: usize,
) -> Result<Vec<EnhancedLevelGraph>> {
    Ok(enumerate_with_keys(mu, max_codim)?
        .into_iter()
        .map(|e| e.graph)
        .collect())
}

fn stable_bounds(mu: &SignatureMu) -> Result<(i128, i128)> {
    if !mu.is_consistent() {
        return Err(Error::InvalidSignature(format!(
            "orders of {mu} do not sum to 2g-2"
        )));
    }
    if mu.n() == 0 {
        return Err(Error::InvalidSignature(
            "enumeration needs at least one marked point".into(),
        ));
    }
    let euler = 2 * mu.genus() as i128 - 2 + mu.n() as i128;
    if euler <= 0 {
        return Err(Error::InvalidSignature(format!(
            "{mu} has no stable curves"
        )));
    }
    Ok((euler, 3 * mu.genus() as i128 - 3 + mu.n() as i128))
}

fn refuse(what: String) -> Error {
    Error::BoundsExceeded(format!(
        "{what} is beyond the limits of {MAX_VERTICES} vertices, {MAX_EDGES} edges, codim {MAX_CODIM}"
    ))
}

/// All graphs of type `mu` with codimension at most `max_codim`, sorted by
/// canonical key. Refuses types whose stable graphs may have more than
/// [`MAX_VERTICES`] vertices or [`MAX_EDGES`] edges.
pub fn enumerate_with_keys(mu: &SignatureMu, max_codim: usize) -> Result<Vec<EnumeratedGraph>> {
    let (euler, edges) = stable_bounds(mu)?;
    if euler > MAX_VERTICES as i128 || edges > MAX_EDGES as i128 || max_codim > MAX_CODIM {
        return Err(refuse(format!("{mu} with max codim {max_codim}")));
    }
    Ok(search(mu, max_codim, euler as usize, edges as usize))
}

/// The part of the enumeration with at most `max_vertices` vertices and
/// `max_edges` edges. Complete whenever the caps reach `2g-2+n` and
/// `3g-3+n`; used to reach types beyond the default limits.
pub fn enumerate_restricted(
    mu: &SignatureMu,
    max_codim: usize,
    max_vertices: usize,
    max_edges: usize,
) -> Result<Vec<EnumeratedGraph>> {
    let (euler, edges) = stable_bounds(mu)?;
    if max_vertices > MAX_VERTICES || max_edges > MAX_EDGES || max_codim > MAX_CODIM {
        return Err(refuse(format!(
            "cap of {max_vertices} vertices, {max_edges} edges, codim {max_codim}"
        )));
    }
    let v = (euler as usize).min(max_vertices);
    let e = (edges.max(0) as usize).min(max_edges);
    Ok(search(mu, max_codim, v, e))
}

fn search(mu: &SignatureMu, max_codim: usize, max_v: usize, max_e: usize) -> Vec<EnumeratedGraph> {
    let n = mu.n();
    let g = mu.genus() as usize;
    let mut found: BTreeMap<CanonicalKey, EnhancedLevelGraph> = BTreeMap::new();
    let bound = kappa_bound(mu);

    for nv in 1..=max_v {
        for blocks in set_partitions(n) {
            let k = blocks.len();
            if k > nv {
                continue;
            }
            let legless = nv - k;
            for ne in nv - 1..=max_e {
                let h1 = ne + 1 - nv;
                if h1 > g {
                    break;
                }
                let genus_budget = g - h1;
                for depth in 0..=max_codim.min(nv - 1) {
                    for descr in descriptors(k, legless, genus_budget, depth) {
                        let vertices: Vec<Vertex> = descr
                            .iter()
                            .enumerate()
                            .map(|(i, &(genus, level))| {
                                let legs = if i < k { blocks[i].clone() } else { Vec::new() };
                                Vertex::new(genus as u64, -(level as i64), legs)
                            })
                            .collect();
                        let h_budget = max_codim - depth;
                        for edges in edge_sets(&vertices, ne, h_budget) {
                            let Ok(skeleton) =
                                EnhancedLevelGraph::new(mu.clone(), vertices.clone(), edges)
                            else {
                                continue;
                            };
                            if !skeleton_ok(&skeleton) {
                                continue;
                            }
                            let system = DegreeSystem::new(&skeleton);
                            for kappa in system.solve(bound) {
                                let graph = with_kappa(&skeleton, &system.vertical, &kappa);
                                debug_assert!(validate(&graph).valid);
                                let (canon, key) = canonical_form(&graph);
                                found.entry(key).or_insert(canon);
                            }
                        }
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|(key, graph)| EnumeratedGraph {
            codim: codim(&graph),
            key,
            graph,
        })
        .collect()
}

/// Connectivity and stability, the checks that do not involve `kappa`.
fn skeleton_ok(skeleton: &EnhancedLevelGraph) -> bool {
    if !skeleton.is_connected() {
        return false;
    }
    (0..skeleton.vertices().len()).all(|v| {
        let vert = skeleton.vertex(v);
        vert.genus > 0 || skeleton.valence(v) + vert.legs.len() >= 3
    })
}

/// Set partitions of `0..n` into nonempty blocks, each block sorted and the
/// blocks ordered by their smallest element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// `(genus, depth below zero)` for `k` leg-carrying vertices followed by a
/// nondecreasing list for `legless` interchangeable vertices, with total
/// genus `genus` and levels covering `0..=depth`.
fn descriptors(k: usize, legless: usize, genus: usize, depth: usize) -> Vec<Vec<(usize, usize)>> {
    let options: Vec<(usize, usize)> = (0..=genus)
        .flat_map(|g| (0..=depth).map(move |l| (g, l)))
        .collect();
    let mut search = DescriptorSearch {
        k,
        total: k + legless,
        depth,
        options,
        cur: Vec::new(),
        out: Vec::new(),
    };
    search.rec(0, genus);
    search.out
}

struct DescriptorSearch {
    k: usize,
    total: usize,
    depth: usize,
    options: Vec<(usize, usize)>,
    cur: Vec<(usize, usize)>,
    out: Vec<Vec<(usize, usize)>>,
}

impl DescriptorSearch {
    fn rec(&mut self, pos: usize, genus_left: usize) {
        if pos == self.total {
            if genus_left == 0 {
                let mut seen = vec![false; self.depth + 1];
                for &(_, l) in &self.cur {
                    seen[l] = true;
                }
                if seen.iter().all(|&s| s) {
                    self.out.push(self.cur.clone());
                }
            }
            return;
        }
        let start = if pos > self.k {
            self.options
                .iter()
                .position(|&o| o == self.cur[pos - 1])
                .unwrap()
        } else {
            0
        };
        for i in start..self.options.len() {
            let o = self.options[i];
            if o.0 > genus_left {
                continue;
            }
            self.cur.push(o);
            self.rec(pos + 1, genus_left - o.0);
            self.cur.pop();
        }
    }
}

/// Multisets of `count` edges on the given vertices with at most
/// `horizontal_budget` horizontal edges (loops included).
fn edge_sets(vertices: &[Vertex], count: usize, horizontal_budget: usize) -> Vec<Vec<Edge>> {
    let nv = vertices.len();
    let pairs: Vec<(usize, usize, bool)> = (0..nv)
        .flat_map(|a| (a..nv).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, vertices[a].level == vertices[b].level))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        i: usize,
        left: usize,
        hor_left: usize,
        pairs: &[(usize, usize, bool)],
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == pairs.len() {
            return;
        }
        let (a, b, hor) = pairs[i];
        let max = if hor { left.min(hor_left) } else { left };
        for m in 0..=max {
            for _ in 0..m {
                cur.push(Edge::horizontal(a, b));
            }
            let h = if hor { hor_left - m } else { hor_left };
            rec(i + 1, left - m, h, pairs, cur, out);
            for _ in 0..m {
                cur.pop();
            }
        }
    }
    rec(0, count, horizontal_budget, &pairs, &mut cur, &mut out);
    out
}
