//! Undegenerations: smoothing horizontal nodes and merging adjacent levels.
//!
//! A vertical undegeneration is given by a level map `delta` that is
//! order-preserving and surjective onto `0, -1, ..., -M`; it is usually
//! indexed by the subset `J` of lower levels that survive as break points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::level_graph::{Edge, EnhancedLevelGraph, UnionFind, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Undegeneration {
    /// `delta[k]` is the image of level `-k`.
    pub delta: Vec<i64>,
    pub smoothed_horizontal: Vec<usize>,
    pub contracted_edges: Vec<usize>,
    /// Source vertex to target vertex.
    pub vertex_merge: Vec<usize>,
    /// Source edge to target edge, `None` for contracted edges.
    pub edge_map: Vec<Option<usize>>,
}

impl Undegeneration {
    pub fn map_level(&self, level: i64) -> i64 {
        self.delta[(-level) as usize]
    }
}

/// Level map of the undegeneration keeping the break points `j`:
/// `delta_J(l) = -#{j in J : j >= l}`.
pub fn level_map_for_subset(graph: &EnhancedLevelGraph, keep: &[i64]) -> Result<Vec<i64>> {
    let n = graph.depth() as i64;
    for &j in keep {
        if !(-n..0).contains(&j) {
            return Err(Error::InvalidLevelMap(format!(
                "{j} is not a level below zero (levels are -1..={})",
                -n
            )));
        }
    }
    Ok(graph
        .levels()
        .map(|l| -(keep.iter().filter(|&&j| j >= l).count() as i64))
        .collect())
}

fn check_level_map(graph: &EnhancedLevelGraph, delta: &[i64]) -> Result<()> {
    if delta.len() != graph.depth() + 1 {
        return Err(Error::InvalidLevelMap(format!(
            "expected {} entries, got {}",
            graph.depth() + 1,
            delta.len()
        )));
    }
    if delta[0] != 0 {
        return Err(Error::InvalidLevelMap("top level must map to 0".into()));
    }
    for w in delta.windows(2) {
        match w[0] - w[1] {
            0 | 1 => {}
            d if d < 0 => {
                return Err(Error::InvalidLevelMap(
                    "level map reverses the order".into(),
                ))
            }
            _ => return Err(Error::InvalidLevelMap("level map is not surjective".into())),
        }
    }
    Ok(())
}

pub fn undegenerate_vertical(
    graph: &EnhancedLevelGraph,
    delta: &[i64],
) -> Result<(EnhancedLevelGraph, Undegeneration)> {
    check_level_map(graph, delta)?;
    contract(graph, delta, &[])
}

pub fn undegenerate_horizontal(
    graph: &EnhancedLevelGraph,
    smooth: &[usize],
) -> Result<(EnhancedLevelGraph, Undegeneration)> {
    let delta: Vec<i64> = graph.levels().collect();
    contract(graph, &delta, smooth)
}

pub fn undegenerate_by_level_subset(
    graph: &EnhancedLevelGraph,
    keep: &[i64],
) -> Result<(EnhancedLevelGraph, Undegeneration)> {
    let delta = level_map_for_subset(graph, keep)?;
    contract(graph, &delta, &[])
}

/// Combined undegeneration: keep the break points `keep` and smooth the
/// horizontal edges `smooth`.
pub fn undegenerate(
    graph: &EnhancedLevelGraph,
    keep: &[i64],
    smooth: &[usize],
) -> Result<(EnhancedLevelGraph, Undegeneration)> {
    let delta = level_map_for_subset(graph, keep)?;
    contract(graph, &delta, smooth)
}

fn contract(
    graph: &EnhancedLevelGraph,
    delta: &[i64],
    smooth: &[usize],
) -> Result<(EnhancedLevelGraph, Undegeneration)> {
    let ne = graph.edges().len();
    let mut smoothed = smooth.to_vec();
    smoothed.sort_unstable();
    smoothed.dedup();
    for &e in &smoothed {
        if e >= ne {
            return Err(Error::EdgeOutOfRange(e));
        }
        if !graph.is_horizontal(e) {
            return Err(Error::NotHorizontal(e));
        }
    }
    let lvl = |v: usize| delta[(-graph.level(v)) as usize];
    let contracted: Vec<usize> = (0..ne)
        .filter(|&e| {
            if graph.is_horizontal(e) {
                smoothed.binary_search(&e).is_ok()
            } else {
                lvl(graph.top(e)) == lvl(graph.bottom(e))
            }
        })
        .collect();

    let nv = graph.vertices().len();
    let mut uf = UnionFind::new(nv);
    for &e in &contracted {
        let [a, b] = graph.edge(e).ends;
        uf.union(a, b);
    }
    // union-find roots are minimal members, so ordering by root orders by
    // minimal source index
    let mut roots: Vec<usize> = (0..nv).map(|v| uf.find(v)).collect();
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for r in roots.iter_mut() {
        *r = distinct.binary_search(r).unwrap();
    }
    let merge = roots;

    let mut genus = vec![1i128; distinct.len()];
    let mut legs = vec![Vec::new(); distinct.len()];
    let mut level = vec![0i64; distinct.len()];
    for (v, &t) in merge.iter().enumerate() {
        genus[t] += graph.vertex(v).genus as i128 - 1;
        legs[t].extend(graph.vertex(v).legs.iter().copied());
        level[t] = lvl(v);
    }
    for &e in &contracted {
        genus[merge[graph.edge(e).ends[0]]] += 1;
    }
    let vertices: Vec<Vertex> = (0..distinct.len())
        .map(|t| Vertex::new(genus[t] as u64, level[t], std::mem::take(&mut legs[t])))
        .collect();

    let mut edges = Vec::new();
    let mut edge_map = vec![None; ne];
    for (e, slot) in edge_map.iter_mut().enumerate() {
        if contracted.binary_search(&e).is_ok() {
            continue;
        }
        let [a, b] = graph.edge(e).ends;
        let kappa = if graph.is_horizontal(e) {
            None
        } else {
            graph.edge(e).kappa
        };
        *slot = Some(edges.len());
        edges.push(Edge {
            ends: [merge[a], merge[b]],
            kappa,
        });
    }
    let target = EnhancedLevelGraph::new(graph.mu().clone(), vertices, edges)?;
    Ok((
        target,
        Undegeneration {
            delta: delta.to_vec(),
            smoothed_horizontal: smoothed,
            contracted_edges: contracted,
            vertex_merge: merge,
            edge_map,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndegenerationEntry {
    /// Surviving break points, in decreasing order.
    pub keep: Vec<i64>,
    /// Smoothed horizontal edges, increasing.
    pub smooth: Vec<usize>,
    pub graph: EnhancedLevelGraph,
    pub undegeneration: Undegeneration,
}

/// All `2^N * 2^H` undegenerations, ordered lexicographically by
/// `(keep, smooth)`.
pub fn enumerate_undegenerations(graph: &EnhancedLevelGraph) -> Vec<UndegenerationEntry> {
    let levels: Vec<i64> = graph.lower_levels().collect();
    let horizontal = graph.horizontal_edges();
    let mut keeps: Vec<Vec<i64>> = subsets(&levels);
    let mut smooths: Vec<Vec<usize>> = subsets(&horizontal);
    keeps.sort();
    smooths.sort();
    let mut out = Vec::with_capacity(keeps.len() * smooths.len());
    for keep in &keeps {
        for smooth in &smooths {
            let (g, u) = undegenerate(graph, keep, smooth).expect("subsets are admissible");
            out.push(UndegenerationEntry {
                keep: keep.clone(),
                smooth: smooth.clone(),
                graph: g,
                undegeneration: u,
            });
        }
    }
    out
}

/// Subsets of `items`, each listed in the order of `items`.
fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::level_graph::{codim, validate};

    #[test]
    fn merge_lower_levels_of_gamma1() {
        let g = fixtures::gamma1();
        let (h, u) = undegenerate_vertical(&g, &[0, -1, -1]).unwrap();
        assert_eq!(h.vertices().len(), 2);
        assert_eq!(h.vertex(0).genus, 3);
        assert_eq!(h.vertex(1).genus, 1);
        let kappas: Vec<_> = h.edges().iter().map(|e| e.kappa).collect();
        assert_eq!(kappas, vec![Some(3), Some(1)]);
        assert_eq!(u.contracted_edges, vec![1]);
        assert_eq!(u.edge_map, vec![Some(0), None, Some(1)]);
        assert!(validate(&h).valid);

        let (h2, _) = undegenerate_by_level_subset(&g, &[-1]).unwrap();
        assert_eq!(h, h2);
    }

    #[test]
    fn identity_and_full_smoothing() {
        let g = fixtures::gamma1();
        assert_eq!(undegenerate_vertical(&g, &[0, -1, -2]).unwrap().0, g);
        assert_eq!(undegenerate_by_level_subset(&g, &[-1, -2]).unwrap().0, g);
        for (h, _) in [
            undegenerate_vertical(&g, &[0, 0, 0]).unwrap(),
            undegenerate_by_level_subset(&g, &[]).unwrap(),
        ] {
            assert_eq!(h, fixtures::smooth(5, vec![4, 4, 2, -2]));
        }
    }

    #[test]
    fn bad_level_maps() {
        let g = fixtures::gamma1();
        assert!(undegenerate_vertical(&g, &[0, 0, -2]).is_err());
        assert!(undegenerate_vertical(&g, &[0, -1, 0]).is_err());
        assert!(undegenerate_vertical(&g, &[0, -1]).is_err());
        assert!(undegenerate_by_level_subset(&g, &[-3]).is_err());
        assert!(undegenerate_by_level_subset(&g, &[0]).is_err());
    }

    #[test]
    fn horizontal_smoothing() {
        let g = fixtures::two_horizontal();
        let (h, _) = undegenerate_horizontal(&g, &[0]).unwrap();
        assert_eq!(h.vertices().len(), 1);
        assert_eq!(h.vertex(0).genus, 2);
        assert_eq!(h.edges(), &[Edge::horizontal(0, 0)]);
        assert!(validate(&h).valid);

        let (h, _) = undegenerate_horizontal(&g, &[0, 1]).unwrap();
        assert_eq!(h, fixtures::smooth(3, vec![2, 1, 1]));
        assert_eq!(undegenerate_horizontal(&g, &[]).unwrap().0, g);
        assert_eq!(
            undegenerate_horizontal(&fixtures::gamma1(), &[0]),
            Err(Error::NotHorizontal(0))
        );
    }

    #[test]
    fn enumeration_counts() {
        let all = enumerate_undegenerations(&fixtures::gamma1());
        assert_eq!(all.len(), 4);
        assert_eq!(all[0].keep, Vec::<i64>::new());
        assert_eq!(
            enumerate_undegenerations(&fixtures::two_horizontal()).len(),
            4
        );
        assert_eq!(
            enumerate_undegenerations(&fixtures::smooth(1, vec![0])).len(),
            1
        );
        for entry in all {
            assert_eq!(codim(&entry.graph), entry.keep.len());
        }
    }
}
