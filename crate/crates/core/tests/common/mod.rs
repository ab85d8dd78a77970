#![allow(dead_code)]

use std::collections::BTreeSet;

use msd_strata::enumerate::{canonical_form, kappa_bound, CanonicalKey};
use msd_strata::{codim, validate, Edge, EnhancedLevelGraph, SignatureMu, Vertex};

/// Genus-zero signatures with at most five points, used as the
/// enumeration corpus. Each comes with the largest useful codimension.
pub fn genus_zero_corpus() -> Vec<(SignatureMu, usize)> {
    let orders: [&[i64]; 14] = [
        &[0, 0, -2],
        &[1, -1, -2],
        &[1, 0, -3],
        &[2, -1, -3],
        &[-1, -1, 0],
        &[0, 0, 0, -2],
        &[1, 1, 0, -4],
        &[1, 1, -1, -3],
        &[2, 0, -1, -3],
        &[1, 0, -1, -2],
        &[1, 1, 0, 0, -4],
        &[2, 1, 0, 0, -5],
        &[1, 0, 0, 0, -3],
        &[1, 1, 1, -2, -3],
    ];
    orders
        .iter()
        .map(|m| (SignatureMu::new(0, m.to_vec()), m.len() - 3))
        .collect()
}

/// A few genus-one types whose graphs have cycles.
pub fn genus_one_corpus() -> Vec<(SignatureMu, usize)> {
    vec![
        (SignatureMu::new(1, vec![0]), 1),
        (SignatureMu::new(1, vec![1, -1]), 2),
        (SignatureMu::new(1, vec![2, -2]), 2),
        (SignatureMu::new(1, vec![0, 0]), 2),
        (SignatureMu::new(1, vec![2, -1, -1]), 3),
        (SignatureMu::new(1, vec![1, 1, -2]), 3),
    ]
}

/// Every tuple in `0..base` of the given length, as an odometer.
fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Unpruned generator: every leg map, genus vector, level function, edge
/// multiplicity matrix and enhancement up to a bound, filtered by
/// validation alone. Returns the set of canonical keys.
pub fn brute_force_keys(mu: &SignatureMu, max_codim: usize) -> BTreeSet<CanonicalKey> {
    let n = mu.n();
    let g = mu.genus() as usize;
    let max_v = 2 * g + n - 2;
    let max_e = 3 * g + n - 3;
    // a little beyond the enumerator's own bound, to test that bound too
    let kbound = kappa_bound(mu) + 3;
    let mut keys = BTreeSet::new();
    for nv in 1..=max_v {
        let pairs: Vec<(usize, usize)> =
            (0..nv).flat_map(|a| (a..nv).map(move |b| (a, b))).collect();
        let mult = tuples(pairs.len(), max_e + 1);
        let mults: Vec<&Vec<usize>> = mult
            .iter()
            .filter(|m| {
                let e: usize = m.iter().sum();
                e <= max_e && e + 1 >= nv && e + 1 - nv <= g
            })
            .collect();
        for legs in tuples(n, nv) {
            for genera in tuples(nv, g + 1) {
                if genera.iter().sum::<usize>() > g {
                    continue;
                }
                for levels in tuples(nv, nv) {
                    let used: BTreeSet<usize> = levels.iter().copied().collect();
                    if used.len() != *used.iter().max().unwrap() + 1 {
                        continue;
                    }
                    for m in &mults {
                        let mut edges = Vec::new();
                        for (&(a, b), &c) in pairs.iter().zip(m.iter()) {
                            for _ in 0..c {
                                edges.push(Edge {
                                    ends: [a, b],
                                    kappa: None,
                                });
                            }
                        }
                        let vertical: Vec<usize> = (0..edges.len())
                            .filter(|&i| levels[edges[i].ends[0]] != levels[edges[i].ends[1]])
                            .collect();
                        let vertices: Vec<Vertex> = (0..nv)
                            .map(|v| {
                                let l: Vec<usize> = (0..n).filter(|&j| legs[j] == v).collect();
                                Vertex::new(genera[v] as u64, -(levels[v] as i64), l)
                            })
                            .collect();
                        let skeleton = match EnhancedLevelGraph::new(mu.clone(), vertices, edges) {
                            Ok(s) => s,
                            Err(_) => continue,
                        };
                        if !kappa_free_checks(&skeleton) {
                            continue;
                        }
                        for ks in tuples(vertical.len(), kbound as usize) {
                            let mut edges = skeleton.edges().to_vec();
                            for (&e, &k) in vertical.iter().zip(&ks) {
                                edges[e].kappa = Some(k as u64 + 1);
                            }
                            let graph = EnhancedLevelGraph::new(
                                mu.clone(),
                                skeleton.vertices().to_vec(),
                                edges,
                            )
                            .unwrap();
                            if validate(&graph).valid && codim(&graph) <= max_codim {
                                keys.insert(canonical_form(&graph).1);
                            }
                        }
                    }
                }
            }
        }
    }
    keys
}

/// Genus identity, connectivity and stability, which do not involve `kappa`.
fn kappa_free_checks(g: &EnhancedLevelGraph) -> bool {
    let genus_sum: u64 = g.vertices().iter().map(|v| v.genus).sum();
    let h1 = g.edges().len() as i64 - g.vertices().len() as i64 + 1;
    if genus_sum as i64 + h1 != g.genus() as i64 || !g.is_connected() {
        return false;
    }
    (0..g.vertices().len())
        .all(|v| g.vertex(v).genus > 0 || g.valence(v) + g.vertex(v).legs.len() >= 3)
}
