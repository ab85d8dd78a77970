//! Prong rotation groups, the level-rotation map `phi`, twist lattices and
//! prong-matching classes.
//!
//! Lattices of twists live in `Z^N` with coordinates `(n_{-1}, ..., n_{-N})`;
//! the top-level coordinate is dropped since the diagonal `(1, ..., 1)`
//! always twists trivially.

pub mod group;
pub mod matrix;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use group::FinAbGroup;
pub use matrix::{
    hermite_normal_form, hnf_coordinates, integer_kernel, smith_normal_form, IntegerMatrix,
    SmithDecomposition,
};

use crate::error::{Error, Result};
use crate::level_graph::EnhancedLevelGraph;

/// Default cap on the number of prong-matchings the orbit oracle visits.
pub const DEFAULT_ORBIT_BOUND: u64 = 1_000_000;

pub fn prong_rotation_group(graph: &EnhancedLevelGraph) -> FinAbGroup {
    FinAbGroup::from_cyclic_orders(&kappas(graph))
}

fn kappas(graph: &EnhancedLevelGraph) -> Vec<BigInt> {
    graph
        .vertical_edges()
        .into_iter()
        .map(|e| BigInt::from(graph.kappa(e).expect("vertical edge without kappa")))
        .collect()
}

/// Matrix of the map from the level rotation group to the prong rotation
/// group. Row `r` belongs to vertical edge `edges[r]` and is read modulo
/// `moduli[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMap {
    pub matrix: IntegerMatrix,
    pub moduli: Vec<BigInt>,
    pub edges: Vec<usize>,
    /// With the extended map column `j` is level `-j`; otherwise level
    /// `-(j + 1)`.
    pub extended: bool,
}

impl PhiMap {
    /// Level attached to a column.
    pub fn column_level(&self, j: usize) -> i64 {
        if self.extended {
            -(j as i64)
        } else {
            -(j as i64) - 1
        }
    }

    /// `[M | diag(kappa)]`, whose integer kernel projects onto `ker phi`.
    fn with_moduli(&self) -> IntegerMatrix {
        self.matrix.hconcat(&IntegerMatrix::diagonal(&self.moduli))
    }
}

pub fn phi_map(graph: &EnhancedLevelGraph, extended: bool) -> PhiMap {
    let edges = graph.vertical_edges();
    let n = graph.depth();
    let cols = if extended { n + 1 } else { n };
    let mut m = IntegerMatrix::zeros(edges.len(), cols);
    let col = |level: i64| -> Option<usize> {
        let k = (-level) as usize;
        if extended {
            Some(k)
        } else {
            k.checked_sub(1)
        }
    };
    for (r, &e) in edges.iter().enumerate() {
        if let Some(c) = col(graph.level_top(e)) {
            m[(r, c)] += 1;
        }
        if let Some(c) = col(graph.level_bottom(e)) {
            m[(r, c)] -= 1;
        }
    }
    PhiMap {
        matrix: m,
        moduli: kappas(graph),
        edges,
        extended,
    }
}

/// Canonical (Hermite) basis of the twist lattice `ker phi` in `Z^N`.
pub fn twist_group_basis(graph: &EnhancedLevelGraph) -> Vec<Vec<BigInt>> {
    twist_hnf(graph).to_rows()
}

fn twist_hnf(graph: &EnhancedLevelGraph) -> IntegerMatrix {
    let phi = phi_map(graph, false);
    let n = phi.matrix.cols();
    let ker = integer_kernel(&phi.with_moduli());
    let projected: Vec<Vec<BigInt>> = ker
        .to_rows()
        .into_iter()
        .map(|row| row[..n].to_vec())
        .collect();
    hermite_normal_form(&IntegerMatrix::from_rows(n, &projected))
}

/// Exponents `a_i` and generators of the simple twist lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleTwistData {
    /// `a[k]` belongs to level `-(k + 1)`.
    pub a: Vec<BigInt>,
    /// Generator `k` is `a[k]` times the indicator of levels `<= -(k + 1)`,
    /// written in standard coordinates.
    pub generators: Vec<Vec<BigInt>>,
}

/// Levels crossed by vertical edge `e`: `l_bot <= i < l_top`.
pub fn crosses(graph: &EnhancedLevelGraph, e: usize, level: i64) -> bool {
    graph.level_bottom(e) <= level && level < graph.level_top(e)
}

pub fn simple_twist_data(graph: &EnhancedLevelGraph) -> Result<SimpleTwistData> {
    let n = graph.depth();
    let vertical = graph.vertical_edges();
    let mut a = Vec::with_capacity(n);
    for level in graph.lower_levels() {
        let crossing: Vec<usize> = vertical
            .iter()
            .copied()
            .filter(|&e| crosses(graph, e, level))
            .collect();
        if crossing.is_empty() {
            return Err(Error::Disconnected);
        }
        let l = crossing.iter().fold(BigInt::one(), |acc, &e| {
            acc.lcm(&BigInt::from(graph.kappa(e).unwrap()))
        });
        a.push(l);
    }
    let generators = (0..n)
        .map(|k| {
            let mut c = vec![BigInt::zero(); n];
            c[k] = a[k].clone();
            triangular_to_standard(&c)
        })
        .collect();
    Ok(SimpleTwistData { a, generators })
}

/// Converts coefficients in the triangular basis `b_k` (indicator of the
/// levels at or below `-(k + 1)`) into standard coordinates.
pub fn triangular_to_standard(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut acc = BigInt::zero();
    coeffs
        .iter()
        .map(|c| {
            acc += c;
            acc.clone()
        })
        .collect()
}

/// Inverse of [`triangular_to_standard`].
pub fn standard_to_triangular(x: &[BigInt]) -> Vec<BigInt> {
    let mut prev = BigInt::zero();
    x.iter()
        .map(|v| {
            let d = v - &prev;
            prev = v.clone();
            d
        })
        .collect()
}

/// `K = Tw / Tw^s`.
pub fn k_group(graph: &EnhancedLevelGraph) -> Result<FinAbGroup> {
    let simple = simple_twist_data(graph)?;
    let tw = twist_hnf(graph);
    let n = graph.depth();
    let coords: Vec<Vec<BigInt>> = simple
        .generators
        .iter()
        .map(|s| hnf_coordinates(&tw, s).expect("simple twists are twists"))
        .collect();
    Ok(FinAbGroup::quotient_by_rows(n, &coords))
}

/// Number of prong-matching classes: the order of the cokernel of the
/// extended `phi`.
pub fn pm_class_count(graph: &EnhancedLevelGraph) -> BigInt {
    let phi = phi_map(graph, true);
    FinAbGroup::cokernel(&phi.with_moduli())
        .order()
        .expect("cokernel of a full-rank block is finite")
}

/// A prong-matching: one residue class modulo `kappa_e` per vertical edge,
/// in the order of [`EnhancedLevelGraph::vertical_edges`].
pub type ProngMatching = Vec<u64>;

/// Orbits of the level rotation group on prong-matchings, by exhaustive
/// breadth-first closure. Refuses when there are more than `bound` states.
pub fn pm_orbits_bruteforce(
    graph: &EnhancedLevelGraph,
    bound: u64,
) -> Result<Vec<Vec<ProngMatching>>> {
    let phi = phi_map(graph, true);
    let total: BigInt = phi.moduli.iter().product();
    let size = match total.to_u64() {
        Some(s) if s <= bound => s as usize,
        _ => {
            return Err(Error::OracleBoundExceeded {
                states: total.to_string(),
                bound,
            })
        }
    };
    let radix: Vec<u64> = phi.moduli.iter().map(|k| k.to_u64().unwrap()).collect();
    let gens: Vec<Vec<u64>> = (0..phi.matrix.cols())
        .map(|j| {
            phi.matrix
                .column(j)
                .iter()
                .zip(&phi.moduli)
                .map(|(x, k)| x.mod_floor(k).to_u64().unwrap())
                .collect()
        })
        .collect();

    let decode = |mut s: usize| -> ProngMatching {
        radix
            .iter()
            .map(|&r| {
                let d = s as u64 % r;
                s /= r as usize;
                d
            })
            .collect()
    };
    let encode = |t: &[u64]| -> usize {
        t.iter()
            .zip(&radix)
            .rev()
            .fold(0usize, |acc, (&d, &r)| acc * r as usize + d as usize)
    };

    let mut label = vec![usize::MAX; size];
    let mut orbits = Vec::new();
    for start in 0..size {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        label[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let t = decode(s);
            for g in &gens {
                let next: Vec<u64> = t
                    .iter()
                    .zip(g)
                    .zip(&radix)
                    .map(|((&x, &d), &r)| (x + d) % r)
                    .collect();
                let code = encode(&next);
                if label[code] == usize::MAX {
                    label[code] = id;
                    members.push(code);
                    queue.push_back(code);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members.into_iter().map(decode).collect::<Vec<_>>());
    }
    for orbit in &mut orbits {
        orbit.sort();
    }
    Ok(orbits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringGroups {
    /// `|H_i| = a_i`, one entry per level below zero.
    pub h_factors: Vec<BigInt>,
    /// Image of `phi` in the prong rotation group, `Z^N / Tw`.
    pub g: FinAbGroup,
    pub k: FinAbGroup,
    /// `|K| * |G| = prod a_i`.
    pub sequence_check: bool,
}

pub fn covering_groups(graph: &EnhancedLevelGraph) -> Result<CoveringGroups> {
    let simple = simple_twist_data(graph)?;
    let k = k_group(graph)?;
    let g = FinAbGroup::quotient_by_rows(graph.depth(), &twist_group_basis(graph));
    let h_order = group::product(&simple.a);
    let sequence_check = match (k.order(), g.order()) {
        (Some(ko), Some(go)) => ko * go == h_order,
        _ => false,
    };
    Ok(CoveringGroups {
        h_factors: simple.a,
        g,
        k,
        sequence_check,
    })
}
