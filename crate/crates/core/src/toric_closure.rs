//! Closure of the level rotation torus as an affine toric variety.
//!
//! In coordinates `r_i` (one per level below zero) and `rho_e` (one per
//! vertical edge) the torus is cut out by `prod_{crossed i} r_i = rho_e^kappa_e`.
//! Its closure is the spectrum of the semigroup algebra of the monoid `S`
//! generated by the characters of these coordinates; the closure is normal
//! iff `S` is saturated in the group it generates.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::level_graph::EnhancedLevelGraph;
use crate::twist_lattice::{
    crosses, hermite_normal_form, hnf_coordinates, simple_twist_data, IntegerMatrix,
};

/// Largest box the saturation search will walk.
pub const MAX_BOX_POINTS: u64 = 4_000_000;

/// `prod_{i in levels} r_i = rho_edge^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialEquation {
    pub levels: Vec<i64>,
    pub edge: usize,
    pub exponent: u64,
}

pub fn torus_equations(graph: &EnhancedLevelGraph) -> Vec<MonomialEquation> {
    graph
        .vertical_edges()
        .into_iter()
        .map(|e| MonomialEquation {
            levels: graph
                .lower_levels()
                .filter(|&i| crosses(graph, e, i))
                .collect(),
            edge: e,
            exponent: graph.kappa(e).unwrap(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMonoid {
    pub ambient_rank: usize,
    /// The `r_i` characters `a_i e_i` first, then one `rho_e` per vertical
    /// edge.
    pub generators: Vec<Vec<BigInt>>,
    /// Generator count contributed by the `r_i`.
    pub level_generators: usize,
}

pub fn character_monoid(graph: &EnhancedLevelGraph) -> CharacterMonoid {
    let n = graph.depth();
    let a = simple_twist_data(graph).expect("connected graph").a;
    let mut generators = Vec::new();
    for k in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[k] = a[k].clone();
        generators.push(v);
    }
    for e in graph.vertical_edges() {
        let kappa = BigInt::from(graph.kappa(e).unwrap());
        let v = graph
            .lower_levels()
            .enumerate()
            .map(|(k, i)| {
                if crosses(graph, e, i) {
                    &a[k] / &kappa
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        generators.push(v);
    }
    CharacterMonoid {
        ambient_rank: n,
        generators,
        level_generators: n,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    /// A lattice point of the cone and of the group that is not in the monoid.
    NonNormal {
        witness: Vec<BigInt>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Normality {
    pub fn label(&self) -> &'static str {
        match self {
            Normality::Normal => "normal",
            Normality::NonNormal { .. } => "non_normal",
            Normality::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Twice the largest generator coordinate.
pub fn default_search_bound(monoid: &CharacterMonoid) -> u64 {
    let max = monoid
        .generators
        .iter()
        .flatten()
        .max()
        .cloned()
        .unwrap_or_default();
    (max * 2u32).to_u64().unwrap_or(u64::MAX)
}

/// Decides saturation of the character monoid.
///
/// Since `a_i e_i` lie in the monoid, it is saturated iff every point of the
/// group inside the box `0 <= x_i < a_i` is a sum of the `rho_e`
/// generators. Points are examined up to coordinate sum `search_bound`; the
/// verdict is `Normal` only when that covers the whole box.
pub fn closure_normality(graph: &EnhancedLevelGraph, search_bound: Option<u64>) -> Normality {
    let monoid = character_monoid(graph);
    let bound = search_bound.unwrap_or_else(|| default_search_bound(&monoid));
    monoid_normality(&monoid, bound)
}

pub fn monoid_normality(monoid: &CharacterMonoid, bound: u64) -> Normality {
    let n = monoid.ambient_rank;
    if n == 0 {
        return Normality::Normal;
    }
    let mut sides = Vec::with_capacity(n);
    for k in 0..n {
        match monoid.generators[k][k].to_u64() {
            Some(a) if a >= 1 => sides.push(a),
            _ => {
                return Normality::Inconclusive {
                    reason: format!("level exponent {} out of range", monoid.generators[k][k]),
                }
            }
        }
    }
    let total = sides
        .iter()
        .try_fold(1u64, |acc, &a| acc.checked_mul(a))
        .filter(|&t| t <= MAX_BOX_POINTS);
    let Some(total) = total else {
        return Normality::Inconclusive {
            reason: format!("box with sides {sides:?} exceeds {MAX_BOX_POINTS} points"),
        };
    };
    let total = total as usize;
    let steps: Vec<Vec<u64>> = monoid.generators[monoid.level_generators..]
        .iter()
        .map(|g| g.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect())
        .collect();
    let lattice = hermite_normal_form(&IntegerMatrix::from_rows(n, &monoid.generators));

    // mixed radix, first coordinate least significant
    let decode = |mut s: usize| -> Vec<u64> {
        sides
            .iter()
            .map(|&a| {
                let d = s as u64 % a;
                s /= a as usize;
                d
            })
            .collect()
    };
    let encode = |x: &[u64]| -> usize {
        x.iter()
            .zip(&sides)
            .rev()
            .fold(0usize, |acc, (&d, &a)| acc * a as usize + d as usize)
    };

    let mut reachable = vec![false; total];
    reachable[0] = true;
    let mut witness: Option<(u64, Vec<u64>)> = None;
    for s in 1..total {
        let x = decode(s);
        reachable[s] = steps.iter().any(|g| {
            g.iter().zip(&x).all(|(gi, xi)| gi <= xi) && {
                let y: Vec<u64> = x.iter().zip(g).map(|(xi, gi)| xi - gi).collect();
                reachable[encode(&y)]
            }
        });
        if reachable[s] {
            continue;
        }
        let sum: u64 = x.iter().sum();
        if sum > bound {
            continue;
        }
        let better = match &witness {
            None => true,
            Some((ws, wx)) => (sum, &x) < (*ws, wx),
        };
        if !better {
            continue;
        }
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        if hnf_coordinates(&lattice, &big).is_some() {
            witness = Some((sum, x));
        }
    }
    if let Some((_, x)) = witness {
        return Normality::NonNormal {
            witness: x.into_iter().map(BigInt::from).collect(),
        };
    }
    let diameter: u64 = sides.iter().map(|a| a - 1).sum();
    if diameter <= bound {
        Normality::Normal
    } else {
        Normality::Inconclusive {
            reason: format!("no witness up to coordinate sum {bound}, box reaches {diameter}"),
        }
    }
}
