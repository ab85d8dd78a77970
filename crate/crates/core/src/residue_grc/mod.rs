//! The global residue condition as exact linear algebra.
//!
//! Residues of vertical edges are stored at the lower branch. Horizontal
//! residues are stored at the "+" branch, the end with the smaller vertex
//! index; the "-" branch carries the negative.

mod dims;
mod gaussian;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use dims::{dim_identity_check, grc_space_dim, grc_space_dims, stratum_dim, DimIdentity};
pub use gaussian::GaussianRational;

use crate::error::{Error, Result};
use crate::level_graph::{level_subgraph, EnhancedLevelGraph, LevelMode};
use crate::twist_lattice::{integer_kernel, IntegerMatrix};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidueAssignment {
    pub vertical: BTreeMap<usize, GaussianRational>,
    pub horizontal: BTreeMap<usize, GaussianRational>,
    /// Residues at marked poles, keyed by 0-based leg index.
    pub marked_poles: Option<BTreeMap<usize, GaussianRational>>,
}

impl ResidueAssignment {
    fn vertical(&self, e: usize) -> Result<&GaussianRational> {
        self.vertical
            .get(&e)
            .ok_or_else(|| Error::MissingResidue(format!("vertical edge {e}")))
    }

    fn horizontal(&self, e: usize) -> Result<&GaussianRational> {
        self.horizontal
            .get(&e)
            .ok_or_else(|| Error::MissingResidue(format!("horizontal edge {e}")))
    }

    fn check_complete(&self, graph: &EnhancedLevelGraph) -> Result<()> {
        for e in 0..graph.edges().len() {
            if graph.is_horizontal(e) {
                self.horizontal(e)?;
            } else {
                self.vertical(e)?;
            }
        }
        if let Some(poles) = &self.marked_poles {
            for (j, &m) in graph.mu().orders().iter().enumerate() {
                if m < 0 && !poles.contains_key(&j) {
                    return Err(Error::MissingResidue(format!("marked pole {}", j + 1)));
                }
            }
        }
        Ok(())
    }
}

/// One condition: the residues at the lower branches of `edges` sum to
/// zero. `component_vertices` is a pole-free component of the graph above
/// `level`, and `edges` are its vertical edges down to `level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrcCondition {
    pub level: i64,
    pub component_vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Conditions with an empty edge list impose nothing and are omitted.
pub fn grc_conditions(graph: &EnhancedLevelGraph) -> Vec<GrcCondition> {
    let mut out = Vec::new();
    for level in graph.lower_levels() {
        let comps = level_subgraph(graph, level, LevelMode::Above).expect("level in range");
        for comp in comps {
            if comp.vertices.iter().any(|&v| graph.has_pole_leg(v)) {
                continue;
            }
            let edges: Vec<usize> = graph
                .vertical_edges()
                .into_iter()
                .filter(|&e| {
                    graph.level_bottom(e) == level
                        && comp.vertices.binary_search(&graph.top(e)).is_ok()
                })
                .collect();
            if edges.is_empty() {
                continue;
            }
            out.push(GrcCondition {
                level,
                component_vertices: comp.vertices,
                edges,
            });
        }
    }
    out
}

/// Sum of the residues at all poles of `v`: marked poles, lower branches of
/// vertical edges, and horizontal branches. `None` when `v` carries a marked
/// pole whose residue is not given.
pub fn vertex_residue_sum(
    graph: &EnhancedLevelGraph,
    rho: &ResidueAssignment,
    v: usize,
) -> Result<Option<GaussianRational>> {
    let mut sum = GaussianRational::zero();
    for j in graph.pole_legs(v) {
        match rho.marked_poles.as_ref().and_then(|p| p.get(&j)) {
            Some(r) => sum += r,
            None => return Ok(None),
        }
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        if graph.is_horizontal(e) {
            let r = rho.horizontal(e)?;
            if graph.top(e) == v {
                sum += r;
            } else if graph.bottom(e) == v {
                sum += &-r.clone();
            }
        } else if graph.bottom(e) == v {
            sum += rho.vertical(e)?;
        }
    }
    Ok(Some(sum))
}

/// Vertices where the residue theorem fails. Vertices with a marked pole
/// are skipped unless their residues are given.
pub fn residue_theorem_failures(
    graph: &EnhancedLevelGraph,
    rho: &ResidueAssignment,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for v in 0..graph.vertices().len() {
        if let Some(s) = vertex_residue_sum(graph, rho, v)? {
            if !s.is_zero() {
                out.push(v);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrcReport {
    pub pass: bool,
    pub violated: Vec<GrcCondition>,
    /// Vertices whose residue theorem fails; only checked when marked-pole
    /// residues are supplied.
    pub residue_theorem_failures: Vec<usize>,
}

/// Direct evaluation of every condition from [`grc_conditions`].
pub fn check_grc(graph: &EnhancedLevelGraph, rho: &ResidueAssignment) -> Result<GrcReport> {
    rho.check_complete(graph)?;
    let mut violated = Vec::new();
    for cond in grc_conditions(graph) {
        let mut sum = GaussianRational::zero();
        for &e in &cond.edges {
            sum += rho.vertical(e)?;
        }
        if !sum.is_zero() {
            violated.push(cond);
        }
    }
    let failures = if rho.marked_poles.is_some() {
        residue_theorem_failures(graph, rho)?
    } else {
        Vec::new()
    };
    Ok(GrcReport {
        pass: violated.is_empty() && failures.is_empty(),
        violated,
        residue_theorem_failures: failures,
    })
}

/// A linear relation `sum alpha_e rho(e) = 0` over edges with lower end at
/// `level`, coming from a cycle relation that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueRelation {
    pub level: i64,
    /// `(edge, coefficient)` with nonzero coefficients.
    pub coefficients: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologicalReport {
    pub pass: bool,
    pub violated: Vec<ResidueRelation>,
}

/// Boundary vector of vertex `v` over all edges: `+1` at edges where `v` is
/// the upper (or "+") end, `-1` where it is the lower (or "-") end.
fn boundary_vector(graph: &EnhancedLevelGraph, v: usize) -> Vec<i64> {
    (0..graph.edges().len())
        .map(|e| {
            if graph.edge(e).is_loop() {
                0
            } else if graph.top(e) == v {
                1
            } else if graph.bottom(e) == v {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// The cycle form of the condition: for each level `i`, every combination of
/// boundaries of pole-free vertices that is supported on vertical edges
/// with lower end at or below `i` must pair to zero with the residues at
/// level `i`. Pole-free vertices contribute their residue theorem this way.
pub fn check_grc_homological(
    graph: &EnhancedLevelGraph,
    rho: &ResidueAssignment,
) -> Result<HomologicalReport> {
    rho.check_complete(graph)?;
    let free: Vec<usize> = (0..graph.vertices().len())
        .filter(|&v| !graph.has_pole_leg(v))
        .collect();
    let boundaries: Vec<Vec<i64>> = free.iter().map(|&v| boundary_vector(graph, v)).collect();
    let ne = graph.edges().len();
    let mut violated = Vec::new();

    for level in graph.lower_levels() {
        let forbidden: Vec<usize> = (0..ne)
            .filter(|&e| graph.is_horizontal(e) || graph.level_bottom(e) > level)
            .collect();
        let constraints: Vec<Vec<i64>> = forbidden
            .iter()
            .map(|&e| boundaries.iter().map(|b| b[e]).collect())
            .collect();
        let kernel = integer_kernel(&IntegerMatrix::from_rows(free.len(), &constraints));
        for c in kernel.to_rows() {
            let alpha: Vec<BigInt> = (0..ne)
                .map(|e| {
                    c.iter()
                        .zip(&boundaries)
                        .map(|(ci, b)| ci * b[e])
                        .sum::<BigInt>()
                })
                .collect();
            let mut sum = GaussianRational::zero();
            let mut coefficients = Vec::new();
            for e in graph.vertical_edges() {
                if graph.level_bottom(e) != level || alpha[e].is_zero() {
                    continue;
                }
                let a = BigRational::from_integer(alpha[e].clone());
                sum += &rho.vertical(e)?.scale(&a);
                coefficients.push((e, i64::try_from(&alpha[e]).unwrap_or(i64::MAX)));
            }
            if !sum.is_zero() {
                violated.push(ResidueRelation {
                    level,
                    coefficients,
                });
            }
        }
    }
    Ok(HomologicalReport {
        pass: violated.is_empty(),
        violated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_integers(re, im)
    }

    fn assignment(vertical: &[(usize, GaussianRational)]) -> ResidueAssignment {
        ResidueAssignment {
            vertical: vertical.iter().cloned().collect(),
            ..Default::default()
        }
    }

    #[test]
    fn conditions_of_gamma1() {
        assert_eq!(
            grc_conditions(&fixtures::gamma1()),
            vec![GrcCondition {
                level: -1,
                component_vertices: vec![0],
                edges: vec![0]
            }]
        );
    }

    #[test]
    fn conditions_of_two_tops() {
        let conds = grc_conditions(&fixtures::two_tops());
        let summary: Vec<_> = conds
            .iter()
            .map(|c| (c.level, c.component_vertices.clone(), c.edges.clone()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (-1, vec![0], vec![0]),
                (-1, vec![1], vec![1]),
                (-2, vec![0, 1, 2], vec![2, 3]),
            ]
        );
    }

    #[test]
    fn pole_on_top_kills_conditions() {
        assert!(grc_conditions(&fixtures::cherry_2_3()).is_empty());
    }

    #[test]
    fn gamma1_checks() {
        let g = fixtures::gamma1();
        let good = assignment(&[(0, gr(0, 0)), (1, gr(2, 1)), (2, gr(-2, -1))]);
        assert!(check_grc(&g, &good).unwrap().pass);
        assert!(check_grc_homological(&g, &good).unwrap().pass);

        let bad = assignment(&[(0, gr(1, 0)), (1, gr(2, 1)), (2, gr(-2, -1))]);
        let r = check_grc(&g, &bad).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violated, grc_conditions(&g));
        let h = check_grc_homological(&g, &bad).unwrap();
        assert!(!h.pass);
        assert_eq!(h.violated[0].level, -1);
    }

    #[test]
    fn two_tops_checks() {
        let g = fixtures::two_tops();
        let rho = assignment(&[(0, gr(0, 0)), (1, gr(0, 0)), (2, gr(1, 3)), (3, gr(-1, -3))]);
        assert!(check_grc(&g, &rho).unwrap().pass);
        assert!(check_grc_homological(&g, &rho).unwrap().pass);
    }

    #[test]
    fn condition_free_graph_passes() {
        let g = fixtures::cherry_2_3();
        let rho = assignment(&[(0, gr(5, 1)), (1, gr(-7, 2))]);
        assert!(check_grc(&g, &rho).unwrap().pass);
        // the cycle form also sees the residue theorem at the pole-free
        // bottom vertices, each of which has a single pole
        assert!(!check_grc_homological(&g, &rho).unwrap().pass);
        let rho = assignment(&[(0, gr(0, 0)), (1, gr(0, 0))]);
        assert!(check_grc_homological(&g, &rho).unwrap().pass);
    }

    #[test]
    fn missing_values_are_errors() {
        let g = fixtures::gamma1();
        let rho = assignment(&[(0, gr(0, 0))]);
        assert!(matches!(check_grc(&g, &rho), Err(Error::MissingResidue(_))));
        let mut rho = assignment(&[(0, gr(0, 0)), (1, gr(0, 0)), (2, gr(0, 0))]);
        rho.marked_poles = Some(BTreeMap::new());
        assert!(matches!(check_grc(&g, &rho), Err(Error::MissingResidue(_))));
    }

    #[test]
    fn residue_theorem_with_marked_poles() {
        let g = fixtures::gamma1();
        let mut rho = assignment(&[(0, gr(0, 0)), (1, gr(1, 0)), (2, gr(-1, 0))]);
        rho.marked_poles = Some([(3, gr(0, 0))].into_iter().collect());
        assert!(check_grc(&g, &rho).unwrap().pass);
        rho.marked_poles = Some([(3, gr(4, 0))].into_iter().collect());
        let r = check_grc(&g, &rho).unwrap();
        assert_eq!(r.residue_theorem_failures, vec![1]);
        assert!(!r.pass);
    }

    #[test]
    fn horizontal_orientation() {
        let g = fixtures::two_horizontal();
        let rho = ResidueAssignment {
            horizontal: [(0, gr(1, 0)), (1, gr(-1, 0))].into_iter().collect(),
            ..Default::default()
        };
        assert_eq!(
            residue_theorem_failures(&g, &rho).unwrap(),
            Vec::<usize>::new()
        );
        let rho = ResidueAssignment {
            horizontal: [(0, gr(1, 0)), (1, gr(1, 0))].into_iter().collect(),
            ..Default::default()
        };
        assert_eq!(residue_theorem_failures(&g, &rho).unwrap(), vec![0, 1]);
    }
}
