//! Small named graphs used by the tests, the acceptance suite and the CLI
//! examples. All of them are admissible.

use crate::level_graph::{Edge, EnhancedLevelGraph, SignatureMu, Vertex};

fn build(genus: u64, mu: &[i64], vertices: Vec<Vertex>, edges: Vec<Edge>) -> EnhancedLevelGraph {
    EnhancedLevelGraph::new(SignatureMu::new(genus, mu.to_vec()), vertices, edges)
        .expect("fixture is well formed")
}

/// Single vertex carrying every leg.
pub fn smooth(genus: u64, mu: Vec<i64>) -> EnhancedLevelGraph {
    let legs = (0..mu.len()).collect();
    build(genus, &mu, vec![Vertex::new(genus, 0, legs)], vec![])
}

/// The running-example triangle of type `(4,4,2,-2)` in genus 5: top vertex
/// of genus 3, middle of genus 1, bottom of genus 0; edges `top-mid`,
/// `mid-bottom`, `top-bottom` with the given enhancements.
pub fn gamma1_with_kappa(kappa: [u64; 3]) -> EnhancedLevelGraph {
    build(
        5,
        &[4, 4, 2, -2],
        vec![
            Vertex::new(3, 0, vec![2]),
            Vertex::new(1, -1, vec![1, 3]),
            Vertex::new(0, -2, vec![0]),
        ],
        vec![
            Edge::vertical(0, 1, kappa[0]),
            Edge::vertical(1, 2, kappa[1]),
            Edge::vertical(0, 2, kappa[2]),
        ],
    )
}

pub fn gamma1() -> EnhancedLevelGraph {
    gamma1_with_kappa([3, 3, 1])
}

pub fn gamma2() -> EnhancedLevelGraph {
    gamma1_with_kappa([1, 1, 3])
}

/// Two vertices on two levels joined by two edges with `kappa = 2`;
/// genus 2 on top, type `(3,1)` in genus 3.
pub fn double_edge() -> EnhancedLevelGraph {
    build(
        3,
        &[3, 1],
        vec![Vertex::new(2, 0, vec![]), Vertex::new(0, -1, vec![0, 1])],
        vec![Edge::vertical(0, 1, 2), Edge::vertical(0, 1, 2)],
    )
}

/// Three-level degeneration of [`double_edge`]: edges `top-bottom` and
/// `top-middle` with `kappa = 2`, `middle-bottom` with `kappa = 1`.
pub fn double_edge_triangle() -> EnhancedLevelGraph {
    build(
        3,
        &[3, 1],
        vec![
            Vertex::new(2, 0, vec![]),
            Vertex::new(0, -1, vec![1]),
            Vertex::new(0, -2, vec![0]),
        ],
        vec![
            Edge::vertical(0, 2, 2),
            Edge::vertical(0, 1, 2),
            Edge::vertical(1, 2, 1),
        ],
    )
}

/// Genus 0 cherry of type `(2,1,0,0,-5)`: the pole sits on top, the bottom
/// vertices carry `{m=1, m=0}` (edge `kappa = 2`) and `{m=2, m=0}` (edge
/// `kappa = 3`).
pub fn cherry_2_3() -> EnhancedLevelGraph {
    build(
        0,
        &[2, 1, 0, 0, -5],
        vec![
            Vertex::new(0, 0, vec![4]),
            Vertex::new(0, -1, vec![1, 2]),
            Vertex::new(0, -1, vec![0, 3]),
        ],
        vec![Edge::vertical(0, 1, 2), Edge::vertical(0, 2, 3)],
    )
}

/// Genus 0 cherry of type `(1,1,0,0,-4)` with both enhancements equal to 2.
pub fn cherry_2_2() -> EnhancedLevelGraph {
    build(
        0,
        &[1, 1, 0, 0, -4],
        vec![
            Vertex::new(0, 0, vec![4]),
            Vertex::new(0, -1, vec![0, 2]),
            Vertex::new(0, -1, vec![1, 3]),
        ],
        vec![Edge::vertical(0, 1, 2), Edge::vertical(0, 2, 2)],
    )
}

/// Two genus 2 top vertices `a1, a2`, a middle vertex `a3` and a bottom
/// vertex `a4`, each of the lower two carrying a zero of order 4; edges
/// `a1-a3, a2-a3, a1-a4, a2-a4`, all with `kappa = 2`. No poles.
pub fn two_tops() -> EnhancedLevelGraph {
    build(
        5,
        &[4, 4],
        vec![
            Vertex::new(2, 0, vec![]),
            Vertex::new(2, 0, vec![]),
            Vertex::new(0, -1, vec![0]),
            Vertex::new(0, -2, vec![1]),
        ],
        vec![
            Edge::vertical(0, 2, 2),
            Edge::vertical(1, 2, 2),
            Edge::vertical(0, 3, 2),
            Edge::vertical(1, 3, 2),
        ],
    )
}

/// Two genus 1 components on one level meeting in two horizontal nodes;
/// type `(2,1,1)` in genus 3.
pub fn two_horizontal() -> EnhancedLevelGraph {
    build(
        3,
        &[2, 1, 1],
        vec![Vertex::new(1, 0, vec![0]), Vertex::new(1, 0, vec![1, 2])],
        vec![Edge::horizontal(0, 1), Edge::horizontal(0, 1)],
    )
}
