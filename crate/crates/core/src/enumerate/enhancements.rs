use crate::level_graph::{Edge, EnhancedLevelGraph, SignatureMu};

/// A priori bound on any enhancement of a graph of type `mu`.
pub fn kappa_bound(mu: &SignatureMu) -> u64 {
    let min = mu.orders().iter().copied().min().unwrap_or(0).min(0);
    let positive: i128 = mu
        .orders()
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| m as i128)
        .sum();
    (2 - 2 * min as i128 + positive + 2 * mu.genus() as i128).max(1) as u64
}

/// Degree equations `sum_{top} kappa - sum_{bottom} kappa = rhs_v`, one per
/// vertex, over the vertical edges of a skeleton.
pub(crate) struct DegreeSystem {
    pub vertical: Vec<usize>,
    /// Per vertex: `(position in vertical, sign)`.
    pub incidence: Vec<Vec<(usize, i128)>>,
    pub rhs: Vec<i128>,
}

impl DegreeSystem {
    pub fn new(skeleton: &EnhancedLevelGraph) -> Self {
        let nv = skeleton.vertices().len();
        let vertical = skeleton.vertical_edges();
        let mut incidence = vec![Vec::new(); nv];
        let mut rhs: Vec<i128> = (0..nv)
            .map(|v| {
                let vert = skeleton.vertex(v);
                let legs: i128 = vert
                    .legs
                    .iter()
                    .map(|&j| skeleton.mu().orders()[j] as i128)
                    .sum();
                2 * vert.genus as i128 - 2 - legs
            })
            .collect();
        for (e, edge) in skeleton.edges().iter().enumerate() {
            if skeleton.is_horizontal(e) {
                for &x in &edge.ends {
                    rhs[x] += 1;
                }
            }
        }
        for (k, &e) in vertical.iter().enumerate() {
            let (t, b) = (skeleton.top(e), skeleton.bottom(e));
            incidence[t].push((k, 1));
            incidence[b].push((k, -1));
            rhs[t] += 1;
            rhs[b] += 1;
        }
        DegreeSystem {
            vertical,
            incidence,
            rhs,
        }
    }

    /// All solutions with `1 <= kappa <= bound`, in lexicographic order.
    pub fn solve(&self, bound: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut assign = vec![0u64; self.vertical.len()];
        self.search(&mut assign, bound, &mut out);
        out
    }

    /// Fills forced values; `false` on contradiction.
    fn propagate(&self, assign: &mut [u64], bound: u64) -> bool {
        loop {
            let mut changed = false;
            for (v, inc) in self.incidence.iter().enumerate() {
                let mut sum = 0i128;
                let mut open = None;
                let mut n_open = 0;
                for &(k, s) in inc {
                    if assign[k] == 0 {
                        n_open += 1;
                        open = Some((k, s));
                    } else {
                        sum += s * assign[k] as i128;
                    }
                }
                match (n_open, open) {
                    (0, _) if sum != self.rhs[v] => return false,
                    (1, Some((k, s))) => {
                        let x = (self.rhs[v] - sum) * s;
                        if x < 1 || x > bound as i128 {
                            return false;
                        }
                        assign[k] = x as u64;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, assign: &mut Vec<u64>, bound: u64, out: &mut Vec<Vec<u64>>) {
        let saved = assign.clone();
        if !self.propagate(assign, bound) {
            *assign = saved;
            return;
        }
        match assign.iter().position(|&x| x == 0) {
            None => out.push(assign.clone()),
            Some(k) => {
                for x in 1..=bound {
                    assign[k] = x;
                    self.search(assign, bound, out);
                    assign[k] = 0;
                }
            }
        }
        *assign = saved;
    }
}

/// All enhancements of a level graph solving the degree equations. Any
/// enhancement already present on the input is ignored.
pub fn enumerate_enhancements(skeleton: &EnhancedLevelGraph) -> Vec<EnhancedLevelGraph> {
    let system = DegreeSystem::new(skeleton);
    let mut solutions = system.solve(kappa_bound(skeleton.mu()));
    solutions.sort();
    solutions
        .into_iter()
        .map(|kappa| with_kappa(skeleton, &system.vertical, &kappa))
        .collect()
}

pub(crate) fn with_kappa(
    skeleton: &EnhancedLevelGraph,
    vertical: &[usize],
    kappa: &[u64],
) -> EnhancedLevelGraph {
    let mut edges: Vec<Edge> = skeleton
        .edges()
        .iter()
        .map(|e| Edge {
            ends: e.ends,
            kappa: None,
        })
        .collect();
    for (k, &e) in vertical.iter().enumerate() {
        edges[e].kappa = Some(kappa[k]);
    }
    EnhancedLevelGraph::new(skeleton.mu().clone(), skeleton.vertices().to_vec(), edges)
        .expect("same structure as the skeleton")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::level_graph::{validate, Vertex};

    fn kappas(g: &EnhancedLevelGraph) -> Vec<u64> {
        g.edges().iter().map(|e| e.kappa.unwrap()).collect()
    }

    #[test]
    fn running_example_skeleton() {
        let sols = enumerate_enhancements(&fixtures::gamma1());
        let ks: Vec<Vec<u64>> = sols.iter().map(kappas).collect();
        assert_eq!(ks, vec![vec![1, 1, 3], vec![2, 2, 2], vec![3, 3, 1]]);
        assert!(sols.iter().all(|g| validate(g).valid));
    }

    #[test]
    fn no_solution_for_negative_kappa() {
        let skeleton = EnhancedLevelGraph::new(
            SignatureMu::new(2, vec![]),
            vec![Vertex::new(1, 0, vec![]), Vertex::new(1, -1, vec![])],
            vec![Edge::horizontal(0, 1)],
        )
        .unwrap();
        assert!(enumerate_enhancements(&skeleton).is_empty());
    }

    #[test]
    fn cherry_is_unique() {
        let sols = enumerate_enhancements(&fixtures::cherry_2_3());
        assert_eq!(sols.len(), 1);
        assert_eq!(kappas(&sols[0]), vec![2, 3]);
    }

    #[test]
    fn bound() {
        assert_eq!(kappa_bound(&SignatureMu::new(0, vec![2, 1, 0, 0, -5])), 15);
        assert_eq!(kappa_bound(&SignatureMu::new(5, vec![4, 4, 2, -2])), 26);
    }
}
