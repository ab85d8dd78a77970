//! Enhanced level graphs of a given type: data model, admissibility checks
//! and structural queries.
//!
//! Vertices carry a genus and a level; levels are always stored in
//! normalized form `0, -1, ..., -N`. Legs (marked points) are labeled by
//! their position in the signature and never permuted. Every vertical edge
//! carries its enhancement `kappa`, the number of prongs at the node.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Orders `m_1, ..., m_n` of the marked zeros and poles together with the
/// genus of the underlying surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignatureMu {
    genus: u64,
    orders: Vec<i64>,
}

impl SignatureMu {
    /// No consistency check; `validate` reports a wrong order sum.
    pub fn new(genus: u64, orders: Vec<i64>) -> Self {
        SignatureMu { genus, orders }
    }

    /// Signature whose genus is read off from `sum m_j = 2g - 2`.
    pub fn from_orders(orders: Vec<i64>) -> Result<Self> {
        let sum: i128 = orders.iter().map(|&m| m as i128).sum();
        if sum < -2 || (sum + 2) % 2 != 0 {
            return Err(Error::InvalidSignature(format!(
                "order sum {sum} is not of the form 2g-2 with g >= 0"
            )));
        }
        let genus = u64::try_from((sum + 2) / 2)
            .map_err(|_| Error::InvalidSignature("genus too large".into()))?;
        Ok(SignatureMu { genus, orders })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn is_consistent(&self) -> bool {
        let sum: i128 = self.orders.iter().map(|&m| m as i128).sum();
        sum == 2 * self.genus as i128 - 2
    }

    pub fn has_poles(&self) -> bool {
        self.orders.iter().any(|&m| m < 0)
    }
}

impl fmt::Display for SignatureMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| m.to_string()).collect();
        write!(f, "g={} mu=({})", self.genus, parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub genus: u64,
    pub level: i64,
    /// 0-based indices into the signature.
    pub legs: Vec<usize>,
}

impl Vertex {
    pub fn new(genus: u64, level: i64, legs: Vec<usize>) -> Self {
        Vertex { genus, level, legs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [usize; 2],
    pub kappa: Option<u64>,
}

impl Edge {
    pub fn vertical(a: usize, b: usize, kappa: u64) -> Self {
        Edge {
            ends: [a, b],
            kappa: Some(kappa),
        }
    }

    pub fn horizontal(a: usize, b: usize) -> Self {
        Edge {
            ends: [a, b],
            kappa: None,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedLevelGraph {
    mu: SignatureMu,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl EnhancedLevelGraph {
    /// Checks structural well-formedness and normalizes levels onto
    /// `0, -1, ..., -N`. Mathematical admissibility is left to [`validate`].
    pub fn new(mu: SignatureMu, mut vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NoVertices);
        }
        let n = mu.n();
        let mut seen = vec![false; n];
        for v in &vertices {
            for &leg in &v.legs {
                if leg >= n {
                    return Err(Error::LegOutOfRange { leg, count: n });
                }
                if std::mem::replace(&mut seen[leg], true) {
                    return Err(Error::DuplicateLeg { leg });
                }
            }
        }
        if let Some(leg) = seen.iter().position(|s| !s) {
            return Err(Error::UnassignedLeg { leg });
        }
        for (i, e) in edges.iter().enumerate() {
            for &x in &e.ends {
                if x >= vertices.len() {
                    return Err(Error::DanglingVertex {
                        edge: i,
                        vertex: x,
                        count: vertices.len(),
                    });
                }
            }
            if e.kappa == Some(0) {
                return Err(Error::NonPositiveKappa { edge: i, kappa: 0 });
            }
        }
        let distinct: BTreeSet<i64> = vertices.iter().map(|v| v.level).collect();
        let ranks: Vec<i64> = distinct.into_iter().rev().collect();
        for v in &mut vertices {
            v.level = -(ranks.iter().position(|&l| l == v.level).unwrap() as i64);
        }
        for v in &mut vertices {
            v.legs.sort_unstable();
        }
        Ok(EnhancedLevelGraph {
            mu,
            vertices,
            edges,
        })
    }

    pub fn mu(&self) -> &SignatureMu {
        &self.mu
    }

    pub fn genus(&self) -> u64 {
        self.mu.genus
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn level(&self, v: usize) -> i64 {
        self.vertices[v].level
    }

    /// Number of levels strictly below zero.
    pub fn depth(&self) -> usize {
        self.vertices
            .iter()
            .map(|v| (-v.level) as usize)
            .max()
            .unwrap_or(0)
    }

    /// All levels `0, -1, ..., -N`.
    pub fn levels(&self) -> impl DoubleEndedIterator<Item = i64> {
        let n = self.depth() as i64;
        (0..=n).map(|k| -k)
    }

    /// Levels strictly below zero.
    pub fn lower_levels(&self) -> impl DoubleEndedIterator<Item = i64> {
        let n = self.depth() as i64;
        (1..=n).map(|k| -k)
    }

    pub fn is_horizontal(&self, e: usize) -> bool {
        let [a, b] = self.edges[e].ends;
        self.level(a) == self.level(b)
    }

    pub fn vertical_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| !self.is_horizontal(e))
            .collect()
    }

    pub fn horizontal_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.is_horizontal(e))
            .collect()
    }

    pub fn n_horizontal(&self) -> usize {
        (0..self.edges.len())
            .filter(|&e| self.is_horizontal(e))
            .count()
    }

    /// Upper endpoint of an edge. For horizontal edges this is the
    /// designated "+" end: the smaller vertex index.
    pub fn top(&self, e: usize) -> usize {
        let [a, b] = self.edges[e].ends;
        match self.level(a).cmp(&self.level(b)) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => a.min(b),
        }
    }

    /// Lower endpoint (the "-" end for horizontal edges).
    pub fn bottom(&self, e: usize) -> usize {
        let [a, b] = self.edges[e].ends;
        if self.top(e) == a {
            b
        } else {
            a
        }
    }

    pub fn level_top(&self, e: usize) -> i64 {
        self.level(self.top(e))
    }

    pub fn level_bottom(&self, e: usize) -> i64 {
        self.level(self.bottom(e))
    }

    /// Enhancement of a vertical edge.
    pub fn kappa(&self, e: usize) -> Option<u64> {
        if self.is_horizontal(e) {
            None
        } else {
            self.edges[e].kappa
        }
    }

    /// Valence counting loops twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|&&x| x == v).count())
            .sum()
    }

    /// Degree of the differential on vertex `v`, or `None` when a vertical
    /// edge at `v` is missing its enhancement.
    pub fn vertex_degree(&self, v: usize) -> Option<i128> {
        let mut deg: i128 = self.vertices[v]
            .legs
            .iter()
            .map(|&j| self.mu.orders[j] as i128)
            .sum();
        for (e, edge) in self.edges.iter().enumerate() {
            let hits = edge.ends.iter().filter(|&&x| x == v).count() as i128;
            if hits == 0 {
                continue;
            }
            if self.is_horizontal(e) {
                deg -= hits;
            } else {
                let k = edge.kappa? as i128;
                if self.top(e) == v {
                    deg += k - 1;
                } else {
                    deg -= k + 1;
                }
            }
        }
        Some(deg)
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.components(&all, |_| true).len() == 1
    }

    /// Connected components of the subgraph induced on `vertex_set`, using
    /// only the edges accepted by `edge_filter`. Components are ordered by
    /// their smallest vertex; vertices and edges inside are sorted.
    pub fn components(
        &self,
        vertex_set: &[usize],
        edge_filter: impl Fn(usize) -> bool,
    ) -> Vec<Component> {
        let nv = self.vertices.len();
        let mut inside = vec![false; nv];
        for &v in vertex_set {
            inside[v] = true;
        }
        let mut uf = UnionFind::new(nv);
        let mut used = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            let [a, b] = edge.ends;
            if inside[a] && inside[b] && edge_filter(e) {
                uf.union(a, b);
                used.push(e);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comps: Vec<Component> = Vec::new();
        for (v, _) in inside.iter().enumerate().filter(|(_, &inside)| inside) {
            let r = uf.find(v);
            match roots.iter().position(|&x| x == r) {
                Some(i) => comps[i].vertices.push(v),
                None => {
                    roots.push(r);
                    comps.push(Component {
                        vertices: vec![v],
                        edges: Vec::new(),
                    });
                }
            }
        }
        for e in used {
            let r = uf.find(self.edges[e].ends[0]);
            let i = roots.iter().position(|&x| x == r).unwrap();
            comps[i].edges.push(e);
        }
        comps
    }

    /// Pole legs attached to `v`.
    pub fn pole_legs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices[v]
            .legs
            .iter()
            .copied()
            .filter(|&j| self.mu.orders[j] < 0)
    }

    pub fn has_pole_leg(&self, v: usize) -> bool {
        self.pole_legs(v).next().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    SignatureSum,
    GenusIdentity,
    Connectivity,
    KappaPresence,
    VerticalLoop,
    DegreeIdentity,
    AdmissibleDegree,
    Stability,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::SignatureSum => "signature_sum",
            Rule::GenusIdentity => "genus_identity",
            Rule::Connectivity => "connectivity",
            Rule::KappaPresence => "kappa_presence",
            Rule::VerticalLoop => "vertical_loop",
            Rule::DegreeIdentity => "degree_identity",
            Rule::AdmissibleDegree => "admissible_degree",
            Rule::Stability => "stability",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    Graph,
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Graph => write!(f, "graph"),
            Locus::Vertex(v) => write!(f, "vertex {v}"),
            Locus::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub locus: Locus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

pub fn validate(graph: &EnhancedLevelGraph) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |rule, locus, detail: String| {
        out.push(Violation {
            rule,
            locus,
            detail,
        })
    };

    let mu = graph.mu();
    if !mu.is_consistent() {
        let sum: i128 = mu.orders().iter().map(|&m| m as i128).sum();
        push(
            Rule::SignatureSum,
            Locus::Graph,
            format!(
                "sum of orders is {sum}, expected 2g-2 = {}",
                2 * mu.genus() as i128 - 2
            ),
        );
    }

    let sum_g: i128 = graph.vertices.iter().map(|v| v.genus as i128).sum();
    let h1 = graph.edges.len() as i128 - graph.vertices.len() as i128 + 1;
    if sum_g + h1 != mu.genus() as i128 {
        push(
            Rule::GenusIdentity,
            Locus::Graph,
            format!(
                "vertex genera {sum_g} + first Betti number {h1} != g = {}",
                mu.genus()
            ),
        );
    }

    if !graph.is_connected() {
        push(
            Rule::Connectivity,
            Locus::Graph,
            "graph is disconnected".into(),
        );
    }

    for (e, edge) in graph.edges.iter().enumerate() {
        if edge.is_loop() {
            if edge.kappa.is_some() {
                push(
                    Rule::VerticalLoop,
                    Locus::Edge(e),
                    "loop carries an enhancement; loops are horizontal".into(),
                );
            }
        } else if graph.is_horizontal(e) && edge.kappa.is_some() {
            push(
                Rule::KappaPresence,
                Locus::Edge(e),
                "horizontal edge carries an enhancement".into(),
            );
        } else if !graph.is_horizontal(e) && edge.kappa.is_none() {
            push(
                Rule::KappaPresence,
                Locus::Edge(e),
                "vertical edge has no enhancement".into(),
            );
        }
    }

    for (v, vert) in graph.vertices.iter().enumerate() {
        if let Some(deg) = graph.vertex_degree(v) {
            let expected = 2 * vert.genus as i128 - 2;
            if deg != expected {
                push(
                    Rule::DegreeIdentity,
                    Locus::Vertex(v),
                    format!("degree {deg} != 2g_v - 2 = {expected}"),
                );
            }
            if deg % 2 != 0 || deg < -2 {
                push(
                    Rule::AdmissibleDegree,
                    Locus::Vertex(v),
                    format!("degree {deg} is not an even integer >= -2"),
                );
            }
        }
        let special = graph.valence(v) + vert.legs.len();
        if vert.genus == 0 && special < 3 {
            push(
                Rule::Stability,
                Locus::Vertex(v),
                format!("genus 0 vertex has only {special} special points"),
            );
        }
    }

    ValidationReport {
        valid: out.is_empty(),
        violations: out,
    }
}

/// Codimension of the boundary stratum: levels below zero plus horizontal
/// edges.
pub fn codim(graph: &EnhancedLevelGraph) -> usize {
    graph.depth() + graph.n_horizontal()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelMode {
    At,
    Above,
    AboveOrAt,
}

/// Connected components of the subgraph at, above, or above-or-at level `i`.
pub fn level_subgraph(
    graph: &EnhancedLevelGraph,
    level: i64,
    mode: LevelMode,
) -> Result<Vec<Component>> {
    let min = -(graph.depth() as i64);
    if level > 0 || level < min {
        return Err(Error::LevelOutOfRange { level, min });
    }
    let keep: Vec<usize> = (0..graph.vertices.len())
        .filter(|&v| {
            let l = graph.level(v);
            match mode {
                LevelMode::At => l == level,
                LevelMode::Above => l > level,
                LevelMode::AboveOrAt => l >= level,
            }
        })
        .collect();
    Ok(graph.components(&keep, |_| true))
}

/// Orders of the differential at the upper and lower branch of a node.
pub fn node_orders(graph: &EnhancedLevelGraph, e: usize) -> Result<(i128, i128)> {
    if e >= graph.edges.len() {
        return Err(Error::EdgeOutOfRange(e));
    }
    match graph.kappa(e) {
        None if graph.is_horizontal(e) => Ok((-1, -1)),
        None => Err(Error::InvalidGraph(1)),
        Some(k) => Ok((k as i128 - 1, -(k as i128) - 1)),
    }
}
