use std::fmt;

use crate::level_graph::{Edge, EnhancedLevelGraph, Vertex};

/// Byte string identifying a graph up to isomorphisms fixing the legs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Encodes integers so that byte order agrees with numeric order.
fn encode(words: &[i64]) -> Vec<u8> {
    words
        .iter()
        .flat_map(|&w| ((w as u64) ^ (1 << 63)).to_be_bytes())
        .collect()
}

fn edge_word(graph: &EnhancedLevelGraph, e: usize, pos: &[usize]) -> [i64; 3] {
    let [a, b] = graph.edge(e).ends;
    let (a, b) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let kappa = graph.kappa(e).unwrap_or(0);
    [a as i64, b as i64, kappa as i64]
}

/// Isomorphism-invariant signature of the neighborhood of `v`.
fn local_invariant(graph: &EnhancedLevelGraph, v: usize) -> Vec<(i64, u64, bool)> {
    let mut out = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        for (i, &x) in edge.ends.iter().enumerate() {
            if x == v {
                let other = edge.ends[1 - i];
                out.push((
                    graph.level(other),
                    graph.kappa(e).unwrap_or(0),
                    edge.is_loop(),
                ));
            }
        }
    }
    out.sort_unstable();
    out
}

/// All orderings of `items`, in lexicographic order of index choice.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Canonical representative and key. Vertices are sorted by level (top
/// first), genus and legs; leg-less vertices that agree on these and on
/// their local invariant are permuted exhaustively and the lexicographically
/// smallest edge list wins.
pub fn canonical_form(graph: &EnhancedLevelGraph) -> (EnhancedLevelGraph, CanonicalKey) {
    let nv = graph.vertices().len();
    type ClassKey = (i64, u64, Vec<usize>, Vec<(i64, u64, bool)>);
    let keys: Vec<ClassKey> = (0..nv)
        .map(|v| {
            let vert = graph.vertex(v);
            (
                -vert.level,
                vert.genus,
                vert.legs.clone(),
                local_invariant(graph, v),
            )
        })
        .collect();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if keys[c[0]] == keys[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }

    let choices: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
    let mut best: Option<(Vec<[i64; 3]>, Vec<usize>)> = None;
    let mut idx = vec![0usize; classes.len()];
    loop {
        let seq: Vec<usize> = idx
            .iter()
            .enumerate()
            .flat_map(|(c, &i)| choices[c][i].iter().copied())
            .collect();
        let mut pos = vec![0usize; nv];
        for (p, &v) in seq.iter().enumerate() {
            pos[v] = p;
        }
        let mut words: Vec<[i64; 3]> = (0..graph.edges().len())
            .map(|e| edge_word(graph, e, &pos))
            .collect();
        words.sort_unstable();
        if best.as_ref().is_none_or(|(w, _)| words < *w) {
            best = Some((words, seq));
        }
        // odometer over the per-class permutations
        let mut c = 0;
        loop {
            if c == idx.len() {
                return finish(graph, best.unwrap());
            }
            idx[c] += 1;
            if idx[c] < choices[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

fn finish(
    graph: &EnhancedLevelGraph,
    (words, seq): (Vec<[i64; 3]>, Vec<usize>),
) -> (EnhancedLevelGraph, CanonicalKey) {
    let vertices: Vec<Vertex> = seq.iter().map(|&v| graph.vertex(v).clone()).collect();
    let edges: Vec<Edge> = words
        .iter()
        .map(|&[a, b, k]| Edge {
            ends: [a as usize, b as usize],
            kappa: (k > 0).then_some(k as u64),
        })
        .collect();

    let mu = graph.mu();
    let mut stream: Vec<i64> = vec![mu.genus() as i64, mu.n() as i64];
    stream.extend(mu.orders());
    stream.push(vertices.len() as i64);
    for v in &vertices {
        stream.extend([v.level, v.genus as i64, v.legs.len() as i64]);
        stream.extend(v.legs.iter().map(|&j| j as i64));
    }
    stream.push(edges.len() as i64);
    for w in &words {
        stream.extend(w);
    }
    let canon = EnhancedLevelGraph::new(mu.clone(), vertices, edges).expect("relabeling");
    (canon, CanonicalKey(encode(&stream)))
}
