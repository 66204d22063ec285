#![allow(dead_code)]

use hypercover::oracles::{Graph, IdMap};
use hypercover::sketch::Hyperedge;
use hypercover::NodeId;
use rand::seq::index::sample;
use rand::Rng;

pub const INF: u32 = u32::MAX / 4;

/// `m` random hyperedges over `0..n` with up to `max_size` nodes each. The
/// first one is never empty; later ones are empty with probability 1/10.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, m: usize, max_size: usize) -> Vec<Hyperedge> {
    (0..m)
        .map(|j| {
            let size = if j > 0 && rng.gen_bool(0.1) {
                0
            } else {
                rng.gen_range(1..=max_size.min(n))
            };
            Hyperedge::new(sample(rng, n, size).iter().map(|v| v as NodeId).collect())
        })
        .collect()
}

pub fn graph(n: usize, directed: bool, edges: &[(NodeId, NodeId)], probs: Option<&[f64]>) -> Graph {
    Graph::from_edges(n, directed, edges, probs, IdMap::identity(n)).unwrap()
}

/// All-pairs hop distances by Floyd-Warshall over the graph's arcs.
/// `dist[u][v]` is the length of the shortest directed path from `u` to `v`.
pub fn floyd_warshall(n: usize, arcs: impl Iterator<Item = (NodeId, NodeId)>) -> Vec<Vec<u32>> {
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in arcs {
        d[u as usize][v as usize] = d[u as usize][v as usize].min(1);
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Uniform random undirected graph as an edge list.
pub fn random_graph_edges<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Exact probability that a uniform target is reached from `seeds` in a
/// live-edge sample of `graph`, by enumerating every subset of arcs.
pub fn exact_influence_fraction(graph: &Graph, seeds: &[NodeId]) -> f64 {
    let arcs: Vec<(NodeId, NodeId, f64)> = graph.arcs().collect();
    assert!(
        arcs.len() <= 20,
        "enumeration is exponential in the arc count"
    );
    let n = graph.num_nodes();
    let mut total = 0.0;
    for mask in 0u32..(1 << arcs.len()) {
        let mut weight = 1.0;
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v, p)) in arcs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                weight *= p;
                adj[u as usize].push(v);
            } else {
                weight *= 1.0 - p;
            }
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<NodeId> = seeds.to_vec();
        for &s in seeds {
            seen[s as usize] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        total += weight * seen.iter().filter(|&&b| b).count() as f64;
    }
    total / n as f64
}

/// Empirical frequency with which drawn hyperedges intersect `set`.
pub fn empirical_hit_rate(
    oracle: &dyn hypercover::SampleOracle,
    set: &[NodeId],
    draws: u64,
    seed: u64,
) -> f64 {
    let mut stream = hypercover::SampleStream::new(oracle, seed);
    let mut hits = 0u64;
    for _ in 0..draws {
        if stream.next_edge().iter().any(|v| set.contains(v)) {
            hits += 1;
        }
    }
    hits as f64 / draws as f64
}

/// `|observed - truth| <= 3 sigma` for a Bernoulli mean over `draws`.
pub fn within_three_sigma(observed: f64, truth: f64, draws: u64) -> bool {
    let sigma = (truth * (1.0 - truth) / draws as f64).sqrt();
    (observed - truth).abs() <= 3.0 * sigma + 1e-12
}
