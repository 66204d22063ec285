//! Seeded instances shared by the criterion benchmarks in `benches/`.

use hypercover::generate::barabasi_albert;
use hypercover::oracles::{ExplicitOracle, Graph, IdMap, WeightModel};
use hypercover::sketch::Hyperedge;
use hypercover::NodeId;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `m` hyperedges over `0..n` whose sizes are uniform in `1..=max_size` and
/// whose members are skewed towards small ids.
pub fn skewed_hyperedges(n: usize, m: usize, max_size: usize, seed: u64) -> Vec<Hyperedge> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            let mut nodes: Vec<NodeId> = Vec::with_capacity(size);
            while nodes.len() < size {
                let u: f64 = rng.gen();
                let v = ((u * u) * n as f64) as NodeId;
                if !nodes.contains(&v) {
                    nodes.push(v);
                }
            }
            Hyperedge::new(nodes)
        })
        .collect()
}

/// Uniform hyperedges over `0..n`.
pub fn uniform_hyperedges(n: usize, m: usize, max_size: usize, seed: u64) -> Vec<Hyperedge> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            Hyperedge::new(
                sample(&mut rng, n, size)
                    .iter()
                    .map(|v| v as NodeId)
                    .collect(),
            )
        })
        .collect()
}

pub fn explicit(n: usize, edges: Vec<Hyperedge>) -> ExplicitOracle {
    ExplicitOracle::new(n, edges).expect("generated ids are below n")
}

/// Undirected preferential-attachment graph with weighted-cascade
/// probabilities.
pub fn ba_graph(n: u64, m: u64, seed: u64) -> Graph {
    let edges: Vec<(NodeId, NodeId)> = barabasi_albert(n, m, seed)
        .expect("valid generator parameters")
        .into_iter()
        .map(|(u, v)| (u as NodeId, v as NodeId))
        .collect();
    Graph::from_edges(n as usize, false, &edges, None, IdMap::identity(n as usize))
        .and_then(|g| g.assign_weights(WeightModel::Wc, seed))
        .expect("generated graph is valid")
}
