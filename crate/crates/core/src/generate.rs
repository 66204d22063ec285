//! Seeded synthetic graphs for tests and benchmarks. Each generator returns
//! undirected edges `(u, v)` with `u < v` over nodes `0..n`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Edge = (u64, u64);

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: u64) -> Vec<Edge> {
    (1..n).map(|v| (v - 1, v)).collect()
}

/// Star with center 0.
pub fn star(n: u64) -> Vec<Edge> {
    (1..n).map(|v| (0, v)).collect()
}

/// Erdos-Renyi `G(n, p)`, drawn by geometric skipping over the pair list.
pub fn erdos_renyi(n: u64, p: f64, seed: u64) -> Result<Vec<Edge>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    if p == 0.0 || n < 2 {
        return Ok(edges);
    }
    if p == 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        return Ok(edges);
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w): (i64, i64) = (1, -1);
    let n = n as i64;
    while v < n {
        let r: f64 = 1.0 - rng.gen::<f64>();
        w += 1 + (r.ln() / log_q).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((w as u64, v as u64));
        }
    }
    Ok(edges)
}

/// Barabasi-Albert preferential attachment: a clique on the first `m` nodes,
/// then every new node links to `m` distinct earlier nodes chosen with
/// probability proportional to degree. Produces `m(m-1)/2 + m(n-m)` edges.
pub fn barabasi_albert(n: u64, m: u64, seed: u64) -> Result<Vec<Edge>> {
    if m == 0 || m >= n {
        return Err(Error::invalid(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity((m * (m - 1) / 2 + m * (n - m)) as usize);
    // every node appears once per incident edge, plus once for each clique
    // node so that the first newcomer has somewhere to attach
    let mut urn: Vec<u64> = (0..m).collect();
    for u in 0..m {
        for v in u + 1..m {
            edges.push((u, v));
            urn.push(u);
            urn.push(v);
        }
    }
    let mut targets = HashSet::with_capacity(m as usize);
    for v in m..n {
        targets.clear();
        while (targets.len() as u64) < m {
            targets.insert(*urn.choose(&mut rng).expect("urn is never empty"));
        }
        let mut sorted: Vec<u64> = targets.iter().copied().collect();
        sorted.sort_unstable();
        for u in sorted {
            edges.push((u, v));
            urn.push(u);
            urn.push(v);
        }
    }
    Ok(edges)
}
