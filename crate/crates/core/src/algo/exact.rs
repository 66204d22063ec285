use crate::error::{Error, Result};
use crate::NodeId;

/// Most candidate sets an exhaustive search may visit.
pub const SEARCH_LIMIT: u64 = 10_000_000;

/// Hyperedges in `edges` that intersect `set`.
pub fn coverage_of<E: AsRef<[NodeId]>>(edges: &[E], set: &[NodeId]) -> u64 {
    let n = set.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut member = vec![false; n];
    for &v in set {
        member[v as usize] = true;
    }
    edges
        .iter()
        .filter(|e| {
            e.as_ref()
                .iter()
                .any(|&v| (v as usize) < n && member[v as usize])
        })
        .count() as u64
}

/// Per node, a bitset over hyperedge indices.
fn node_bitsets<E: AsRef<[NodeId]>>(edges: &[E], n: usize) -> (Vec<Vec<u64>>, usize) {
    let words = edges.len().div_ceil(64);
    let mut sets = vec![vec![0u64; words]; n];
    for (j, e) in edges.iter().enumerate() {
        for &v in e.as_ref() {
            sets[v as usize][j / 64] |= 1 << (j % 64);
        }
    }
    (sets, words)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Exact maximum coverage of any `k` nodes out of `0..n`, with a maximizing
/// set (lexicographically first among ties).
pub fn brute_force_opt<E: AsRef<[NodeId]>>(
    edges: &[E],
    n: usize,
    k: usize,
) -> Result<(u64, Vec<NodeId>)> {
    let k = k.min(n);
    if k == 0 {
        return Ok((0, Vec::new()));
    }
    if binomial(n as u64, k as u64) > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge {
            limit: SEARCH_LIMIT,
        });
    }
    let (sets, words) = node_bitsets(edges, n);

    let mut best = (0u64, (0..k as NodeId).collect::<Vec<_>>());
    let mut combo: Vec<usize> = (0..k).collect();
    let mut acc = vec![0u64; words];
    loop {
        acc.iter_mut().for_each(|w| *w = 0);
        for &v in &combo {
            for (a, s) in acc.iter_mut().zip(&sets[v]) {
                *a |= s;
            }
        }
        let value: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
        if value > best.0 {
            best = (value, combo.iter().map(|&v| v as NodeId).collect());
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(best)
}

/// Exact maximum coverage over node sets whose total cost is at most
/// `budget`.
pub fn brute_force_budgeted<E: AsRef<[NodeId]>>(
    edges: &[E],
    costs: &[f64],
    budget: f64,
) -> Result<(u64, Vec<NodeId>)> {
    let n = costs.len();
    let (sets, words) = node_bitsets(edges, n);
    let mut search = BudgetSearch {
        sets: &sets,
        costs,
        budget: budget * (1.0 + 1e-12),
        visited: 0,
        best: (0, Vec::new()),
        chosen: Vec::new(),
    };
    search.dfs(0, 0.0, &vec![0u64; words])?;
    Ok(search.best)
}

struct BudgetSearch<'a> {
    sets: &'a [Vec<u64>],
    costs: &'a [f64],
    budget: f64,
    visited: u64,
    best: (u64, Vec<NodeId>),
    chosen: Vec<NodeId>,
}

impl BudgetSearch<'_> {
    fn dfs(&mut self, next: usize, spent: f64, acc: &[u64]) -> Result<()> {
        self.visited += 1;
        if self.visited > SEARCH_LIMIT {
            return Err(Error::SearchTooLarge {
                limit: SEARCH_LIMIT,
            });
        }
        let value: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
        if value > self.best.0 {
            self.best = (value, self.chosen.clone());
        }
        for v in next..self.costs.len() {
            let cost = spent + self.costs[v];
            if cost > self.budget {
                continue;
            }
            let merged: Vec<u64> = acc.iter().zip(&self.sets[v]).map(|(a, s)| a | s).collect();
            self.chosen.push(v as NodeId);
            self.dfs(v + 1, cost, &merged)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance() -> Vec<Vec<NodeId>> {
        vec![vec![0, 1], vec![0, 2], vec![1], vec![1, 2]]
    }

    #[test]
    fn pair_optimum() {
        let (v, s) = brute_force_opt(&instance(), 3, 2).unwrap();
        assert_eq!(v, 4);
        assert_eq!(coverage_of(&instance(), &s), 4);
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(brute_force_opt(&instance(), 3, 0).unwrap().0, 0);
        assert_eq!(brute_force_opt(&[vec![5]], 6, 1).unwrap(), (1, vec![5]));
    }

    #[test]
    fn guard() {
        let edges: Vec<Vec<NodeId>> = vec![vec![0]];
        assert!(matches!(
            brute_force_opt(&edges, 200, 10),
            Err(Error::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn budgeted_prefers_cheap_pair() {
        // node 0 covers three edges at cost 2, nodes 1 and 2 two each at cost 1
        let edges = vec![vec![0], vec![0], vec![0, 1], vec![1], vec![2], vec![2]];
        let costs = [2.0, 1.0, 1.0];
        assert_eq!(
            brute_force_budgeted(&edges, &costs, 2.0).unwrap(),
            (4, vec![1, 2])
        );
        assert_eq!(
            brute_force_budgeted(&edges, &costs, 3.0).unwrap(),
            (5, vec![0, 2])
        );
        assert_eq!(brute_force_budgeted(&edges, &costs, 4.0).unwrap().0, 6);
        assert_eq!(brute_force_budgeted(&edges, &costs, 0.5).unwrap().0, 0);
    }

    #[test]
    fn budgeted_uniform_matches_cardinality() {
        let edges = instance();
        let unit = [1.0; 3];
        for k in 0..=3 {
            assert_eq!(
                brute_force_budgeted(&edges, &unit, k as f64).unwrap().0,
                brute_force_opt(&edges, 3, k).unwrap().0
            );
        }
    }
}
