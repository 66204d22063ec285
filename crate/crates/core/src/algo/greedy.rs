use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::NodeId;

/// Lazy greedy max-`k`-cover over a materialized hyperedge list. Gains are
/// re-evaluated only when a stale estimate reaches the top of the queue;
/// ties go to the smallest node id. Returns the selection in order and the
/// number of hyperedges it covers.
pub fn full_sketch_greedy<E: AsRef<[NodeId]>>(
    edges: &[E],
    n: usize,
    k: usize,
) -> (Vec<NodeId>, u64) {
    let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (j, e) in edges.iter().enumerate() {
        for &v in e.as_ref() {
            incidence[v as usize].push(j as u32);
        }
    }
    let mut edge_covered = vec![false; edges.len()];
    let mut queue: BinaryHeap<(u64, Reverse<NodeId>, usize)> = (0..n)
        .map(|v| (incidence[v].len() as u64, Reverse(v as NodeId), 0))
        .collect();

    let mut solution = Vec::new();
    let mut covered = 0u64;
    let mut round = 0;
    while solution.len() < k.min(n) {
        let Some((gain, Reverse(v), stamp)) = queue.pop() else {
            break;
        };
        if stamp == round {
            solution.push(v);
            covered += gain;
            for &j in &incidence[v as usize] {
                edge_covered[j as usize] = true;
            }
            round += 1;
        } else {
            let fresh = incidence[v as usize]
                .iter()
                .filter(|&&j| !edge_covered[j as usize])
                .count() as u64;
            queue.push((fresh, Reverse(v), round));
        }
    }
    (solution, covered)
}
