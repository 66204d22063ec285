//! Bucketed degree ordering with constant-time unit updates.
//!
//! Nodes live in one array sorted by nondecreasing degree. Nodes of equal
//! degree form a contiguous bucket whose first position is kept in
//! `bucket_start`. Moving a node up or down one degree is a single swap with
//! the boundary element of its bucket plus one boundary shift, so the running
//! sum over the last `k` positions changes by at most one per update.

use crate::NodeId;

#[derive(Debug, Clone)]
pub struct StepwiseHeap {
    order: Vec<NodeId>,
    position: Vec<u32>,
    degree: Vec<u32>,
    /// `bucket_start[d]` is the first position holding degree `d`; buckets
    /// beyond the current maximum start at `n`.
    bucket_start: Vec<u32>,
    k: usize,
    topk_sum: u64,
    touches: u64,
}

impl StepwiseHeap {
    /// All `n` nodes start at degree zero. `k` is the width of the running
    /// top-k sum and is clamped to `n`.
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= u32::MAX as usize, "node count must fit in u32");
        StepwiseHeap {
            order: (0..n as NodeId).collect(),
            position: (0..n as u32).collect(),
            degree: vec![0; n],
            bucket_start: vec![0, n as u32],
            k: k.min(n),
            topk_sum: 0,
            touches: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    /// Nodes in nondecreasing degree order.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn max_degree(&self) -> u32 {
        self.order.last().map_or(0, |&v| self.degree[v as usize])
    }

    pub fn top_k_sum(&self) -> u64 {
        self.topk_sum
    }

    /// Total array cells written since construction.
    pub fn touches(&self) -> u64 {
        self.touches
    }

    #[inline]
    fn boundary(&self) -> usize {
        self.order.len() - self.k
    }

    #[inline]
    fn swap_positions(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (u, w) = (self.order[a], self.order[b]);
        self.order[a] = w;
        self.order[b] = u;
        self.position[w as usize] = a as u32;
        self.position[u as usize] = b as u32;
        self.touches += 4;
    }

    pub fn increment(&mut self, v: NodeId) {
        let d = self.degree[v as usize] as usize;
        let n = self.order.len() as u32;
        let have = self.bucket_start.len();
        if have < d + 3 {
            self.bucket_start.resize(d + 3, n);
            self.touches += (d + 3 - have) as u64;
        }
        // Last slot of bucket d becomes the first slot of bucket d + 1.
        let end = self.bucket_start[d + 1] as usize - 1;
        let pos = self.position[v as usize] as usize;
        self.swap_positions(pos, end);
        self.bucket_start[d + 1] -= 1;
        self.degree[v as usize] += 1;
        self.touches += 2;
        if end >= self.boundary() {
            self.topk_sum += 1;
        }
    }

    /// Panics if `v` is already at degree zero.
    pub fn decrement(&mut self, v: NodeId) {
        let d = self.degree[v as usize] as usize;
        assert!(d > 0, "decrement of node {v} at degree zero");
        // First slot of bucket d becomes the last slot of bucket d - 1.
        let start = self.bucket_start[d] as usize;
        let pos = self.position[v as usize] as usize;
        self.swap_positions(pos, start);
        self.bucket_start[d] += 1;
        self.degree[v as usize] -= 1;
        self.touches += 2;
        if start >= self.boundary() {
            self.topk_sum -= 1;
        }
    }

    /// Unselected node of maximum degree, ties broken by smallest id.
    ///
    /// Selected nodes are assumed to sit at degree zero, so only the all-zero
    /// case has to consult `selected`.
    pub fn argmax_unselected(&self, selected: &[bool]) -> Option<(NodeId, u32)> {
        let top = self.max_degree();
        if top > 0 {
            let start = self.bucket_start[top as usize] as usize;
            let best = self.order[start..].iter().copied().min()?;
            return Some((best, top));
        }
        (0..self.len())
            .find(|&v| !selected.get(v).copied().unwrap_or(false))
            .map(|v| (v as NodeId, 0))
    }

    #[cfg(test)]
    pub(crate) fn check_invariants(&self) {
        for (i, &v) in self.order.iter().enumerate() {
            assert_eq!(self.position[v as usize] as usize, i);
            if i > 0 {
                assert!(self.degree[self.order[i - 1] as usize] <= self.degree[v as usize]);
            }
        }
        assert_eq!(self.bucket_start[0], 0);
        for (d, &s) in self.bucket_start.iter().enumerate() {
            let s = s as usize;
            for (i, &v) in self.order.iter().enumerate() {
                assert_eq!(i >= s, self.degree[v as usize] as usize >= d, "bucket {d}");
            }
        }
        let mut sorted = self.degree.clone();
        sorted.sort_unstable();
        let naive: u64 = sorted.iter().rev().take(self.k).map(|&d| d as u64).sum();
        assert_eq!(naive, self.topk_sum);
    }
}
