use crate::error::{Error, Result};
use crate::sketch::StepwiseHeap;
use crate::NodeId;

/// Dead storage may reach this fraction of all stored node occurrences
/// before the structure is rebuilt from live hyperedges.
pub const TRASH_LIMIT: f64 = 1.0 / 3.0;

/// Bytes charged per stored node occurrence when reporting sketch size.
pub const BYTES_PER_ELEMENT: u64 = 8;

/// Incidence structure over the hyperedges not yet covered by the partial
/// solution.
///
/// Removal tombstones a slot and leaves its entries in the other nodes'
/// incidence lists; those entries are skipped on later scans and dropped by a
/// rebuild once dead storage exceeds [`TRASH_LIMIT`].
#[derive(Debug, Clone)]
pub struct ReducedSketch {
    heap: StepwiseHeap,
    incidence: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    nodes: Vec<NodeId>,
    alive: Vec<bool>,
    incidence_entries: u64,
    live_edges: usize,
    live_elements: u64,
    peak_elements: u64,
    touches: u64,
    compactions: u64,
}

impl ReducedSketch {
    pub fn new(n: usize, k: usize) -> Self {
        ReducedSketch {
            heap: StepwiseHeap::new(n, k),
            incidence: vec![Vec::new(); n],
            offsets: vec![0],
            nodes: Vec::new(),
            alive: Vec::new(),
            incidence_entries: 0,
            live_edges: 0,
            live_elements: 0,
            peak_elements: 0,
            touches: 0,
            compactions: 0,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.heap.len()
    }

    pub fn heap(&self) -> &StepwiseHeap {
        &self.heap
    }

    pub fn degree(&self, v: NodeId) -> u32 {
        self.heap.degree(v)
    }

    pub fn degrees(&self) -> &[u32] {
        self.heap.degrees()
    }

    pub fn max_degree(&self) -> u32 {
        self.heap.max_degree()
    }

    pub fn top_k_sum(&self) -> u64 {
        self.heap.top_k_sum()
    }

    pub fn live_edges(&self) -> usize {
        self.live_edges
    }

    pub fn live_elements(&self) -> u64 {
        self.live_elements
    }

    pub fn peak_elements(&self) -> u64 {
        self.peak_elements
    }

    pub fn peak_bytes(&self) -> u64 {
        self.peak_elements * BYTES_PER_ELEMENT
    }

    /// Incidence entries that point at tombstoned slots.
    pub fn trash_count(&self) -> u64 {
        self.incidence_entries - self.live_elements
    }

    /// Incidence entries and stored node occurrences visited so far.
    pub fn touches(&self) -> u64 {
        self.touches
    }

    pub fn compactions(&self) -> u64 {
        self.compactions
    }

    fn edge(&self, slot: usize) -> &[NodeId] {
        &self.nodes[self.offsets[slot]..self.offsets[slot + 1]]
    }

    /// Live hyperedges in slot order.
    pub fn live_hyperedges(&self) -> impl Iterator<Item = &[NodeId]> + '_ {
        (0..self.alive.len())
            .filter(|&s| self.alive[s])
            .map(move |s| self.edge(s))
    }

    /// Stores an uncovered hyperedge. Empty hyperedges are not stored and
    /// return `None`. The caller must have filtered hyperedges that touch a
    /// selected node.
    pub fn add_hyperedge(&mut self, edge: &[NodeId]) -> Option<usize> {
        if edge.is_empty() {
            return None;
        }
        let slot = self.alive.len();
        self.nodes.extend_from_slice(edge);
        self.offsets.push(self.nodes.len());
        self.alive.push(true);
        for &v in edge {
            self.incidence[v as usize].push(slot as u32);
            self.heap.increment(v);
        }
        let len = edge.len() as u64;
        self.incidence_entries += len;
        self.live_edges += 1;
        self.live_elements += len;
        self.peak_elements = self.peak_elements.max(self.live_elements);
        self.touches += len;
        Some(slot)
    }

    /// Tombstones every live hyperedge containing `u`, handing each removed
    /// node list to `on_removed`. Returns the number of hyperedges removed.
    pub fn remove_covered_by<F>(&mut self, u: NodeId, mut on_removed: F) -> usize
    where
        F: FnMut(&[NodeId]),
    {
        let slots = std::mem::take(&mut self.incidence[u as usize]);
        self.incidence_entries -= slots.len() as u64;
        self.touches += slots.len() as u64;
        let mut removed = 0;
        for &slot in &slots {
            let slot = slot as usize;
            if !self.alive[slot] {
                continue;
            }
            self.alive[slot] = false;
            let (lo, hi) = (self.offsets[slot], self.offsets[slot + 1]);
            for i in lo..hi {
                self.heap.decrement(self.nodes[i]);
            }
            on_removed(&self.nodes[lo..hi]);
            self.live_edges -= 1;
            self.live_elements -= (hi - lo) as u64;
            self.touches += (hi - lo) as u64;
            removed += 1;
        }
        self.maybe_compact();
        removed
    }

    /// Unselected node with the most live hyperedges, ties to smallest id.
    pub fn max_degree_node(&self, selected: &[bool]) -> Result<(NodeId, u32)> {
        self.heap
            .argmax_unselected(selected)
            .ok_or(Error::BudgetExceedsNodes)
    }

    fn maybe_compact(&mut self) {
        let stored = self.nodes.len() as f64;
        let dead = stored - self.live_elements as f64;
        if dead > TRASH_LIMIT * stored {
            self.compact();
        }
    }

    /// Rebuilds storage and incidence lists from live hyperedges only.
    /// Degrees are untouched, so every query answers the same afterwards.
    pub fn compact(&mut self) {
        for &v in &self.nodes {
            self.incidence[v as usize].clear();
        }
        self.touches += self.nodes.len() as u64;

        let mut nodes = Vec::with_capacity(self.live_elements as usize);
        let mut offsets = Vec::with_capacity(self.live_edges + 1);
        offsets.push(0);
        for slot in 0..self.alive.len() {
            if !self.alive[slot] {
                continue;
            }
            let new_slot = (offsets.len() - 1) as u32;
            let (lo, hi) = (self.offsets[slot], self.offsets[slot + 1]);
            for &v in &self.nodes[lo..hi] {
                self.incidence[v as usize].push(new_slot);
            }
            nodes.extend_from_slice(&self.nodes[lo..hi]);
            offsets.push(nodes.len());
        }
        self.touches += nodes.len() as u64;
        self.alive = vec![true; offsets.len() - 1];
        self.nodes = nodes;
        self.offsets = offsets;
        self.incidence_entries = self.live_elements;
        self.compactions += 1;
    }
}
