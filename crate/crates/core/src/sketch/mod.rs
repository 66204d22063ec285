//! Reduced sketch of uncovered hyperedges and its degree index.

mod heap;
mod reduced;

pub use heap::StepwiseHeap;
pub use reduced::{ReducedSketch, BYTES_PER_ELEMENT, TRASH_LIMIT};

use crate::NodeId;

/// A set of node ids, stored sorted and without duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Hyperedge(Vec<NodeId>);

impl Hyperedge {
    pub fn new(mut nodes: Vec<NodeId>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        Hyperedge(nodes)
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.0
    }
}

impl From<Vec<NodeId>> for Hyperedge {
    fn from(nodes: Vec<NodeId>) -> Self {
        Hyperedge::new(nodes)
    }
}

impl<const N: usize> From<[NodeId; N]> for Hyperedge {
    fn from(nodes: [NodeId; N]) -> Self {
        Hyperedge::new(nodes.to_vec())
    }
}

impl AsRef<[NodeId]> for Hyperedge {
    fn as_ref(&self) -> &[NodeId] {
        &self.0
    }
}

impl std::ops::Deref for Hyperedge {
    type Target = [NodeId];

    fn deref(&self) -> &[NodeId] {
        &self.0
    }
}
