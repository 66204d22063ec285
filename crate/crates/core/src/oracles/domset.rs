use rand::Rng;

use super::{Graph, SampleOracle, SampleRng, Scratch};
use crate::error::{Error, Result};
use crate::NodeId;

/// Uniform target `v`; the hyperedge is every node within `hops` reverse
/// hops of `v`, i.e. every node that dominates `v` at that distance.
#[derive(Debug, Clone, Copy)]
pub struct DomsetOracle<'g> {
    graph: &'g Graph,
    hops: u32,
}

impl<'g> DomsetOracle<'g> {
    pub fn new(graph: &'g Graph, hops: u32) -> Result<Self> {
        if hops == 0 {
            return Err(Error::invalid("hops must be at least 1"));
        }
        if graph.num_nodes() == 0 {
            return Err(Error::TooFewNodes {
                needed: 1,
                found: 0,
            });
        }
        Ok(DomsetOracle { graph, hops })
    }

    /// Nodes within `hops` reverse hops of `target`, in discovery order.
    pub fn ball(&self, target: NodeId, scratch: &mut Scratch, out: &mut Vec<NodeId>) {
        out.clear();
        scratch.begin(self.graph.num_nodes());
        scratch.visit(target, 0);
        out.push(target);
        let mut head = 0;
        while head < out.len() {
            let cur = out[head];
            head += 1;
            let d = scratch.dist[cur as usize];
            if d == self.hops {
                continue;
            }
            for &w in self.graph.in_neighbors(cur) {
                if !scratch.visited(w) {
                    scratch.visit(w, d + 1);
                    out.push(w);
                }
            }
        }
    }
}

impl SampleOracle for DomsetOracle<'_> {
    fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    fn draw(&self, _index: u64, rng: &mut SampleRng, scratch: &mut Scratch, out: &mut Vec<NodeId>) {
        let target = rng.gen_range(0..self.graph.num_nodes()) as NodeId;
        self.ball(target, scratch, out);
    }
}
