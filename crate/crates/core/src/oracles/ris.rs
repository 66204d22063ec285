use rand::Rng;

use super::{Graph, SampleOracle, SampleRng, Scratch};
use crate::error::{Error, Result};
use crate::NodeId;

/// Reverse influence sets under the independent cascade model: a uniform
/// target and every node that reaches it through arcs that come up live.
#[derive(Debug, Clone, Copy)]
pub struct RisOracle<'g> {
    graph: &'g Graph,
}

impl<'g> RisOracle<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        if !graph.has_probabilities() {
            return Err(Error::MissingProbabilities);
        }
        if graph.num_nodes() == 0 {
            return Err(Error::TooFewNodes {
                needed: 1,
                found: 0,
            });
        }
        Ok(RisOracle { graph })
    }

    /// Reverse live-edge search from `target`. Each arc into a dequeued node
    /// is examined once; its coin is only tossed if the source is still
    /// unreached, which leaves the reached set's distribution unchanged.
    pub fn reverse_set(
        &self,
        target: NodeId,
        rng: &mut SampleRng,
        scratch: &mut Scratch,
        out: &mut Vec<NodeId>,
    ) {
        out.clear();
        scratch.begin(self.graph.num_nodes());
        scratch.visit(target, 0);
        out.push(target);
        let mut head = 0;
        while head < out.len() {
            let cur = out[head];
            head += 1;
            let probs = self
                .graph
                .in_probabilities(cur)
                .expect("checked at construction");
            for (&w, &p) in self.graph.in_neighbors(cur).iter().zip(probs) {
                if !scratch.visited(w) && rng.gen::<f64>() < p {
                    scratch.visit(w, 0);
                    out.push(w);
                }
            }
        }
    }
}

impl SampleOracle for RisOracle<'_> {
    fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    fn draw(&self, _index: u64, rng: &mut SampleRng, scratch: &mut Scratch, out: &mut Vec<NodeId>) {
        let target = rng.gen_range(0..self.graph.num_nodes()) as NodeId;
        self.reverse_set(target, rng, scratch, out);
    }
}
