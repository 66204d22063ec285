use rand::Rng;

use super::{Graph, SampleOracle, SampleRng, Scratch};
use crate::error::{Error, Result};
use crate::NodeId;

/// Uniform ordered pair `s != t`; the hyperedge is every node on at least one
/// shortest `s`-`t` path, endpoints included, or empty when `t` is
/// unreachable. Arcs are followed in both directions.
#[derive(Debug, Clone, Copy)]
pub struct LandmarkOracle<'g> {
    graph: &'g Graph,
}

impl<'g> LandmarkOracle<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        if graph.num_nodes() < 2 {
            return Err(Error::TooFewNodes {
                needed: 2,
                found: graph.num_nodes(),
            });
        }
        Ok(LandmarkOracle { graph })
    }

    fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let g = self.graph;
        let back = if g.is_directed() {
            g.in_neighbors(v)
        } else {
            &[]
        };
        g.out_neighbors(v).iter().chain(back).copied()
    }

    /// Nodes on shortest `s`-`t` paths.
    pub fn between(&self, s: NodeId, t: NodeId, scratch: &mut Scratch, out: &mut Vec<NodeId>) {
        out.clear();
        scratch.begin(self.graph.num_nodes());
        scratch.visit(s, 0);
        scratch.queue.push(s);
        let mut head = 0;
        let mut target_dist = None;
        // BFS from s, stopping once the layer holding t is fully discovered.
        while head < scratch.queue.len() {
            let cur = scratch.queue[head];
            head += 1;
            let d = scratch.dist[cur as usize];
            if target_dist.is_some_and(|td| d >= td) {
                break;
            }
            for w in self.neighbors(cur) {
                if !scratch.visited(w) {
                    scratch.visit(w, d + 1);
                    scratch.queue.push(w);
                    if w == t {
                        target_dist = Some(d + 1);
                    }
                }
            }
        }
        let Some(td) = target_dist else {
            return;
        };

        // Walk back from t along arcs that drop the distance from s by one.
        // A node's distance is overwritten with a sentinel once it is emitted,
        // so it is emitted at most once.
        let mut stack = vec![(t, td)];
        scratch.dist[t as usize] = u32::MAX;
        while let Some((cur, d)) = stack.pop() {
            out.push(cur);
            if d == 0 {
                continue;
            }
            for w in self.neighbors(cur) {
                if scratch.dist(w) == Some(d - 1) {
                    scratch.dist[w as usize] = u32::MAX;
                    stack.push((w, d - 1));
                }
            }
        }
    }
}

impl SampleOracle for LandmarkOracle<'_> {
    fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    fn draw(&self, _index: u64, rng: &mut SampleRng, scratch: &mut Scratch, out: &mut Vec<NodeId>) {
        let n = self.graph.num_nodes();
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        self.between(s as NodeId, t as NodeId, scratch, out);
    }
}
