//! Random hyperedge oracles and the ordered sample stream that feeds the
//! algorithms.
//!
//! Sample `i` is drawn from its own ChaCha stream keyed by the master seed
//! and `i`, so the sequence a consumer sees does not depend on how many
//! workers prefetch it.

mod domset;
mod explicit;
mod graph;
mod landmark;
mod ris;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use domset::DomsetOracle;
pub use explicit::{load_hypergraph, ExplicitOracle, ReplayOracle};
pub use graph::{load_graph, parse_graph, Graph, IdMap, WeightModel};
pub use landmark::LandmarkOracle;
pub use ris::RisOracle;

use crate::NodeId;

pub type SampleRng = ChaCha8Rng;

/// A generator of random hyperedges `E` with `Pr[E] = w_E`.
pub trait SampleOracle: Send + Sync {
    fn num_nodes(&self) -> usize;

    /// Writes sample number `index` into `out` (cleared first). Nodes are
    /// distinct. `rng` is private to this index.
    fn draw(&self, index: u64, rng: &mut SampleRng, scratch: &mut Scratch, out: &mut Vec<NodeId>);
}

impl<T: SampleOracle + ?Sized> SampleOracle for &T {
    fn num_nodes(&self) -> usize {
        (**self).num_nodes()
    }

    fn draw(&self, index: u64, rng: &mut SampleRng, scratch: &mut Scratch, out: &mut Vec<NodeId>) {
        (**self).draw(index, rng, scratch, out)
    }
}

/// Per-worker traversal buffers, reused across draws.
#[derive(Debug, Default, Clone)]
pub struct Scratch {
    epoch: u32,
    mark: Vec<u32>,
    dist: Vec<u32>,
    queue: Vec<NodeId>,
}

impl Scratch {
    /// Starts a traversal over `n` nodes: every node reads as unvisited.
    pub(crate) fn begin(&mut self, n: usize) {
        if self.mark.len() < n {
            self.mark.resize(n, 0);
            self.dist.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.queue.clear();
    }

    #[inline]
    pub(crate) fn visited(&self, v: NodeId) -> bool {
        self.mark[v as usize] == self.epoch
    }

    #[inline]
    pub(crate) fn visit(&mut self, v: NodeId, d: u32) {
        self.mark[v as usize] = self.epoch;
        self.dist[v as usize] = d;
    }

    #[inline]
    pub(crate) fn dist(&self, v: NodeId) -> Option<u32> {
        self.visited(v).then(|| self.dist[v as usize])
    }
}

/// The generator behind sample `index` of a stream seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.set_word_pos(0);
    rng
}

const PREFETCH_BATCH: usize = 1024;

/// Ordered view over an oracle's samples `0, 1, 2, ...`.
pub struct SampleStream<'a> {
    oracle: &'a dyn SampleOracle,
    base: SampleRng,
    next_index: u64,
    scratch: Scratch,
    current: Vec<NodeId>,
    pool: Option<rayon::ThreadPool>,
    buffer: Vec<Vec<NodeId>>,
    buffer_pos: usize,
}

impl<'a> SampleStream<'a> {
    pub fn new(oracle: &'a dyn SampleOracle, seed: u64) -> Self {
        SampleStream {
            oracle,
            base: ChaCha8Rng::seed_from_u64(seed),
            next_index: 0,
            scratch: Scratch::default(),
            current: Vec::new(),
            pool: None,
            buffer: Vec::new(),
            buffer_pos: 0,
        }
    }

    /// Generates samples ahead of the consumer on `workers` threads. The
    /// sequence is unchanged.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.pool = if workers > 1 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .ok()
        } else {
            None
        };
        self
    }

    pub fn num_nodes(&self) -> usize {
        self.oracle.num_nodes()
    }

    /// Samples handed out so far.
    pub fn drawn(&self) -> u64 {
        self.next_index
    }

    fn rng_for(&self, index: u64) -> SampleRng {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        rng.set_word_pos(0);
        rng
    }

    /// The next sample in index order.
    pub fn next_edge(&mut self) -> &[NodeId] {
        let index = self.next_index;
        self.next_index += 1;
        if self.pool.is_some() {
            if self.buffer_pos == self.buffer.len() {
                self.refill(index);
            }
            let edge = std::mem::take(&mut self.buffer[self.buffer_pos]);
            self.buffer_pos += 1;
            self.current = edge;
        } else {
            let mut rng = self.rng_for(index);
            self.oracle
                .draw(index, &mut rng, &mut self.scratch, &mut self.current);
        }
        &self.current
    }

    fn refill(&mut self, start: u64) {
        let oracle = self.oracle;
        let base = &self.base;
        let pool = self.pool.as_ref().expect("prefetch pool");
        self.buffer = pool.install(|| {
            (0..PREFETCH_BATCH as u64)
                .into_par_iter()
                .map_init(Scratch::default, |scratch, off| {
                    let index = start + off;
                    let mut rng = base.clone();
                    rng.set_stream(index);
                    rng.set_word_pos(0);
                    let mut out = Vec::new();
                    oracle.draw(index, &mut rng, scratch, &mut out);
                    out
                })
                .collect()
        });
        self.buffer_pos = 0;
    }
}
