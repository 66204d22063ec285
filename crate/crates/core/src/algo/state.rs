use std::ops::ControlFlow;

use crate::bounds::{f_df2d, f_requirement, f_topk};
use crate::sketch::ReducedSketch;
use crate::NodeId;

/// Partial solution and its coverage statistics over every hyperedge drawn
/// so far, including the ones no longer stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionState {
    selected: Vec<NodeId>,
    in_solution: Vec<bool>,
    covered: u64,
    covered_count: Vec<u32>,
    samples: u64,
}

impl SolutionState {
    pub fn new(n: usize) -> Self {
        SolutionState {
            selected: Vec::new(),
            in_solution: vec![false; n],
            covered: 0,
            covered_count: vec![0; n],
            samples: 0,
        }
    }

    /// Selected nodes in selection order.
    pub fn selected(&self) -> &[NodeId] {
        &self.selected
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.in_solution[v as usize]
    }

    pub fn in_solution(&self) -> &[bool] {
        &self.in_solution
    }

    /// Drawn hyperedges that intersect the solution.
    pub fn covered(&self) -> u64 {
        self.covered
    }

    /// Per node, the covered hyperedges that contain it.
    pub fn covered_count(&self) -> &[u32] {
        &self.covered_count
    }

    /// Hyperedges drawn, empty ones included.
    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn hits(&self, edge: &[NodeId]) -> bool {
        edge.iter().any(|&v| self.in_solution[v as usize])
    }

    /// Counts `edge` as covered or stores it in `sketch`. Returns whether it
    /// was covered.
    pub(crate) fn absorb(&mut self, edge: &[NodeId], sketch: &mut ReducedSketch) -> bool {
        self.samples += 1;
        if self.hits(edge) {
            self.covered += 1;
            for &v in edge {
                self.covered_count[v as usize] += 1;
            }
            true
        } else {
            sketch.add_hyperedge(edge);
            false
        }
    }

    /// Adds `u` and moves every stored hyperedge it covers out of `sketch`.
    /// Returns the number moved.
    pub(crate) fn select(&mut self, u: NodeId, sketch: &mut ReducedSketch) -> usize {
        debug_assert!(!self.in_solution[u as usize], "node {u} selected twice");
        let counts = &mut self.covered_count;
        let removed = sketch.remove_covered_by(u, |edge| {
            for &v in edge {
                counts[v as usize] += 1;
            }
        });
        self.covered += removed as u64;
        self.selected.push(u);
        self.in_solution[u as usize] = true;
        removed
    }
}

/// Progress notification from a selection engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event<'e> {
    /// Before the first draw.
    Start,
    /// A hyperedge was drawn; `covered` says whether the solution hit it.
    Sampled { edge: &'e [NodeId], covered: bool },
    /// A node joined the solution and `removed` stored hyperedges left the
    /// sketch.
    Selected { node: NodeId, removed: usize },
    /// The most attractive remaining node did not fit the leftover budget.
    Skipped { node: NodeId },
}

/// Read-only access to the engine after an event.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    pub sketch: &'a ReducedSketch,
    pub state: &'a SolutionState,
    pub k: usize,
    /// Value of the driving bound that the next threshold test compares
    /// against `z`.
    pub bound: f64,
}

impl View<'_> {
    pub fn f_requirement(&self) -> u64 {
        f_requirement(self.state.covered(), self.k, self.sketch.max_degree())
    }

    pub fn f_topk(&self) -> u64 {
        f_topk(self.state.covered(), self.sketch.top_k_sum())
    }

    pub fn f_df2d(&self) -> f64 {
        f_df2d(
            self.state.covered(),
            self.k,
            self.sketch.degrees(),
            self.state.covered_count(),
        )
    }
}

/// Receives every engine event. Returning `Break` abandons the run.
pub trait Observer {
    fn observe(&mut self, event: Event<'_>, view: &View<'_>) -> ControlFlow<()>;
}

impl<F> Observer for F
where
    F: FnMut(Event<'_>, &View<'_>) -> ControlFlow<()>,
{
    fn observe(&mut self, event: Event<'_>, view: &View<'_>) -> ControlFlow<()> {
        self(event, view)
    }
}

/// Observer that ignores everything.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoObserver;

impl Observer for NoObserver {
    fn observe(&mut self, _event: Event<'_>, _view: &View<'_>) -> ControlFlow<()> {
        ControlFlow::Continue(())
    }
}
