use std::path::Path;

use anyhow::{bail, Context, Result};
use hypercover::oracles::{
    load_graph, load_hypergraph, DomsetOracle, ExplicitOracle, Graph, IdMap, LandmarkOracle,
    RisOracle, WeightModel,
};
use hypercover::{NodeId, SampleOracle};

use crate::args::{Problem, ProblemArgs};

/// A loaded input: either the hyperedges themselves or a graph that an
/// oracle samples from.
pub enum Instance {
    Explicit(ExplicitOracle, IdMap),
    Graph(Graph),
}

impl Instance {
    pub fn load(args: &ProblemArgs) -> Result<Self> {
        if args.hops == 0 {
            bail!("--hops must be at least 1");
        }
        if args.problem == Problem::Explicit {
            let (oracle, ids) = load_hypergraph(&args.graph)?;
            return Ok(Instance::Explicit(oracle, ids));
        }
        let mut graph = load_graph(&args.graph, args.directed)?;
        if args.problem == Problem::Im {
            let model = WeightModel::from(args.weights);
            if model == WeightModel::File && !graph.has_probabilities() {
                bail!(
                    "--weights file needs a probability column in {}",
                    args.graph.display()
                );
            }
            graph = graph.assign_weights(model, args.seed)?;
        }
        Ok(Instance::Graph(graph))
    }

    pub fn num_nodes(&self) -> usize {
        match self {
            Instance::Explicit(o, _) => o.num_nodes(),
            Instance::Graph(g) => g.num_nodes(),
        }
    }

    pub fn ids(&self) -> &IdMap {
        match self {
            Instance::Explicit(_, ids) => ids,
            Instance::Graph(g) => g.ids(),
        }
    }

    pub fn explicit(&self) -> Option<&ExplicitOracle> {
        match self {
            Instance::Explicit(o, _) => Some(o),
            Instance::Graph(_) => None,
        }
    }

    pub fn oracle<'a>(&'a self, args: &ProblemArgs) -> Result<Box<dyn SampleOracle + 'a>> {
        Ok(match (self, args.problem) {
            (Instance::Explicit(o, _), _) => Box::new(o),
            (Instance::Graph(g), Problem::Domset) => Box::new(DomsetOracle::new(g, args.hops)?),
            (Instance::Graph(g), Problem::Im) => Box::new(RisOracle::new(g)?),
            (Instance::Graph(g), Problem::Landmark) => Box::new(LandmarkOracle::new(g)?),
            (Instance::Graph(_), Problem::Explicit) => unreachable!("explicit loads hyperedges"),
        })
    }

    pub fn originals(&self, set: &[NodeId]) -> Vec<u64> {
        set.iter().map(|&v| self.ids().original(v)).collect()
    }

    /// Resolves original ids read from `path`, one per line.
    pub fn read_node_list(&self, path: &Path) -> Result<Vec<NodeId>> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let mut nodes = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let id: u64 = line.parse().with_context(|| {
                format!(
                    "{}:{}: invalid node id '{line}'",
                    path.display(),
                    lineno + 1
                )
            })?;
            let v = self
                .ids()
                .dense(id)
                .ok_or(hypercover::Error::UnknownNode(id))
                .with_context(|| format!("{}:{}", path.display(), lineno + 1))?;
            if !nodes.contains(&v) {
                nodes.push(v);
            }
        }
        if nodes.is_empty() {
            bail!("{} lists no nodes", path.display());
        }
        Ok(nodes)
    }

    /// Reads `id cost` lines. Nodes without a line cost 1.
    pub fn read_costs(&self, path: &Path) -> Result<Vec<f64>> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let mut costs = vec![1.0; self.num_nodes()];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = || format!("{}:{}", path.display(), lineno + 1);
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [id, cost] = fields[..] else {
                bail!("{}: expected 'id cost', got '{line}'", at());
            };
            let id: u64 = id
                .parse()
                .with_context(|| format!("{}: invalid node id", at()))?;
            let cost: f64 = cost
                .parse()
                .with_context(|| format!("{}: invalid cost", at()))?;
            let v = self
                .ids()
                .dense(id)
                .ok_or(hypercover::Error::UnknownNode(id))
                .with_context(at)?;
            costs[v as usize] = cost;
        }
        Ok(costs)
    }
}
