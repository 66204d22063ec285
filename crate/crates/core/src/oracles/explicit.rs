use std::path::Path;

use rand::Rng;

use super::{IdMap, SampleOracle, SampleRng, Scratch};
use crate::error::{Error, Result};
use crate::sketch::Hyperedge;
use crate::NodeId;

/// Uniform draws from a stored list of hyperedges. Repeated entries act as
/// multiplicities.
#[derive(Debug, Clone)]
pub struct ExplicitOracle {
    n: usize,
    edges: Vec<Hyperedge>,
}

impl ExplicitOracle {
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::invalid("explicit hypergraph has no hyperedges"));
        }
        if let Some(&v) = edges
            .iter()
            .flat_map(|e| e.iter())
            .find(|&&v| v as usize >= n)
        {
            return Err(Error::invalid(format!("node {v} outside 0..{n}")));
        }
        Ok(ExplicitOracle { n, edges })
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Exact fraction of stored hyperedges that intersect `set`.
    pub fn coverage(&self, set: &[NodeId]) -> f64 {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v as usize] = true;
        }
        let hit = self
            .edges
            .iter()
            .filter(|e| e.iter().any(|&v| member[v as usize]))
            .count();
        hit as f64 / self.edges.len() as f64
    }
}

impl SampleOracle for ExplicitOracle {
    fn num_nodes(&self) -> usize {
        self.n
    }

    fn draw(
        &self,
        _index: u64,
        rng: &mut SampleRng,
        _scratch: &mut Scratch,
        out: &mut Vec<NodeId>,
    ) {
        out.clear();
        let e = &self.edges[rng.gen_range(0..self.edges.len())];
        out.extend_from_slice(e);
    }
}

/// Replays a fixed list in order, cycling at the end. Used for scripted
/// traces where the stream must be exactly known.
#[derive(Debug, Clone)]
pub struct ReplayOracle {
    n: usize,
    edges: Vec<Hyperedge>,
}

impl ReplayOracle {
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Self {
        assert!(!edges.is_empty(), "replay needs at least one hyperedge");
        ReplayOracle { n, edges }
    }
}

impl SampleOracle for ReplayOracle {
    fn num_nodes(&self) -> usize {
        self.n
    }

    fn draw(
        &self,
        index: u64,
        _rng: &mut SampleRng,
        _scratch: &mut Scratch,
        out: &mut Vec<NodeId>,
    ) {
        out.clear();
        out.extend_from_slice(&self.edges[(index % self.edges.len() as u64) as usize]);
    }
}

/// Reads one hyperedge per line as whitespace-separated node ids. Blank lines
/// and `#` comments are skipped.
pub fn load_hypergraph(path: impl AsRef<Path>) -> Result<(ExplicitOracle, IdMap)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_hypergraph(&text, path)
}

pub(crate) fn parse_hypergraph(text: &str, origin: &Path) -> Result<(ExplicitOracle, IdMap)> {
    let mut ids = IdMap::default();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nodes = line
            .split_whitespace()
            .map(|s| {
                s.parse::<u64>()
                    .map(|id| ids.intern(id))
                    .map_err(|_| Error::Parse {
                        path: origin.to_path_buf(),
                        line: lineno + 1,
                        message: format!("invalid node id '{s}'"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        edges.push(Hyperedge::new(nodes));
    }
    let oracle = ExplicitOracle::new(ids.len(), edges)?;
    Ok((oracle, ids))
}
