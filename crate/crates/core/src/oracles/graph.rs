use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::NodeId;

/// Dense ids `0..n` and the original ids they came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    original: Vec<u64>,
    dense: HashMap<u64, NodeId>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        let mut map = IdMap::default();
        for v in 0..n as u64 {
            map.intern(v);
        }
        map
    }

    pub fn intern(&mut self, id: u64) -> NodeId {
        if let Some(&v) = self.dense.get(&id) {
            return v;
        }
        let v = self.original.len() as NodeId;
        self.original.push(id);
        self.dense.insert(id, v);
        v
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }

    pub fn original(&self, v: NodeId) -> u64 {
        self.original[v as usize]
    }

    pub fn dense(&self, id: u64) -> Option<NodeId> {
        self.dense.get(&id).copied()
    }
}

/// Edge-probability models for the independent cascade oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightModel {
    /// `p(u, v) = 1 / in-degree(v)`.
    Wc,
    /// Uniform over `{0.1, 0.01, 0.001}`.
    Tri,
    /// Keep the probabilities read from the edge file.
    File,
}

impl FromStr for WeightModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wc" => Ok(WeightModel::Wc),
            "tri" => Ok(WeightModel::Tri),
            "file" => Ok(WeightModel::File),
            other => Err(Error::invalid(format!("unknown weight model '{other}'"))),
        }
    }
}

impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightModel::Wc => "wc",
            WeightModel::Tri => "tri",
            WeightModel::File => "file",
        })
    }
}

pub const TRI_PROBABILITIES: [f64; 3] = [0.1, 0.01, 0.001];

/// Compressed adjacency in both directions. Undirected graphs store each
/// edge as two arcs.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    directed: bool,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    /// Aligned with `in_sources`.
    in_prob: Option<Vec<f64>>,
    ids: IdMap,
}

impl Graph {
    /// Builds a graph on dense ids. Parallel arcs collapse to the first one.
    pub fn from_edges(
        n: usize,
        directed: bool,
        edges: &[(NodeId, NodeId)],
        probs: Option<&[f64]>,
        ids: IdMap,
    ) -> Result<Self> {
        if let Some(p) = probs {
            if p.len() != edges.len() {
                return Err(Error::invalid("one probability per edge is required"));
            }
        }
        let mut arcs: Vec<(NodeId, NodeId, f64)> = Vec::with_capacity(edges.len() * 2);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u as usize >= n || v as usize >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            let p = probs.map_or(1.0, |p| p[i]);
            arcs.push((u, v, p));
            if !directed && u != v {
                arcs.push((v, u, p));
            }
        }
        // Stable sort keeps the first occurrence of a parallel arc.
        arcs.sort_by_key(|&(u, v, _)| (u, v));
        arcs.dedup_by_key(|a| (a.0, a.1));

        let mut out_offsets = vec![0usize; n + 1];
        for &(u, _, _) in &arcs {
            out_offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets = arcs.iter().map(|a| a.1).collect();

        let mut in_offsets = vec![0usize; n + 1];
        for &(_, v, _) in &arcs {
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut fill = in_offsets.clone();
        let mut in_sources = vec![0; arcs.len()];
        let mut in_prob = vec![0.0; arcs.len()];
        for &(u, v, p) in &arcs {
            let slot = fill[v as usize];
            in_sources[slot] = u;
            in_prob[slot] = p;
            fill[v as usize] += 1;
        }

        Ok(Graph {
            n,
            directed,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            in_prob: probs.map(|_| in_prob),
            ids,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.out_targets.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn ids(&self) -> &IdMap {
        &self.ids
    }

    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.out_targets[self.out_offsets[v as usize]..self.out_offsets[v as usize + 1]]
    }

    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.in_sources[self.in_offsets[v as usize]..self.in_offsets[v as usize + 1]]
    }

    /// Probabilities of the arcs into `v`, aligned with [`Self::in_neighbors`].
    pub fn in_probabilities(&self, v: NodeId) -> Option<&[f64]> {
        self.in_prob
            .as_ref()
            .map(|p| &p[self.in_offsets[v as usize]..self.in_offsets[v as usize + 1]])
    }

    pub fn has_probabilities(&self) -> bool {
        self.in_prob.is_some()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_offsets[v as usize + 1] - self.in_offsets[v as usize]
    }

    /// All arcs `(u, v, p)`; `p` is 1 without probabilities.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.n as NodeId).flat_map(move |v| {
            let probs = self.in_probabilities(v);
            self.in_neighbors(v)
                .iter()
                .enumerate()
                .map(move |(i, &u)| (u, v, probs.map_or(1.0, |p| p[i])))
        })
    }

    /// Replaces arc probabilities according to `model`.
    pub fn assign_weights(mut self, model: WeightModel, seed: u64) -> Result<Self> {
        match model {
            WeightModel::File => {
                if self.in_prob.is_none() {
                    return Err(Error::MissingProbabilities);
                }
            }
            WeightModel::Wc => {
                let mut probs = vec![0.0; self.in_sources.len()];
                for v in 0..self.n {
                    let (lo, hi) = (self.in_offsets[v], self.in_offsets[v + 1]);
                    let p = 1.0 / (hi - lo).max(1) as f64;
                    probs[lo..hi].iter_mut().for_each(|x| *x = p);
                }
                self.in_prob = Some(probs);
            }
            WeightModel::Tri => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let probs = (0..self.in_sources.len())
                    .map(|_| *TRI_PROBABILITIES.choose(&mut rng).expect("nonempty"))
                    .collect();
                self.in_prob = Some(probs);
            }
        }
        Ok(self)
    }
}

/// Parses an edge list: `u v` or `u v p` per line, `#` comments, arbitrary
/// nonnegative ids.
pub fn parse_graph(text: &str, directed: bool, origin: &Path) -> Result<Graph> {
    let mut ids = IdMap::default();
    let mut edges = Vec::new();
    let mut probs = Vec::new();
    let mut with_p: Option<bool> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: lineno + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(err(format!("expected 'u v' or 'u v p', got '{line}'")));
        }
        let parse_id = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| err(format!("invalid node id '{s}'")))
        };
        let u = ids.intern(parse_id(fields[0])?);
        let v = ids.intern(parse_id(fields[1])?);
        let has_p = fields.len() == 3;
        if *with_p.get_or_insert(has_p) != has_p {
            return Err(err("mixed lines with and without probabilities".into()));
        }
        if has_p {
            let p: f64 = fields[2]
                .parse()
                .map_err(|_| err(format!("invalid probability '{}'", fields[2])))?;
            if !(p > 0.0 && p <= 1.0) {
                return Err(err(format!("probability {p} outside (0, 1]")));
            }
            probs.push(p);
        }
        edges.push((u, v));
    }
    let n = ids.len();
    let probs = with_p.unwrap_or(false).then_some(probs.as_slice());
    Graph::from_edges(n, directed, &edges, probs, ids)
}

pub fn load_graph(path: impl AsRef<Path>, directed: bool) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text, directed, path)
}
