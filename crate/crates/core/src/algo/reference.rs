use std::time::Instant;

use super::bca::BcaConfig;
use super::RunResult;
use crate::bounds::{f_df2d, f_requirement, f_topk, UpperBound};
use crate::error::{Error, PartialRun, Result};
use crate::oracles::SampleStream;
use crate::NodeId;

/// Straightforward fixed-threshold run that keeps every drawn hyperedge.
///
/// Degrees over the uncovered hyperedges and per-node covered counts are
/// re-derived from the full list after every selection, and every bound is
/// evaluated exactly before every draw. It consumes the stream exactly like
/// [`super::bca`] and is meant as a slow cross-check of it.
/// `peak_sketch_elements` reports the size of the full list.
pub fn bca_full_sketch(stream: &mut SampleStream<'_>, cfg: &BcaConfig) -> Result<RunResult> {
    let n = stream.num_nodes();
    if cfg.k == 0 || cfg.z == 0 {
        return Err(Error::invalid("k and z must be at least 1"));
    }
    if cfg.k > n {
        return Err(Error::BudgetExceedsNodes);
    }
    let started = Instant::now();
    let drawn_before = stream.drawn();
    let z = cfg.z as f64;

    let mut full: Vec<Vec<NodeId>> = Vec::new();
    let mut samples = 0u64;
    let mut elements = 0u64;
    let mut in_s = vec![false; n];
    let mut selected = Vec::new();
    let mut deg = vec![0u32; n];
    let mut covered_count = vec![0u32; n];
    let mut covered = 0u64;
    let mut peak_max_degree = 0;

    let bound = |deg: &[u32], covered_count: &[u32], covered: u64| -> f64 {
        let max = deg.iter().copied().max().unwrap_or(0);
        match cfg.bound {
            UpperBound::Requirement => f_requirement(covered, cfg.k, max) as f64,
            UpperBound::TopK => {
                let mut sorted = deg.to_vec();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let top: u64 = sorted.iter().take(cfg.k).map(|&d| d as u64).sum();
                f_topk(covered, top) as f64
            }
            UpperBound::Df2d => f_df2d(covered, cfg.k, deg, covered_count),
        }
    };

    for _ in 0..cfg.k {
        while bound(&deg, &covered_count, covered) < z {
            if samples >= cfg.max_samples {
                return Err(Error::SampleCap(Box::new(PartialRun {
                    selected: selected.clone(),
                    covered,
                    samples,
                })));
            }
            let edge = stream.next_edge().to_vec();
            samples += 1;
            if edge.iter().any(|&v| in_s[v as usize]) {
                covered += 1;
                for &v in &edge {
                    covered_count[v as usize] += 1;
                }
            } else {
                for &v in &edge {
                    deg[v as usize] += 1;
                }
            }
            peak_max_degree = peak_max_degree.max(deg.iter().copied().max().unwrap_or(0));
            if !edge.is_empty() {
                elements += edge.len() as u64;
                full.push(edge);
            }
        }

        let u = (0..n)
            .filter(|&v| !in_s[v])
            .max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a)))
            .ok_or(Error::BudgetExceedsNodes)?;
        in_s[u] = true;
        selected.push(u as NodeId);

        deg.iter_mut().for_each(|d| *d = 0);
        covered_count.iter_mut().for_each(|c| *c = 0);
        covered = 0;
        for edge in &full {
            if edge.iter().any(|&v| in_s[v as usize]) {
                covered += 1;
                for &v in edge {
                    covered_count[v as usize] += 1;
                }
            } else {
                for &v in edge {
                    deg[v as usize] += 1;
                }
            }
        }
    }

    Ok(RunResult {
        solution: selected,
        covered,
        samples,
        total_samples: stream.drawn() - drawn_before,
        z_used: cfg.z,
        peak_sketch_elements: elements,
        peak_max_degree,
        wall_time: started.elapsed(),
        certificate: None,
        rounds: Vec::new(),
    })
}
