use std::time::Instant;

use anyhow::{bail, Result};
use hypercover::algo::{
    bca, bca_full_sketch, brute_force_budgeted, brute_force_opt, budgeted_dta, dta,
    full_sketch_greedy, BcaConfig, DtaConfig,
};
use hypercover::{BudgetSpec, GuaranteeParams, NodeId, RunResult, SampleStream, UpperBound};

use crate::args::{Algo, Problem, RunArgs};
use crate::instance::Instance;
use crate::report::{Certificate, FullSketch, Round, RunConfigEcho, RunRecord, RUN_SCHEMA};

/// Rejects flag combinations that cannot work, before any input is read.
pub fn validate(args: &RunArgs) -> Result<()> {
    let budgeted =
        args.algo == Algo::BudgetedDta || (args.algo == Algo::Exact && args.budget.is_some());
    if !budgeted && args.k.is_none() {
        bail!("--k is required for --algo {}", algo_name(args.algo));
    }
    if args.k == Some(0) {
        bail!("--k must be at least 1");
    }
    if args.algo == Algo::BudgetedDta && (args.costs.is_none() || args.budget.is_none()) {
        bail!("--algo budgeted-dta needs --costs and --budget");
    }
    if args.algo == Algo::Exact && args.costs.is_some() != args.budget.is_some() {
        bail!("--costs and --budget go together");
    }
    if !matches!(args.algo, Algo::BudgetedDta | Algo::Exact)
        && (args.costs.is_some() || args.budget.is_some())
    {
        bail!("--costs and --budget only apply to budgeted-dta and exact");
    }
    if args.algo == Algo::Exact && args.problem.problem != Problem::Explicit {
        bail!("--algo exact needs the explicit problem");
    }
    if args.z.is_some() && !matches!(args.algo, Algo::Bca | Algo::GreedyFull) {
        bail!("--z only applies to bca and greedy-full");
    }
    if args.z == Some(0) {
        bail!("--z must be at least 1");
    }
    if args.retain_full_sketch && args.algo != Algo::Bca {
        bail!("--retain-full-sketch only applies to bca");
    }
    if !(args.eps > 0.0 && args.eps < 1.0) {
        bail!("--eps must lie in (0, 1), got {}", args.eps);
    }
    if let Some(d) = args.delta {
        if !(d > 0.0 && d < 1.0) {
            bail!("--delta must lie in (0, 1), got {d}");
        }
    }
    if args.max_samples == 0 {
        bail!("--max-samples must be positive");
    }
    if args.problem.workers == Some(0) {
        bail!("--workers must be positive");
    }
    Ok(())
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Dta => "dta",
        Algo::Bca => "bca",
        Algo::GreedyFull => "greedy-full",
        Algo::Exact => "exact",
        Algo::BudgetedDta => "budgeted-dta",
    }
}

pub fn run(args: &RunArgs) -> Result<()> {
    validate(args)?;
    let instance = Instance::load(&args.problem)?;
    let n = instance.num_nodes();
    let delta = args.delta.unwrap_or(1.0 / n as f64);
    let workers = args.problem.worker_count();
    let bound = UpperBound::from(args.bound);
    let oracle = instance.oracle(&args.problem)?;
    let stream = || SampleStream::new(oracle.as_ref(), args.problem.seed).with_workers(workers);
    let threshold = |k: usize| -> Result<u64> {
        Ok(match args.z {
            Some(z) => z,
            None => GuaranteeParams::derive(n, k, args.eps, delta)?.z_star,
        })
    };

    let mut cost = None;
    let mut full_sketch = None;
    let result: RunResult = match args.algo {
        Algo::Dta => {
            let cfg = DtaConfig::new(args.k.unwrap(), args.eps, delta)
                .with_bound(bound)
                .with_max_samples(args.max_samples);
            dta(&mut stream(), &cfg)?
        }
        Algo::Bca | Algo::GreedyFull => {
            let k = args.k.unwrap();
            let cfg = BcaConfig::new(k, threshold(k)?)
                .with_bound(bound)
                .with_max_samples(args.max_samples);
            if args.algo == Algo::GreedyFull {
                bca_full_sketch(&mut stream(), &cfg)?
            } else {
                let reduced = bca(&mut stream(), &cfg)?;
                if args.retain_full_sketch {
                    full_sketch = Some(compare_full(&instance, &reduced, &cfg, stream)?);
                }
                reduced
            }
        }
        Algo::Exact => {
            let oracle = instance.explicit().expect("validated");
            let edges = oracle.edges();
            let started = Instant::now();
            let (covered, solution) = match (&args.costs, args.budget) {
                (Some(path), Some(budget)) => {
                    let costs = instance.read_costs(path)?;
                    let spec = BudgetSpec::new(costs.clone(), budget)?;
                    let (covered, solution) = brute_force_budgeted(edges, &costs, budget)?;
                    cost = Some(spec.cost_of(&solution));
                    (covered, solution)
                }
                _ => brute_force_opt(edges, n, args.k.unwrap())?,
            };
            RunResult {
                solution,
                covered,
                samples: edges.len() as u64,
                total_samples: 0,
                z_used: 0,
                peak_sketch_elements: 0,
                peak_max_degree: 0,
                wall_time: started.elapsed(),
                certificate: None,
                rounds: Vec::new(),
            }
        }
        Algo::BudgetedDta => {
            let costs = instance.read_costs(args.costs.as_ref().expect("validated"))?;
            let spec = BudgetSpec::new(costs, args.budget.expect("validated"))?;
            let result = budgeted_dta(&mut stream(), &spec, args.eps, delta, args.max_samples)?;
            cost = Some(spec.cost_of(&result.solution));
            result
        }
    };

    let record = RunRecord {
        schema: RUN_SCHEMA,
        problem: args.problem.problem,
        algo: args.algo,
        n,
        solution: instance.originals(&result.solution),
        covered: result.covered,
        samples: result.samples,
        total_samples: result.total_samples,
        coverage: result.coverage_fraction(),
        z_used: (args.algo != Algo::Exact).then_some(result.z_used),
        peak_sketch_elements: result.peak_sketch_elements,
        peak_sketch_bytes: result.peak_sketch_bytes(),
        wall_time_s: result.wall_time.as_secs_f64(),
        certificate: result.certificate.map(Certificate::from),
        rounds: result.rounds.iter().map(Round::from).collect(),
        cost,
        full_sketch,
        config: RunConfigEcho {
            args,
            effective_delta: delta,
            effective_workers: workers,
        },
    };
    crate::emit(&record, args.out.as_deref())
}

/// Reruns the threshold algorithm on the same stream while retaining every
/// hyperedge, then runs greedy over the hyperedges the reduced run consumed.
fn compare_full<'a>(
    instance: &Instance,
    reduced: &RunResult,
    cfg: &BcaConfig,
    stream: impl Fn() -> SampleStream<'a>,
) -> Result<FullSketch> {
    let full = bca_full_sketch(&mut stream(), cfg)?;
    let mut replay = stream();
    let edges: Vec<Vec<NodeId>> = (0..reduced.samples)
        .map(|_| replay.next_edge().to_vec())
        .collect();
    let (greedy, greedy_covered) = full_sketch_greedy(&edges, instance.num_nodes(), cfg.k);
    Ok(FullSketch {
        peak_sketch_elements: full.peak_sketch_elements,
        peak_sketch_bytes: full.peak_sketch_bytes(),
        solution: instance.originals(&full.solution),
        covered: full.covered,
        greedy_solution: instance.originals(&greedy),
        greedy_covered,
        reduction_factor: full.peak_sketch_elements as f64
            / reduced.peak_sketch_elements.max(1) as f64,
    })
}
