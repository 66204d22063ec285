use std::time::Instant;

use anyhow::{bail, Result};
use hypercover::{estimate_coverage, SampleStream};

use crate::args::{EvalArgs, Problem};
use crate::instance::Instance;
use crate::report::{Estimate, EvalConfigEcho, EvalRecord, Scaled, EVAL_SCHEMA};

pub fn eval(args: &EvalArgs) -> Result<()> {
    if !(args.eps > 0.0 && args.eps < 1.0) {
        bail!("--eps must lie in (0, 1), got {}", args.eps);
    }
    if let Some(d) = args.delta {
        if !(d > 0.0 && d < 1.0) {
            bail!("--delta must lie in (0, 1), got {d}");
        }
    }
    if args.problem.workers == Some(0) {
        bail!("--workers must be positive");
    }
    let instance = Instance::load(&args.problem)?;
    let n = instance.num_nodes();
    let set = instance.read_node_list(&args.solution)?;
    let delta = args.delta.unwrap_or(1.0 / n as f64);
    let workers = args.problem.worker_count();
    let oracle = instance.oracle(&args.problem)?;
    let mut stream = SampleStream::new(oracle.as_ref(), args.problem.seed).with_workers(workers);

    let started = Instant::now();
    let estimate = estimate_coverage(&mut stream, &set, args.eps, delta, args.max_samples)?;
    let wall_time = started.elapsed();

    let (unit, factor) = match args.problem.problem {
        Problem::Explicit => ("fraction of hyperedge weight", 1.0),
        Problem::Domset => ("nodes within the hop radius", n as f64),
        Problem::Im => ("expected activated nodes", n as f64),
        Problem::Landmark => ("fraction of ordered node pairs", 1.0),
    };
    let record = EvalRecord {
        schema: EVAL_SCHEMA,
        problem: args.problem.problem,
        n,
        solution: instance.originals(&set),
        estimate: Estimate::from(&estimate),
        scaled: Scaled {
            unit,
            factor,
            mean: estimate.mean * factor,
            lb: estimate.lb * factor,
            ub: estimate.ub * factor,
        },
        exact: instance.explicit().map(|o| o.coverage(&set)),
        wall_time_s: wall_time.as_secs_f64(),
        config: EvalConfigEcho {
            args,
            effective_delta: delta,
            effective_workers: workers,
        },
    };
    crate::emit(&record, args.out.as_deref())
}
