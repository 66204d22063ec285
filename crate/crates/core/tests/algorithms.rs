mod common;

use std::ops::ControlFlow;

use hypercover::algo::{
    bca, bca_fixed_guarantee, bca_full_sketch, bca_observed, brute_force_opt, coverage_of, dta,
    full_sketch_greedy, BcaConfig, DtaConfig, Event, View,
};
use hypercover::bounds::{meets_prefix_factor, UpperBound, ONE_MINUS_INV_E};
use hypercover::oracles::{ExplicitOracle, RisOracle};
use hypercover::sketch::Hyperedge;
use hypercover::{estimate_coverage, Error, NodeId, SampleStream};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

#[test]
fn bounds_sandwich_the_sample_optimum_at_every_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0..12 {
        let n = 7 + trial % 3;
        let k = 1 + trial % 3;
        let oracle = ExplicitOracle::new(n, random_edges(&mut rng, n, 15, 4)).unwrap();
        for bound in UpperBound::ALL {
            let mut drawn: Vec<Vec<NodeId>> = Vec::new();
            let mut checked = 0;
            let mut observer = |event: Event<'_>, view: &View<'_>| {
                if let Event::Sampled { edge, .. } = event {
                    drawn.push(edge.to_vec());
                }
                let (opt, _) = brute_force_opt(&drawn, n, k).unwrap();
                let req = view.f_requirement() as f64;
                let topk = view.f_topk() as f64;
                let dual = view.f_df2d();
                let tol = 1e-9;
                assert!(opt as f64 <= topk + tol, "opt {opt} > topk {topk}");
                assert!(opt as f64 <= dual + tol, "opt {opt} > dual {dual}");
                assert!(topk <= req + tol && dual <= req + tol);
                assert!(opt as f64 <= view.bound + tol && view.bound <= req + tol);
                checked += 1;
                ControlFlow::Continue(())
            };
            let mut stream = SampleStream::new(&oracle, trial as u64);
            let cfg = BcaConfig::new(k, 12).with_bound(bound);
            bca_observed(&mut stream, &cfg, &mut observer)
                .unwrap()
                .unwrap();
            assert!(checked > k);
        }
    }
}

#[test]
fn reduced_sketch_reproduces_the_reference_run() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..20u64 {
        let n = rng.gen_range(10..40);
        let k = rng.gen_range(1..6);
        let z = rng.gen_range(5..200);
        let oracle = ExplicitOracle::new(n, random_edges(&mut rng, n, 60, 6)).unwrap();
        for bound in UpperBound::ALL {
            let cfg = BcaConfig::new(k, z).with_bound(bound);
            let reduced = bca(&mut SampleStream::new(&oracle, trial), &cfg).unwrap();
            let full = bca_full_sketch(&mut SampleStream::new(&oracle, trial), &cfg).unwrap();
            assert_eq!(reduced.solution, full.solution, "trial {trial} {bound}");
            assert_eq!(reduced.covered, full.covered);
            assert_eq!(reduced.samples, full.samples);
            assert!(reduced.peak_sketch_elements <= full.peak_sketch_elements);
        }
    }
}

#[test]
fn every_prefix_meets_the_greedy_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..30u64 {
        let n = rng.gen_range(6..30);
        let k = rng.gen_range(1..n.min(8));
        let z = rng.gen_range(1..300);
        let oracle = ExplicitOracle::new(n, random_edges(&mut rng, n, 40, 5)).unwrap();
        for bound in UpperBound::ALL {
            let mut steps = 0;
            let mut observer = |event: Event<'_>, view: &View<'_>| {
                if let Event::Selected { .. } = event {
                    steps += 1;
                    assert!(
                        meets_prefix_factor(view.state.covered(), z, k, steps),
                        "trial {trial} {bound}: {} after {steps} of {k}, z={z}",
                        view.state.covered()
                    );
                }
                ControlFlow::Continue(())
            };
            let cfg = BcaConfig::new(k, z).with_bound(bound);
            let run = bca_observed(&mut SampleStream::new(&oracle, trial), &cfg, &mut observer)
                .unwrap()
                .unwrap();
            assert_eq!(steps, k);
            assert_eq!(run.solution.len(), k);
        }
    }
}

#[test]
fn fixed_guarantee_accepts_all_but_one_node() {
    let edges = vec![
        Hyperedge::from([0, 1]),
        Hyperedge::from([2]),
        Hyperedge::from([3]),
        Hyperedge::from([1, 3]),
    ];
    let oracle = ExplicitOracle::new(4, edges).unwrap();
    let run = bca_fixed_guarantee(
        &mut SampleStream::new(&oracle, 1),
        3,
        0.3,
        0.1,
        UpperBound::TopK,
        10_000_000,
    )
    .unwrap();
    let mut sol = run.solution.clone();
    sol.sort_unstable();
    sol.dedup();
    assert_eq!(sol.len(), 3);
    assert!(oracle.coverage(&run.solution) >= 0.75);
    let err = bca_fixed_guarantee(
        &mut SampleStream::new(&oracle, 1),
        4,
        0.3,
        0.1,
        UpperBound::TopK,
        10,
    );
    assert!(err.is_err());
}

#[test]
fn greedy_is_within_the_classic_factor_of_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..60 {
        let n = rng.gen_range(5..14);
        let k = rng.gen_range(1..5.min(n));
        let m = rng.gen_range(5..60);
        let edges = random_edges(&mut rng, n, m, 5);
        let (opt, best) = brute_force_opt(&edges, n, k).unwrap();
        assert_eq!(coverage_of(&edges, &best), opt);
        let (chosen, covered) = full_sketch_greedy(&edges, n, k);
        assert_eq!(chosen.len(), k);
        assert_eq!(coverage_of(&edges, &chosen), covered);
        assert!(
            covered as f64 >= ONE_MINUS_INV_E * opt as f64,
            "{covered} vs opt {opt}"
        );
        assert!(covered <= opt);
    }
}

#[test]
fn dta_certificate_brackets_the_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..4u64 {
        let n = 16;
        let k = 3;
        let oracle = ExplicitOracle::new(n, random_edges(&mut rng, n, 30, 3)).unwrap();
        let (opt, _) = brute_force_opt(oracle.edges(), n, k).unwrap();
        let opt = opt as f64 / oracle.edges().len() as f64;
        let cfg = DtaConfig::new(k, 0.3, 0.05);
        let run = dta(&mut SampleStream::new(&oracle, trial), &cfg).unwrap();
        let truth = oracle.coverage(&run.solution);
        assert!(truth >= (ONE_MINUS_INV_E - 0.3) * opt - 1e-12);
        if let Some(cert) = run.certificate {
            assert!(
                cert.lb <= truth + 1e-12 && opt <= cert.ub + 1e-12,
                "{cert:?} {truth} {opt}"
            );
            assert!(cert.ratio() >= ONE_MINUS_INV_E - 0.3 - 1e-12);
        }
        assert!(!run.rounds.is_empty());
    }
}

#[test]
fn dta_rejects_out_of_range_epsilon() {
    let oracle = ExplicitOracle::new(3, vec![Hyperedge::from([0])]).unwrap();
    let err = dta(
        &mut SampleStream::new(&oracle, 0),
        &DtaConfig::new(1, 0.9, 0.1),
    )
    .unwrap_err();
    assert!(matches!(err, Error::InvalidParameter(_)), "{err}");
}

#[test]
fn evaluation_intervals_cover_the_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let n = 20;
    let oracle = ExplicitOracle::new(n, random_edges(&mut rng, n, 50, 3)).unwrap();
    let set: Vec<NodeId> = vec![0, 5, 9];
    let truth = oracle.coverage(&set);
    let delta = 0.1;
    let trials = 500;
    let mut misses = 0;
    for seed in 0..trials {
        let est = estimate_coverage(
            &mut SampleStream::new(&oracle, seed),
            &set,
            0.1,
            delta,
            1 << 20,
        )
        .unwrap();
        assert!(est.lb <= est.mean + 1e-12 && est.mean <= est.ub + 1e-12);
        if !(est.lb <= truth && truth <= est.ub) {
            misses += 1;
        }
    }
    assert!(
        misses as f64 <= delta * trials as f64,
        "{misses} misses in {trials}"
    );
}

#[test]
fn evaluation_on_a_cascade_instance() {
    let edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 3), (3, 5)];
    let probs = [0.5, 0.3, 0.8, 0.6, 0.2, 0.9];
    let g = graph(6, true, &edges, Some(&probs));
    let oracle = RisOracle::new(&g).unwrap();
    for seeds in [&[0][..], &[1, 4]] {
        let truth = exact_influence_fraction(&g, seeds);
        let est = estimate_coverage(
            &mut SampleStream::new(&oracle, 5),
            seeds,
            0.05,
            0.01,
            1 << 22,
        )
        .unwrap();
        assert!(est.precise);
        assert!(est.lb <= truth && truth <= est.ub, "{est:?} vs {truth}");
    }
}

#[test]
fn evaluation_rejects_bad_input() {
    let oracle = ExplicitOracle::new(3, vec![Hyperedge::from([0])]).unwrap();
    let mut stream = SampleStream::new(&oracle, 0);
    assert!(estimate_coverage(&mut stream, &[], 0.1, 0.1, 100).is_err());
    assert!(matches!(
        estimate_coverage(&mut stream, &[7], 0.1, 0.1, 100),
        Err(Error::UnknownNode(7))
    ));
    let capped = estimate_coverage(&mut stream, &[1], 0.01, 0.1, 50).unwrap();
    assert!(!capped.precise && capped.samples <= 50);
}
