use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion, Throughput};
use hypercover::sketch::{ReducedSketch, StepwiseHeap};
use hypercover::NodeId;
use hypercover_bench::uniform_hyperedges;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn heap_updates(c: &mut Criterion) {
    let mut group = c.benchmark_group("heap");
    for n in [1_000usize, 100_000] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ops: Vec<(NodeId, bool)> = (0..100_000)
            .map(|_| (rng.gen_range(0..n) as NodeId, rng.gen_bool(0.6)))
            .collect();
        group.throughput(Throughput::Elements(ops.len() as u64));
        group.bench_with_input(
            BenchmarkId::new("increment_decrement", n),
            &ops,
            |b, ops| {
                b.iter_batched_ref(
                    || StepwiseHeap::new(n, 50),
                    |heap| {
                        for &(v, up) in ops {
                            if up || heap.degree(v) == 0 {
                                heap.increment(v);
                            } else {
                                heap.decrement(v);
                            }
                        }
                        heap.top_k_sum()
                    },
                    BatchSize::LargeInput,
                )
            },
        );
    }
    group.finish();
}

fn sketch_insert_and_select(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduced_sketch");
    let n = 10_000;
    let edges = uniform_hyperedges(n, 200_000, 8, 2);
    let elements: u64 = edges.iter().map(|e| e.len() as u64).sum();
    group.throughput(Throughput::Elements(elements));
    group.bench_function("insert", |b| {
        b.iter_batched_ref(
            || ReducedSketch::new(n, 100),
            |sketch| {
                for e in &edges {
                    sketch.add_hyperedge(e.as_slice());
                }
                sketch.live_elements()
            },
            BatchSize::LargeInput,
        )
    });
    group.bench_function("insert_then_select_100", |b| {
        b.iter_batched_ref(
            || {
                let mut sketch = ReducedSketch::new(n, 100);
                for e in &edges {
                    sketch.add_hyperedge(e.as_slice());
                }
                (sketch, vec![false; n])
            },
            |(sketch, selected)| {
                for _ in 0..100 {
                    let (u, _) = sketch.max_degree_node(selected).unwrap();
                    sketch.remove_covered_by(u, |_| {});
                    selected[u as usize] = true;
                }
                sketch.compactions()
            },
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

criterion_group!(benches, heap_updates, sketch_insert_and_select);
criterion_main!(benches);
