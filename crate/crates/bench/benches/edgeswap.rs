use criterion::{black_box, criterion_group, criterion_main, Criterion};
use edgeswap_core::{
    canonical_form, count_graphs, k_swap_neighbors, step, triangle_histogram, ChainState,
    DegreeSequence, EnumFilter, Graph, GraphSpace,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cubic_four() -> DegreeSequence {
    DegreeSequence::new(vec![3, 3, 3, 3, 2, 2, 2, 2]).unwrap()
}

fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn enumeration(c: &mut Criterion) {
    let d = cubic_four();
    c.bench_function("count simple 3,3,3,3,2,2,2,2", |b| {
        b.iter(|| count_graphs(GraphSpace::SIMPLE, black_box(&d), &EnumFilter::none()).unwrap())
    });
    c.bench_function("triangle histogram 3,3,3,3,2,2,2,2", |b| {
        b.iter(|| triangle_histogram(black_box(&d), &EnumFilter::none()).unwrap())
    });
}

fn canonical(c: &mut Criterion) {
    let c12 = cycle(12);
    c.bench_function("canonical form C12", |b| {
        b.iter(|| canonical_form(black_box(&c12)))
    });
    let petersen = Graph::new(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )
    .unwrap();
    c.bench_function("canonical form Petersen", |b| {
        b.iter(|| canonical_form(black_box(&petersen)))
    });
}

fn chain(c: &mut Criterion) {
    let g = cycle(40);
    c.bench_function("1000 chain steps, simple C40", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut st = ChainState::new(g.clone(), GraphSpace::SIMPLE).unwrap();
        b.iter(|| {
            for _ in 0..1000 {
                step(&mut st, GraphSpace::SIMPLE, &mut rng);
            }
        })
    });
}

fn kswap(c: &mut Criterion) {
    let g = cycle(10);
    for k in [2, 3, 4] {
        c.bench_function(&format!("{k}-swap neighbours C10"), |b| {
            b.iter(|| {
                k_swap_neighbors(black_box(&g), GraphSpace::SIMPLE, k, &|_: &Graph| true).unwrap()
            })
        });
    }
}

criterion_group!(benches, enumeration, canonical, chain, kswap);
criterion_main!(benches);
