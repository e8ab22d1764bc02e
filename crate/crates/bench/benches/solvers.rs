use chooselab_core::constructions::{make_k33_bad, make_unique3, make_unique4, K33Variant, Unique4Spec};
use chooselab_core::lists::Canonicalizer;
use chooselab_core::solver::{solve_by_partitions, solve_generic};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn solvers(c: &mut Criterion) {
    let instances = [
        ("k33", make_k33_bad(K33Variant::Overlap1)),
        ("unique3_k4", make_unique3(4, None, None).unwrap()),
        ("unique4_k4", make_unique4(&Unique4Spec::new(4, 1, 1).unwrap()).unwrap()),
    ];
    let mut group = c.benchmark_group("solve");
    for (name, (g, l)) in &instances {
        group.bench_function(format!("generic/{name}"), |b| b.iter(|| solve_generic(black_box(g), black_box(l))));
        group.bench_function(format!("partitions/{name}"), |b| {
            b.iter(|| solve_by_partitions(black_box(g), black_box(l)))
        });
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let (g, l) = make_unique4(&Unique4Spec::new(4, 2, 0).unwrap()).unwrap();
    let canon = Canonicalizer::new(&g);
    c.bench_function("canonicalize/unique4_k4", |b| b.iter(|| canon.canonicalize(black_box(&l))));
    let (g, l) = make_unique3(4, None, None).unwrap();
    let canon = Canonicalizer::new(&g);
    c.bench_function("canonicalize/unique3_k4", |b| b.iter(|| canon.canonicalize(black_box(&l))));
}

criterion_group!(benches, solvers, canonical);
criterion_main!(benches);
