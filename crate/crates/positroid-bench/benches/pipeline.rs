use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use positroid::{
    synthesize, verify_diagram, BoundedAffinePermutation, PartitionFunction, TwistSide, WeightSampler,
};
use positroid_bench::{graph, matrix, model};

fn measurement(c: &mut Criterion) {
    for name in ["square4", "schubert36", "d4"] {
        let m = model(name);
        let z = WeightSampler::new(1).weights(m.graph.num_edges());
        c.bench_function(&format!("measure/{name}"), |b| b.iter(|| m.measure(black_box(&z))));
        let p = m.measure(&z);
        let mx = positroid::linalg::matrix_from_pluecker(&p).unwrap();
        c.bench_function(&format!("twist/{name}"), |b| {
            b.iter(|| black_box(&mx).twist(TwistSide::Right).unwrap())
        });
    }
}

fn matchings(c: &mut Criterion) {
    for name in ["schubert36", "d4"] {
        let g = graph(name);
        c.bench_function(&format!("partition/{name}"), |b| {
            b.iter(|| PartitionFunction::new(black_box(&g)).unwrap())
        });
    }
}

fn pipeline(c: &mut Criterion) {
    let m = model("square4");
    c.bench_function("verify/square4", |b| b.iter(|| verify_diagram(black_box(&m), 7, 1)));
    let ex = matrix("ex35");
    c.bench_function("mu/ex35", |b| b.iter(|| black_box(&ex).mu().unwrap()));
    let pi = BoundedAffinePermutation::parse("3,5,6,7,8,10").unwrap();
    c.bench_function("synthesize/n6", |b| b.iter(|| synthesize(black_box(&pi)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = measurement, matchings, pipeline
}
criterion_main!(benches);
