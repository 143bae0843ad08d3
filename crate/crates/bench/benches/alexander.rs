use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use satknot::{
    alexander_from_diagram, corpus_knot, layer_quotient, tietze_simplify, whitehead_double,
    wirtinger,
};
use satknot_bench::iterated;

fn alexander(c: &mut Criterion) {
    let mut g = c.benchmark_group("alexander_from_diagram");
    for (name, taus) in [
        ("3_1", vec![1]),
        ("7_4", vec![0]),
        ("3_1", vec![2, 5]),
        ("4_1", vec![0, 1]),
    ] {
        let d = iterated(name, &taus);
        g.bench_with_input(BenchmarkId::new(name, d.crossing_count()), &d, |b, d| {
            b.iter(|| alexander_from_diagram(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn tietze(c: &mut Criterion) {
    let d = whitehead_double(&corpus_knot("5_2").unwrap().diagram, 1, 1).unwrap();
    let p = wirtinger(&d).unwrap();
    c.bench_function("tietze WD_1(5_2)", |b| {
        b.iter(|| tietze_simplify(black_box(&p), 10_000))
    });
}

fn layers(c: &mut Criterion) {
    let k = corpus_knot("4_1").unwrap().diagram;
    c.bench_function("layer_quotient 4_1 m=2 l=3", |b| {
        b.iter(|| layer_quotient(black_box(&k), 2, 3).unwrap())
    });
}

criterion_group!(benches, alexander, tietze, layers);
criterion_main!(benches);
