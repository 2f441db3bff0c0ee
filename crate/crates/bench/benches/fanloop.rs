use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fanloop::haar::{self, LoopFunction};
use fanloop::products::cayley_dickson_basis_loop;
use fanloop::{census, classify, laws, Rational};

fn covering(c: &mut Criterion) {
    for k in [2, 3, 4] {
        let g = cayley_dickson_basis_loop(k).unwrap();
        let n = g.order();
        let f = LoopFunction::new((0..n).map(|i| Rational::new((i % 5) as i64, 3)).collect()).unwrap();
        let phi = LoopFunction::indicator(&fanloop::ElementSet::from_indices(n, [0, 3, n / 2 + 1]));
        c.bench_function(&format!("covering cd{k}"), |b| b.iter(|| haar::covering_number(&g, black_box(&f), black_box(&phi)).unwrap()));
    }
}

fn analysis(c: &mut Criterion) {
    let g = cayley_dickson_basis_loop(4).unwrap();
    c.bench_function("classify cd4", |b| b.iter(|| classify(black_box(&g))));
    let o = cayley_dickson_basis_loop(3).unwrap();
    c.bench_function("laws cd3", |b| b.iter(|| laws::check_all(black_box(&o))));
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("census count order 5", |b| b.iter(|| census::count_reduced(black_box(5)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = covering, analysis, enumeration
}
criterion_main!(benches);
