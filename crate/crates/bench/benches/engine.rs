use criterion::{black_box, criterion_group, criterion_main, Criterion};

use noetherline::dsl;
use noetherline::families::{build_family, scan, FamilyParams};
use noetherline::noether::{classify, NoetherLine};
use noetherline::rational::rat;
use noetherline::reid::enumerate_baskets;
use noetherline_bench::{LARGE_EXAMPLE, LINE_EXAMPLE};

const SCRIPT: &str = "let F = hirzebruch(3)
let D = 2*s + 6*l
let Y = proj_bundle(F, D)
let X = double_cover(Y, 3*V + pull(5*s + 15*l))
print \"K3 =\", K3(X)
print \"pg =\", pg(X)
assert K3(X) == 6
";

fn bench_build_family(c: &mut Criterion) {
    let (e, a, b) = LINE_EXAMPLE;
    let on_line = FamilyParams::new(e, a, b).unwrap();
    c.bench_function("build_family/on_line", |bencher| {
        bencher.iter(|| build_family(black_box(on_line)).unwrap())
    });

    let (e, a, b) = LARGE_EXAMPLE;
    let off_line = FamilyParams::new(e, a, b).unwrap();
    c.bench_function("build_family/off_line", |bencher| {
        bencher.iter(|| build_family(black_box(off_line)).unwrap())
    });
}

fn bench_scan(c: &mut Criterion) {
    c.bench_function("scan/126_records", |bencher| {
        bencher.iter(|| scan(black_box(3..=8), black_box(0..=6), &NoetherLine::ALL).unwrap())
    });
}

fn bench_baskets(c: &mut Criterion) {
    c.bench_function("baskets/correction_1", |bencher| {
        bencher.iter(|| enumerate_baskets(&rat(1, 1), black_box(20), 5))
    });
}

fn bench_classify(c: &mut Criterion) {
    let volume = rat(790, 3);
    c.bench_function("classify/on_line", |bencher| {
        bencher.iter(|| classify(black_box(200), &volume))
    });
}

fn bench_dsl(c: &mut Criterion) {
    c.bench_function("dsl/parse", |bencher| {
        bencher.iter(|| dsl::parse(black_box(SCRIPT)).unwrap())
    });

    let script = dsl::parse(SCRIPT).unwrap();
    c.bench_function("dsl/evaluate", |bencher| {
        bencher.iter(|| dsl::evaluate(black_box(&script)))
    });
}

criterion_group!(
    benches,
    bench_build_family,
    bench_scan,
    bench_baskets,
    bench_classify,
    bench_dsl
);
criterion_main!(benches);
