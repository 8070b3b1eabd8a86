use criterion::{criterion_group, criterion_main, Criterion};
use paraco_core::catalog::entry;
use paraco_core::curvature::curvature_of;
use paraco_core::parser::parse_field;
use paraco_core::report::{run_analyze, AnalyzeOptions};
use paraco_core::structure::{analyze_structure, Structure};
use paraco_core::symbolic::Context;
use std::hint::black_box;

fn scalar_ring(c: &mut Criterion) {
    let ctx = Context::coordinates(&["x", "y"]);
    let a = parse_field("(3*x^2 - 2*x*y + y^2 + 1)/(2 + x^2 + y^2)", &ctx).unwrap();
    let b = parse_field("(x - 3*y^2 + 2*x*y)/(1 + x^2)", &ctx).unwrap();
    c.bench_function("rational_function_product_second_partial", |bn| {
        bn.iter(|| black_box(&a * &b).partial(0).partial(1))
    });
    c.bench_function("rational_function_sum", |bn| bn.iter(|| black_box(&a + &b)));
}

fn pipeline(c: &mut Criterion) {
    let def = entry("example_e").unwrap().definition;
    let s = Structure::from_definition(&def).unwrap();
    c.bench_function("example_e_structure_analysis", |bn| bn.iter(|| analyze_structure(black_box(&s)).unwrap()));
    c.bench_function("example_e_curvature", |bn| bn.iter(|| curvature_of(black_box(&s))));
    let mut group = c.benchmark_group("full_report");
    group.sample_size(10);
    for name in ["example_e", "product5"] {
        let def = entry(name).unwrap().definition;
        group.bench_function(name, |bn| bn.iter(|| run_analyze(black_box(&def), &AnalyzeOptions::default())));
    }
    group.finish();
}

criterion_group!(benches, scalar_ring, pipeline);
criterion_main!(benches);
