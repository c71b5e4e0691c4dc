use criterion::{black_box, criterion_group, criterion_main, Criterion};
use invcensus_core::census::{generating_series, CensusProblem};
use invcensus_core::characters::CharacterEngine;
use invcensus_core::molien::molien_series;
use invcensus_core::Limits;

fn bench_char_table(c: &mut Criterion) {
    c.bench_function("char_table_12_cold", |b| {
        b.iter(|| {
            let engine = CharacterEngine::new(Limits::default());
            black_box(engine.char_table(black_box(12)).unwrap());
        })
    });
}

fn bench_census(c: &mut Criterion) {
    let problem = CensusProblem::new(2, 2).unwrap();
    c.bench_function("census_2x2_degree_11_cold", |b| {
        b.iter(|| {
            let engine = CharacterEngine::new(Limits::default());
            black_box(generating_series(&engine, &problem, 11).unwrap());
        })
    });
    let warm = CharacterEngine::new(Limits::default());
    generating_series(&warm, &problem, 12).unwrap();
    c.bench_function("census_2x2_degree_12_warm", |b| {
        b.iter(|| black_box(generating_series(&warm, &problem, 12).unwrap()))
    });
}

fn bench_molien(c: &mut Criterion) {
    let problem = CensusProblem::new(2, 2).unwrap();
    c.bench_function("molien_2x2_degree_8", |b| {
        b.iter(|| black_box(molien_series(&problem, black_box(8)).unwrap()))
    });
}

criterion_group!(benches, bench_char_table, bench_census, bench_molien);
criterion_main!(benches);
