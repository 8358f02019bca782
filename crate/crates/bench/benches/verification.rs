use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use skillver::datasets::GDP_GROWTH_CSV;
use skillver::scores::score_all;
use skillver::simulate::{run_trials, Generator, TrialConfig};
use skillver::{directionalize, parse_series, ContingencyTable, DirectionalRule};
use std::hint::black_box;

fn bench_scoring(c: &mut Criterion) {
    let gdp = ContingencyTable::new(34, 4, 4, 36).unwrap();
    let rare = ContingencyTable::new(1, 2, 0, 397).unwrap();

    c.bench_function("score_all/gdp_table", |b| {
        b.iter(|| score_all(black_box(&gdp)));
    });
    c.bench_function("score_all/rare_event_table", |b| {
        b.iter(|| score_all(black_box(&rare)));
    });
    c.bench_function("decompose", |b| {
        b.iter(|| black_box(&gdp).decompose());
    });
}

fn bench_simulation(c: &mut Criterion) {
    let bernoulli = TrialConfig {
        trials: 100,
        generator: Generator::Bernoulli {
            periods: 400,
            p_forecast: 0.5,
            p_observed: 0.5,
        },
        seed: 7,
    };
    let uniform = TrialConfig {
        trials: 100,
        generator: Generator::CellUniform { max_count: 1000 },
        seed: 7,
    };
    c.bench_function("run_trials/bernoulli_100x400", |b| {
        b.iter(|| run_trials(black_box(&bernoulli)).unwrap());
    });
    c.bench_function("run_trials/cell_uniform_100", |b| {
        b.iter(|| run_trials(black_box(&uniform)).unwrap());
    });
}

fn bench_ingestion(c: &mut Criterion) {
    c.bench_function("ingest/parse_and_directionalize_gdp", |b| {
        b.iter_batched(
            || GDP_GROWTH_CSV,
            |csv| {
                let records = parse_series(csv).unwrap();
                directionalize(&records, DirectionalRule::default()).unwrap()
            },
            BatchSize::SmallInput,
        );
    });
}

criterion_group!(benches, bench_scoring, bench_simulation, bench_ingestion);
criterion_main!(benches);
