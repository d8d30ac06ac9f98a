use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trinomial_lnd::classify::{class_report, induced_weight_box, oracle_enumerate, OracleConfig, ReportConfig};
use trinomial_lnd::derivation::NilpotencyLimits;
use trinomial_lnd::grading::WeightVector;
use trinomial_lnd::par::Execution;
use trinomial_lnd::presentation::Presentation;
use trinomial_lnd::sweep::{corpus, soundness_sweep, CorpusShape};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweep(c: &mut Criterion) {
    let instances = corpus(2024, 50, &CorpusShape::default());
    let lambdas = ReportConfig::default_lambdas();
    let mut group = c.benchmark_group("soundness_sweep");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| soundness_sweep(&instances, &lambdas, NilpotencyLimits::default(), mode))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let p = Arc::new(Presentation::surface(2, 2, 3));
    let report = class_report(&p, &ReportConfig { verify: false, ..ReportConfig::default() });
    let degrees: Vec<WeightVector> = report.formulas().filter_map(|f| f.degree.clone()).map(WeightVector).collect();
    let weights = induced_weight_box(&p, 3, &degrees);
    let mut group = c.benchmark_group("oracle_enumerate");
    group.sample_size(10);
    for (name, mode) in MODES {
        let cfg = OracleConfig {
            degree_bound: 3,
            execution: mode,
            ..OracleConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| oracle_enumerate(&p, &weights, &cfg).unwrap())
        });
    }
    group.finish();
}

fn reports(c: &mut Criterion) {
    let p = Arc::new(Presentation::type2(&[&[1, 2], &[2], &[2], &[3]], 0).unwrap());
    let mut group = c.benchmark_group("class_report");
    for (name, mode) in MODES {
        let cfg = ReportConfig {
            execution: mode,
            ..ReportConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| class_report(&p, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, sweep, oracle, reports);
criterion_main!(benches);
