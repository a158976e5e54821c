use algcodes::par::Exec;
use algcodes_cli::{run_experiment, ExperimentSpec};
use criterion::{criterion_group, criterion_main, Criterion};

const SPECS: [(&str, &str); 3] = [
    ("frs_linear", "family=frs\ndecoder=linear\nq=13\nm=4\nN=3\nk=2\ns=2\nerrors=1\ntrials=200\nseed=1\n"),
    ("derivative", "family=derivative\ndecoder=linear\nq=13\nn=4\nm=3\nk=3\ns=2\nerrors=1\ntrials=200\nseed=1\n"),
    ("local", "family=multiplicity\ndecoder=local\nq=29\nm=2\ns=2\nd=14\nerrors=2\ntrials=50\nseed=1\nattempts=1\n"),
];

fn trials(c: &mut Criterion) {
    for (name, text) in SPECS {
        let spec: ExperimentSpec = text.parse().unwrap();
        let mut g = c.benchmark_group(name);
        g.sample_size(10);
        g.bench_function("sequential", |b| b.iter(|| run_experiment(&spec, Exec::Sequential).unwrap()));
        g.bench_function("parallel", |b| b.iter(|| run_experiment(&spec, Exec::Parallel).unwrap()));
        g.finish();
    }
}

criterion_group!(benches, trials);
criterion_main!(benches);
