use algcodes::channel::{corrupt_columns, random_mpoly, random_poly, trial_rng};
use algcodes::frs::{frs_encode, FrsParams};
use algcodes::frs_decode::{list_decode, DecodeConfig};
use algcodes::hensel::hensel_list_decode;
use algcodes::multiplicity::{mult_encode_with, MultParams};
use algcodes::oracle::{oracle_list_decode, EnumBudget};
use algcodes::par::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn oracle(c: &mut Criterion) {
    let p = FrsParams::with_block_length(13, 4, 3, 4).unwrap();
    let mut rng = trial_rng(1, 0);
    let msg = random_poly(4, p.field(), &mut rng);
    let (y, _) = corrupt_columns(&frs_encode(&p, &msg).unwrap(), 1, p.field(), &mut rng).unwrap();
    let mut g = c.benchmark_group("oracle_list_decode");
    for (name, exec) in MODES {
        let b = EnumBudget { exec, ..Default::default() };
        g.bench_function(BenchmarkId::new(name, "q13_k4"), |bn| {
            bn.iter(|| oracle_list_decode(&p, black_box(&y), 2, &b).unwrap())
        });
    }
    g.finish();
}

fn decoders(c: &mut Criterion) {
    let p = FrsParams::with_block_length(31, 5, 6, 6).unwrap();
    let mut rng = trial_rng(2, 0);
    let msg = random_poly(6, p.field(), &mut rng);
    let (y, _) = corrupt_columns(&frs_encode(&p, &msg).unwrap(), 1, p.field(), &mut rng).unwrap();
    let mut g = c.benchmark_group("frs_decode_s4");
    for (name, exec) in MODES {
        let cfg = DecodeConfig { exec, ..Default::default() };
        g.bench_function(BenchmarkId::new("linear", name), |bn| {
            bn.iter(|| list_decode(&p, black_box(&y), 4, &cfg).unwrap())
        });
        g.bench_function(BenchmarkId::new("hensel", name), |bn| {
            bn.iter(|| hensel_list_decode(&p, black_box(&y), 4, &cfg).unwrap())
        });
    }
    g.finish();
}

fn multiplicity(c: &mut Criterion) {
    let p = MultParams::new(29, 2, 3, 40).unwrap();
    let poly = random_mpoly(&p, &mut trial_rng(3, 0));
    let mut g = c.benchmark_group("mult_encode");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "q29_m2_s3"), |bn| {
            bn.iter(|| mult_encode_with(&p, black_box(&poly), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = oracle, decoders, multiplicity
}
criterion_main!(benches);
