//! Acceptance checks, one line per criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use algcodes::channel::{corrupt_columns, random_mpoly, random_poly, trial_rng};
use algcodes::derivative::{der_encode, der_interp_degree, der_list_decode, der_threshold, DerParams};
use algcodes::field::{Fe, FieldCtx};
use algcodes::frs::{frs_encode, FrsParams};
use algcodes::frs_decode::{
    frs_interp_degree, frs_threshold, interpolate, list_decode, solve_affine_with_stats, DecodeConfig,
};
use algcodes::hensel::{enumerate_lambda, hensel_list_decode};
use algcodes::multiplicity::{mult_encode, mult_params_report, MultParams};
use algcodes::multipoly::{exponents_below, Exponent, MultiPoly};
use algcodes::oracle::{coeffs_at, oracle_list_decode, Code, EnumBudget};
use algcodes::par::{self, Exec};
use algcodes::poly::{frobenius_shift_check, Poly};
use algcodes_cli::{run_experiment, ExperimentSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn run(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let c = body();
    let took = start.elapsed();
    let pass = c.pass && took <= limit;
    let tag = if pass { "PASS" } else { "FAIL" };
    let slow = if took > limit { format!(", over the {:?} limit", limit) } else { String::new() };
    println!("[{tag}] {id} {name}: {} ({:.2}s{slow})", c.detail, took.as_secs_f64());
    pass
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn all_ran(r: &algcodes_cli::Report) -> bool {
    r.summary.trials_completed == 500 && r.rows.len() == 500
}

fn spec(text: &str) -> ExperimentSpec {
    text.parse().expect("valid spec")
}

/// FRS q=5, m=2, N=2, k=2, s=2: every message, every single-column error.
fn frs_oracle_equivalence() -> Check {
    let p = FrsParams::with_block_length(5, 2, 2, 2).unwrap();
    if p.gamma() != Fe(2) {
        return check(false, format!("primitive element is {:?}", p.gamma()));
    }
    let t = frs_threshold(&p, 2).unwrap();
    let cfg = DecodeConfig::default();
    let budget = EnumBudget::default();
    let mut words = Vec::new();
    for idx in 0..25 {
        let clean = frs_encode(&p, &Poly::from_coeffs(coeffs_at(idx, 5, 2))).unwrap();
        for col in 0..2 {
            for v in 0..25 {
                let val = coeffs_at(v, 5, 2);
                if val == clean.column(col) {
                    continue;
                }
                let mut y = clean.clone();
                y.set_column(col, &val);
                words.push(y);
            }
        }
    }
    let mismatches: usize = par::map_slice(Exec::default(), &words, |y| {
        let want = oracle_list_decode(&p, y, t, &budget).unwrap();
        let lin = list_decode(&p, y, 2, &cfg).unwrap().messages();
        let hen = hensel_list_decode(&p, y, 2, &cfg).unwrap().messages();
        (lin != want) as usize + (hen != want) as usize
    })
    .into_iter()
    .sum();
    check(words.len() == 1200 && mismatches == 0, format!("{} words, t = {t}, {mismatches} mismatches", words.len()))
}

fn frs_guaranteed_radius() -> Check {
    let p = FrsParams::with_block_length(13, 4, 3, 2).unwrap();
    let (d, t) = (frs_interp_degree(&p, 2).unwrap(), frs_threshold(&p, 2).unwrap());
    let base = "family=frs\nq=13\nm=4\nN=3\nk=2\ns=2\nerrors=1\ntrials=500\nseed=2\n";
    let lin = run_experiment(&spec(&format!("{base}decoder=linear\n")), Exec::default()).unwrap();
    let hen = run_experiment(&spec(&format!("{base}decoder=hensel\n")), Exec::default()).unwrap();
    let (a, b) = (lin.summary.success_rate, hen.summary.success_rate);
    check(
        p.gamma() == Fe(2) && d == 2 && t == 2 && a == 1.0 && b == 1.0 && all_ran(&lin) && all_ran(&hen),
        format!("d = {d}, t = {t}, linear {a:.3}, hensel {b:.3} over 500 trials"),
    )
}

fn affine_dimension_bound() -> Check {
    let p = FrsParams::with_block_length(13, 4, 3, 2).unwrap();
    let f = p.field();
    let mut rng = trial_rng(3, 0);
    let (mut violations, mut positive, mut total) = (0, 0, 0);
    for i in 0..1000 {
        let s = 2 + i % 2;
        let msg = random_poly(2, f, &mut rng);
        let errors = rng.gen_range(0..=3);
        let (y, _) = corrupt_columns(&frs_encode(&p, &msg).unwrap(), errors, f, &mut rng).unwrap();
        let q = interpolate(&p, &y, s).unwrap();
        let (set, _) = solve_affine_with_stats(&q, &p).unwrap();
        total += 1;
        if set.dim() > s - 1 {
            violations += 1;
        }
        if set.dim() > 0 {
            positive += 1;
        }
    }
    check(violations == 0, format!("{total} instances, {positive} with positive dimension, {violations} violations"))
}

fn random_multi(arity: usize, deg: u32, f: &FieldCtx, rng: &mut impl Rng) -> MultiPoly {
    loop {
        let mut terms: Vec<(Exponent, Fe)> = Vec::new();
        for e in exponents_below(arity, deg + 1) {
            if rng.gen_bool(0.4) {
                terms.push((e, Fe(rng.gen_range(0..f.order()))));
            }
        }
        let g = MultiPoly::from_terms(arity, terms, f).unwrap();
        if !g.is_zero() {
            return g;
        }
    }
}

fn hensel_containment() -> Check {
    let f = FieldCtx::new(13).unwrap();
    let cfg = DecodeConfig::default();
    let mut rng = trial_rng(4, 0);
    let mut found = 0;
    for i in 0..200 {
        let s = 1 + i % 3;
        let k = rng.gen_range(1..=4);
        let fp = random_poly(k, &f, &mut rng);
        let mut y1f = MultiPoly::var(s + 1, 1);
        for (e, &c) in fp.coeffs().iter().enumerate() {
            let mut exp = vec![0; s + 1];
            exp[0] = e as u32;
            y1f.add_term(exp, f.neg(c), &f);
        }
        let g = random_multi(s + 1, 2, &f, &mut rng);
        let q = y1f.mul(&g, &f);
        let (lambda, _) = enumerate_lambda(&q, k, f.find_primitive(), &f, &cfg).unwrap();
        found += lambda.contains(&fp) as usize;
    }
    check(found == 200, format!("{found}/200 planted roots enumerated"))
}

fn derivative_decode() -> Check {
    let p = DerParams::new(13, 4, 3, 3).unwrap();
    let (d, t) = (der_interp_degree(&p, 2).unwrap(), der_threshold(&p, 2).unwrap());
    let r = run_experiment(
        &spec("family=derivative\ndecoder=linear\nq=13\nn=4\nm=3\nk=3\ns=2\nerrors=1\ntrials=500\nseed=5\n"),
        Exec::default(),
    )
    .unwrap();
    let rate = r.summary.success_rate;

    let small = DerParams::new(7, 3, 2, 2).unwrap();
    let budget = EnumBudget::default();
    let mut words = Vec::new();
    for idx in 0..49 {
        let clean = der_encode(&small, &Poly::from_coeffs(coeffs_at(idx, 7, 2))).unwrap();
        words.push(clean.clone());
        for col in 0..3 {
            for v in 0..49 {
                let val = coeffs_at(v, 7, 2);
                if val != clean.column(col) {
                    let mut y = clean.clone();
                    y.set_column(col, &val);
                    words.push(y);
                }
            }
        }
    }
    let mismatches: usize = par::map_slice(Exec::default(), &words, |y| {
        (1..=2)
            .filter(|&s| {
                let t = der_threshold(&small, s).unwrap();
                let want = oracle_list_decode(&small, y, t, &budget).unwrap();
                der_list_decode(&small, y, s, &DecodeConfig::default()).unwrap().messages() != want
            })
            .count()
    })
    .into_iter()
    .sum();
    check(
        d == 2 && t == 3 && rate == 1.0 && all_ran(&r) && mismatches == 0,
        format!(
            "d = {d}, t = {t}, recovery {rate:.3} over 500 trials; {} words at q = 7, s = 1..2, {mismatches} oracle mismatches",
            words.len()
        ),
    )
}

fn multiplicity_rate_distance() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;

    let sets: [(u64, usize, usize, usize); 20] = [
        (2, 1, 1, 1), (3, 1, 2, 4), (4, 2, 1, 3), (5, 1, 2, 3), (5, 2, 2, 7),
        (7, 2, 3, 15), (7, 3, 1, 5), (8, 2, 2, 10), (9, 2, 4, 30), (11, 1, 5, 40),
        (11, 3, 2, 12), (13, 2, 2, 8), (13, 2, 3, 30), (16, 2, 2, 25), (17, 4, 2, 20),
        (19, 2, 5, 80), (23, 3, 3, 50), (25, 2, 2, 40), (29, 2, 2, 14), (31, 5, 3, 60),
    ];
    for (q, m, s, d) in sets {
        let p = MultParams::new(q, m, s, d).unwrap();
        let r = mult_params_report(&p);
        let count = exponents_below(m, d as u32 + 1).len() as i64;
        let w = exponents_below(m, s as u32).len() as i64;
        let n = (q as i64).pow(m as u32);
        let delta = BigRational::from_integer(1.into()) - rat(d as i64, (s as u64 * q) as i64);
        if r.rate != rat(count, w * n) || r.distance != delta || r.rate < r.rate_lower_bound {
            ok = false;
            notes.push(format!("rate mismatch at {:?}", (q, m, s, d)));
        }
    }

    let mut worst_univariate = 0usize;
    for d in 1..=3usize {
        let p = MultParams::new(5, 1, 2, d).unwrap();
        let words: Vec<_> = (0..5u64.pow(d as u32 + 1))
            .map(|i| p.encode_message(&p.message_from_coeffs(coeffs_at(i, 5, d + 1))))
            .collect();
        for a in 0..words.len() {
            for b in a + 1..words.len() {
                let agree = words[a].agreement(&words[b]).unwrap();
                worst_univariate = worst_univariate.max(agree);
                // agree / 5 <= d / 10
                if agree * 10 > d * 5 {
                    ok = false;
                }
            }
        }
    }

    let p = MultParams::new(13, 2, 2, 8).unwrap();
    let bound = 8 * 169 / 26;
    let violations: usize = par::map_range(Exec::default(), 10_000, |i| {
        let mut rng = trial_rng(6, i);
        let a = random_mpoly(&p, &mut rng);
        let mut b = random_mpoly(&p, &mut rng);
        while b == a {
            b = random_mpoly(&p, &mut rng);
        }
        let agree = mult_encode(&p, &a).unwrap().agreement(&mult_encode(&p, &b).unwrap()).unwrap();
        (agree * 26 > 8 * 169) as usize
    })
    .into_iter()
    .sum();
    ok &= violations == 0;

    let mut limit_ok = true;
    for (delta, q) in [(rat(1, 10), 101u64), (rat(1, 100), 1009)] {
        let one = BigRational::from_integer(1.into());
        let d = (rat(2, 1) * (&one - &delta) * BigRational::from_integer(q.into())).floor().to_integer();
        let d: usize = d.try_into().unwrap();
        let r = mult_params_report(&MultParams::new(q, 2, 2, d).unwrap()).rate;
        let target = rat(2, 3) * (&one - &delta) * (&one - &delta);
        let diff = if r > target { &r - &target } else { &target - &r };
        limit_ok &= diff <= rat(2, q as i64);
        notes.push(format!("delta = {delta}: |R - 2(1-delta)^2/3| = {:.5}", rat_f64(&diff)));
    }
    ok &= limit_ok;
    check(
        ok,
        format!(
            "20 rate sets exact; max univariate agreement {worst_univariate}; {violations}/10000 pair violations (bound {bound}); {}",
            notes.join("; ")
        ),
    )
}

fn rat_f64(r: &BigRational) -> f64 {
    let scale = BigInt::from(10u64.pow(12));
    let scaled = (r * BigRational::from_integer(scale)).round().to_integer();
    i64::try_from(scaled).map(|v| v as f64 / 1e12).unwrap_or(f64::NAN)
}

fn local_correction() -> Check {
    let p = MultParams::new(29, 2, 2, 14).unwrap();
    let w = p.w() as i64;
    let budget = (p.delta() * rat(29 * 29, 100 * w)).floor().to_integer();
    let errors: usize = budget.try_into().unwrap();
    let base = format!("family=multiplicity\nq=29\nm=2\ns=2\nd=14\nerrors={errors}\ntrials=500\nseed=7\nattempts=1\n");
    let general = run_experiment(&spec(&format!("{base}decoder=local\n")), Exec::default()).unwrap();
    let two = run_experiment(&spec(&format!("{base}decoder=bivariate\n")), Exec::default()).unwrap();
    let exact = |r: &algcodes_cli::Report, n: u64| r.rows.iter().all(|row| row.queries == n);
    let (g, b) = (general.summary.success_rate, two.summary.success_rate);
    check(
        errors == 2 && w == 3 && all_ran(&general) && all_ran(&two) && g >= 0.75 && b >= 0.75 && exact(&general, 87) && exact(&two, 58),
        format!(
            "{errors} corrupted points; general {g:.3} with {} queries per call, two-line {b:.3} with {} queries per call",
            general.summary.max_queries, two.summary.max_queries
        ),
    )
}

fn field_invariants() -> Check {
    let mut violations = 0usize;
    let mut cases = 0usize;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let f = FieldCtx::new(q).unwrap();
        for n in 1..=2usize {
            let pts: Vec<Vec<Fe>> = (0..(q as usize).pow(n as u32))
                .map(|i| coeffs_at(i as u64, q as u32, n))
                .collect();
            let derivs = exponents_below(n, 5);
            // Both sides are linear in P, so the monomial basis covers every P.
            for mono in exponents_below(n, 5) {
                let p = MultiPoly::monomial(mono, Fe::ONE);
                let hasse: Vec<MultiPoly> = derivs.iter().map(|i| p.hasse_derivative(i, &f).unwrap()).collect();
                for a in &pts {
                    let at_a: Vec<Fe> = hasse.iter().map(|h| h.eval(a, &f).unwrap()).collect();
                    for z in &pts {
                        let shifted: Vec<Fe> = a.iter().zip(z).map(|(&x, &y)| f.add(x, y)).collect();
                        let rhs = derivs.iter().zip(&at_a).fold(Fe::ZERO, |acc, (i, &v)| {
                            let zi = i.iter().zip(z).fold(Fe::ONE, |m, (&e, &zz)| f.mul(m, f.pow(zz, e as u64)));
                            f.add(acc, f.mul(v, zi))
                        });
                        cases += 1;
                        violations += (p.eval(&shifted, &f).unwrap() != rhs) as usize;
                    }
                }
            }
        }
    }
    let f5 = FieldCtx::new(5).unwrap();
    let frob = (0..625)
        .filter(|&i| !frobenius_shift_check(&Poly::from_coeffs(coeffs_at(i, 5, 4)), &f5).unwrap())
        .count();
    check(
        violations == 0 && frob == 0,
        format!("{cases} Taylor cases, {violations} violations; 625 Frobenius cases, {frob} violations"),
    )
}

fn cli_reproducibility() -> Check {
    let bin = env!("CARGO_BIN_EXE_algcodes");
    let dir = tempfile::tempdir().unwrap();
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let spec_path = dir.path().join("frs.spec");
    std::fs::write(&spec_path, "family = frs\ndecoder = linear\nq = 13\nm = 4\nN = 3\nk = 2\ns = 2\nerrors = 1\ntrials = 200\nseed = 11\n")
        .unwrap();
    let mut outs = Vec::new();
    for (tag, extra) in [("a", None), ("b", None), ("c", Some("--sequential"))] {
        let prefix = dir.path().join(tag);
        let mut cmd = Command::new(bin);
        cmd.arg("experiment").arg(&spec_path).arg("--out").arg(&prefix);
        if let Some(x) = extra {
            cmd.arg(x);
        }
        let status = cmd.status().unwrap();
        let tsv = std::fs::read(prefix.with_extension("tsv")).unwrap_or_default();
        let json = std::fs::read(prefix.with_extension("json")).unwrap_or_default();
        outs.push((status.success(), tsv, json));
    }
    let identical = outs.iter().all(|o| o.0 && o.1 == outs[0].1 && o.2 == outs[0].2);
    let rate_one = String::from_utf8_lossy(&outs[0].2).contains("\"success_rate\": 1.0");

    let out_path = dir.path().join("word.txt");
    let status = Command::new(bin)
        .args(["encode", "--family", "frs", "--q", "5", "--m", "2", "--N", "2", "--k", "2", "--message"])
        .arg(golden_dir.join("frs_gf5_x.msg"))
        .arg("--out")
        .arg(&out_path)
        .status()
        .unwrap();
    let golden = std::fs::read(golden_dir.join("frs_gf5_x.txt")).unwrap();
    let produced = std::fs::read(&out_path).unwrap_or_default();
    let golden_ok = status.success() && produced == golden;
    check(
        identical && rate_one && golden_ok,
        format!("three runs byte-identical: {identical}; success rate 1.0: {rate_one}; golden encode matches: {golden_ok}"),
    )
}

fn main() {
    let minute = Duration::from_secs(60);
    let seconds = Duration::from_secs(30);
    let results = [
        run(1, "FRS oracle equivalence", minute, frs_oracle_equivalence),
        run(2, "FRS guaranteed-radius success", seconds, frs_guaranteed_radius),
        run(3, "affine dimension bound", seconds, affine_dimension_bound),
        run(4, "Hensel containment", seconds, hensel_containment),
        run(5, "derivative-code decoding", minute, derivative_decode),
        run(6, "multiplicity rate and distance", minute, multiplicity_rate_distance),
        run(7, "local self-correction", 2 * minute, local_correction),
        run(8, "field-layer invariants", seconds, field_invariants),
        run(9, "CLI reproducibility", seconds, cli_reproducibility),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
