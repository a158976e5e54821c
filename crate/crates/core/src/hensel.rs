//! Root finding by lifting: enumerate candidate `Y`-roots of
//! `Q(X, Y_1, ..., Y_s)` one coefficient at a time.
//!
//! If `f = b + X g` is a root of `Q`, then `b` is a root of
//! `Q(0, Y, ..., Y)` and `g` is a root of
//! `Q(X, b + X Y_1, b + g X Y_2, ..., b + g^{s-1} X Y_s)` after dividing
//! out the largest power of `X`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::frs::{encode_unchecked, FrsParams};
use crate::frs_decode::{
    frs_threshold, interpolate, unknown_layout, Candidate, DecodeConfig, DecodeResult, Diagnostics,
};
use crate::matrix::ReceivedWord;
use crate::multipoly::{Exponent, MultiPoly};
use crate::par::{self, Exec};
use crate::poly::Poly;

/// A polynomial of degree `< precision` congruent modulo `X^precision` to
/// some root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialRoot {
    pub g: Poly,
    pub precision: usize,
}

/// `Q(X, b + X Y_1, b + g X Y_2, ..., b + g^{s-1} X Y_s)`.
pub fn shift_transform(q: &MultiPoly, b: Fe, gamma: Fe, f: &FieldCtx) -> MultiPoly {
    let arity = q.arity();
    let gpows: Vec<Fe> = (0..arity).map(|i| f.pow(gamma, i.saturating_sub(1) as u64)).collect();
    let mut acc: BTreeMap<Exponent, Fe> = BTreeMap::new();
    for (e, c) in q.terms() {
        let mut partial: Vec<(Exponent, Fe)> = vec![(vec![0; arity], c)];
        partial[0].0[0] = e[0];
        for i in 1..arity {
            let ei = e[i];
            if ei == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * (ei as usize + 1));
            for (exp, coef) in &partial {
                for t in 0..=ei {
                    let w = f.mul(
                        f.binom(ei as u64, t as u64),
                        f.mul(f.pow(b, (ei - t) as u64), f.pow(gpows[i], t as u64)),
                    );
                    if w.is_zero() {
                        continue;
                    }
                    let mut ne = exp.clone();
                    ne[0] += t;
                    ne[i] = t;
                    next.push((ne, f.mul(*coef, w)));
                }
            }
            partial = next;
        }
        for (exp, coef) in partial {
            let slot = acc.entry(exp).or_insert(Fe::ZERO);
            *slot = f.add(*slot, coef);
        }
    }
    MultiPoly::from_map(arity, acc)
}

/// `(Q_0, r)` with `Q = X^r Q_0` and `X` not dividing `Q_0`.
pub fn strip_x_power(q: &MultiPoly, f: &FieldCtx) -> (MultiPoly, u32) {
    let r = q.terms().map(|(e, _)| e[0]).min().unwrap_or(0);
    if r == 0 {
        return (q.clone(), 0);
    }
    let mut out = MultiPoly::zero(q.arity());
    for (e, c) in q.terms() {
        let mut ne = e.clone();
        ne[0] -= r;
        out.add_term(ne, c, f);
    }
    (out, r)
}

/// `Q(0, Y, ..., Y)` as a univariate polynomial in `Y`.
pub fn diagonal_at_zero(q: &MultiPoly, f: &FieldCtx) -> Poly {
    let mut c: Vec<Fe> = Vec::new();
    for (e, v) in q.terms() {
        if e[0] != 0 {
            continue;
        }
        let deg = e[1..].iter().sum::<u32>() as usize;
        if c.len() <= deg {
            c.resize(deg + 1, Fe::ZERO);
        }
        c[deg] = f.add(c[deg], v);
    }
    Poly::from_coeffs(c)
}

/// Possible constant terms of a root: every field element if
/// `Q(0, Y, ..., Y)` vanishes identically, otherwise its roots.
pub fn base_roots(q: &MultiPoly, f: &FieldCtx) -> Vec<Fe> {
    let diag = diagonal_at_zero(q, f);
    if diag.is_zero() {
        return f.elements().collect();
    }
    f.elements().filter(|&b| diag.eval(b, f).is_zero()).collect()
}

struct Lift<'a> {
    f: &'a FieldCtx,
    gamma: Fe,
    budget: u64,
    nodes: AtomicU64,
    exec: Exec,
}

impl Lift<'_> {
    fn visit(&self, q: &MultiPoly, k: usize) -> Result<BTreeSet<Poly>> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            return Err(Error::BudgetExceeded { needed: n as u128, budget: self.budget });
        }
        let mut out = BTreeSet::new();
        if k == 0 {
            out.insert(Poly::zero());
            return Ok(out);
        }
        let (q0, _) = strip_x_power(q, self.f);
        let roots = base_roots(&q0, self.f);
        let branches = par::map_slice(self.exec, &roots, |&b| {
            let next = shift_transform(&q0, b, self.gamma, self.f);
            debug_assert!(!next.is_zero());
            let tails = self.visit(&next, k - 1)?;
            Ok(tails
                .into_iter()
                .map(|g| g.shl(1).add(&Poly::constant(b), self.f))
                .collect::<Vec<_>>())
        });
        for br in branches {
            out.extend(br?);
        }
        Ok(out)
    }
}

/// Candidate roots of degree `< k`, sorted, together with the number of
/// recursion nodes visited. Contains every genuine root of degree `< k`.
pub fn enumerate_lambda(
    q: &MultiPoly,
    k: usize,
    gamma: Fe,
    f: &FieldCtx,
    cfg: &DecodeConfig,
) -> Result<(Vec<Poly>, u64)> {
    assert!(!q.is_zero(), "polynomial must be nonzero");
    let lift = Lift { f, gamma, budget: cfg.node_budget, nodes: AtomicU64::new(0), exec: cfg.exec };
    let set = lift.visit(q, k)?;
    Ok((set.into_iter().collect(), lift.nodes.load(Ordering::Relaxed)))
}

/// Interpolate, lift, and keep the genuine roots that agree with `y` in at
/// least `t` columns. Same output contract as the linear decoder.
pub fn hensel_list_decode(
    params: &FrsParams,
    y: &ReceivedWord,
    s: usize,
    cfg: &DecodeConfig,
) -> Result<DecodeResult> {
    let f = params.field();
    let q = interpolate(params, y, s)?;
    let t = frs_threshold(params, s)?;
    let mq = q.to_multipoly(f);
    let (lambda, nodes) = enumerate_lambda(&mq, params.k(), params.gamma(), f, cfg)?;
    let mut candidates: Vec<Candidate> = par::map_slice(cfg.exec, &lambda, |g| {
        if !q.compose_shift(g, params.gamma(), f).is_zero() {
            return None;
        }
        let agreement = encode_unchecked(params, g).agreement(y).expect("shape checked");
        (agreement >= t).then(|| Candidate { message: g.clone(), agreement })
    })
    .into_iter()
    .flatten()
    .collect();
    candidates.sort();
    Ok(DecodeResult {
        candidates,
        diagnostics: Diagnostics {
            d: q.d,
            threshold: t,
            constraint_rows: params.block_length() * (params.m() - s + 1),
            unknowns: unknown_layout(s, q.d, params.k()).len(),
            enumerated: lambda.len() as u64,
            nodes,
            s_used: s,
            ..Default::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frs::frs_encode;
    use crate::frs_decode::list_decode;
    use crate::oracle::{coeffs_at, oracle_list_decode, EnumBudget};
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn term(arity: usize, e: &[u32], c: u32) -> MultiPoly {
        let mut ex = vec![0; arity];
        ex[..e.len()].copy_from_slice(e);
        MultiPoly::monomial(ex, Fe(c))
    }

    fn random_multi(arity: usize, deg: u32, f: &FieldCtx, rng: &mut impl Rng) -> MultiPoly {
        loop {
            let mut p = MultiPoly::zero(arity);
            for w in 0..=deg {
                for e in crate::multipoly::exponents_of_weight(arity, w) {
                    if rng.gen_bool(0.4) {
                        p.add_term(e, Fe(rng.gen_range(0..f.order())), f);
                    }
                }
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// `Q(X, f(X), f(gX), ...)` by direct substitution.
    fn compose(q: &MultiPoly, fp: &Poly, gamma: Fe, f: &FieldCtx) -> Poly {
        let subs: Vec<Poly> =
            (1..q.arity()).map(|i| fp.scale_arg(f.pow(gamma, (i - 1) as u64), f)).collect();
        let mut acc = Poly::zero();
        for (e, c) in q.terms() {
            let mut t = Poly::monomial(c, e[0] as usize);
            for (i, s) in subs.iter().enumerate() {
                for _ in 0..e[i + 1] {
                    t = t.mul(s, f);
                }
            }
            acc = acc.add(&t, f);
        }
        acc
    }

    #[test]
    fn shift_examples() {
        let f = FieldCtx::new(5).unwrap();
        let y1 = term(2, &[0, 1], 1);
        let want = term(2, &[0, 0], 3).add(&term(2, &[1, 1], 1), &f);
        assert_eq!(shift_transform(&y1, Fe(3), Fe(2), &f), want);
        let diff = term(3, &[0, 1, 0], 1).sub(&term(3, &[0, 0, 1], 1), &f);
        let want = term(3, &[1, 1, 0], 1).sub(&term(3, &[1, 0, 1], 2), &f);
        for b in f.elements() {
            assert_eq!(shift_transform(&diff, b, Fe(2), &f), want);
        }
        let x = term(3, &[1], 1);
        assert_eq!(shift_transform(&x, Fe(0), Fe(2), &f), x);
    }

    #[test]
    fn strip_examples() {
        let f = FieldCtx::new(5).unwrap();
        let q = term(2, &[2, 1], 1);
        assert_eq!(strip_x_power(&q, &f), (term(2, &[0, 1], 1), 2));
        let q = term(2, &[0, 1], 1).add(&term(2, &[0, 0], 3), &f);
        assert_eq!(strip_x_power(&q, &f), (q.clone(), 0));
        let diff = term(3, &[0, 1, 0], 1).sub(&term(3, &[0, 0, 1], 1), &f);
        let xdiff = diff.mul(&term(3, &[1], 1), &f);
        assert_eq!(strip_x_power(&xdiff, &f), (diff, 1));
    }

    #[test]
    fn base_root_examples() {
        let f = FieldCtx::new(5).unwrap();
        let diff = term(3, &[0, 1, 0], 1).sub(&term(3, &[0, 0, 1], 1), &f);
        assert_eq!(base_roots(&diff, &f).len(), 5);
        let lin = term(2, &[0, 1], 1).sub(&term(2, &[0, 0], 3), &f);
        assert_eq!(base_roots(&lin, &f), vec![Fe(3)]);
        let p = FrsParams::new(13, 4, 3).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
        for _ in 0..20 {
            let msg = Poly::from_coeffs((0..3).map(|_| Fe(rng.gen_range(0..13))).collect());
            let y = frs_encode(&p, &msg).unwrap();
            let q = interpolate(&p, &y, 2).unwrap().to_multipoly(p.field());
            let (q0, _) = strip_x_power(&q, p.field());
            assert!(base_roots(&q0, p.field()).contains(&msg.coeff(0)));
        }
    }

    #[test]
    fn enumerate_examples() {
        let f = FieldCtx::new(5).unwrap();
        let cfg = DecodeConfig::default();
        let lin = term(2, &[0, 1], 1).sub(&term(2, &[0, 0], 3), &f);
        assert_eq!(enumerate_lambda(&lin, 1, Fe(2), &f, &cfg).unwrap().0, vec![Poly::constant(Fe(3))]);
        assert_eq!(enumerate_lambda(&lin, 0, Fe(2), &f, &cfg).unwrap().0, vec![Poly::zero()]);
        let diff = term(3, &[0, 1, 0], 1).sub(&term(3, &[0, 0, 1], 1), &f);
        let (lambda, _) = enumerate_lambda(&diff, 2, Fe(2), &f, &cfg).unwrap();
        let roots: Vec<Poly> =
            lambda.into_iter().filter(|g| compose(&diff, g, Fe(2), &f).is_zero()).collect();
        assert_eq!(roots, f.elements().map(Poly::constant).collect::<Vec<_>>());
        let tight = DecodeConfig { node_budget: 3, ..cfg };
        assert!(matches!(
            enumerate_lambda(&diff, 2, Fe(2), &f, &tight),
            Err(Error::BudgetExceeded { budget: 3, .. })
        ));
    }

    #[test]
    fn shift_never_vanishes() {
        let f = FieldCtx::new(13).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(2);
        for _ in 0..300 {
            let q = random_multi(rng.gen_range(2..4), 4, &f, &mut rng);
            let b = Fe(rng.gen_range(0..13));
            assert!(!shift_transform(&q, b, Fe(2), &f).is_zero());
        }
    }

    /// The shift identity: composing the shifted polynomial with `g` equals
    /// composing the original with `b + X g`.
    #[test]
    fn shift_substitution_identity() {
        let f = FieldCtx::new(13).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        for _ in 0..100 {
            let q = random_multi(3, 3, &f, &mut rng);
            let b = Fe(rng.gen_range(0..13));
            let g = Poly::from_coeffs((0..3).map(|_| Fe(rng.gen_range(0..13))).collect());
            let lhs = compose(&shift_transform(&q, b, Fe(2), &f), &g, Fe(2), &f);
            let rhs = compose(&q, &g.shl(1).add(&Poly::constant(b), &f), Fe(2), &f);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn genuine_base_root_gives_positive_strip() {
        let f = FieldCtx::new(13).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(4);
        for _ in 0..200 {
            let q = random_multi(3, 3, &f, &mut rng);
            let (q0, _) = strip_x_power(&q, &f);
            let diag = diagonal_at_zero(&q0, &f);
            for b in base_roots(&q0, &f) {
                if diag.eval(b, &f).is_zero() {
                    let (_, r) = strip_x_power(&shift_transform(&q0, b, Fe(2), &f), &f);
                    assert!(r >= 1);
                }
            }
        }
    }

    #[test]
    fn planted_roots_are_found() {
        let f = FieldCtx::new(13).unwrap();
        let cfg = DecodeConfig::default();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        for _ in 0..100 {
            let k = rng.gen_range(1..5);
            let fp = Poly::from_coeffs((0..k).map(|_| Fe(rng.gen_range(0..13))).collect());
            let mut y1f = term(3, &[0, 1], 1);
            for (e, &c) in fp.coeffs().iter().enumerate() {
                y1f.add_term(vec![e as u32, 0, 0], f.neg(c), &f);
            }
            let g = random_multi(3, 2, &f, &mut rng);
            let q = y1f.mul(&g, &f);
            let (lambda, _) = enumerate_lambda(&q, k, Fe(2), &f, &cfg).unwrap();
            assert!(lambda.contains(&fp));
        }
    }

    #[test]
    fn matches_linear_decoder_and_oracle() {
        let cfg = DecodeConfig::default();
        let b = EnumBudget::default();
        let p = FrsParams::new(13, 4, 2).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(6);
        for _ in 0..40 {
            let msg = Poly::from_coeffs((0..2).map(|_| Fe(rng.gen_range(0..13))).collect());
            let mut y = frs_encode(&p, &msg).unwrap();
            let col = rng.gen_range(0..3);
            for j in 0..4 {
                y.set(j, col, Fe(rng.gen_range(0..13)));
            }
            let h = hensel_list_decode(&p, &y, 2, &cfg).unwrap();
            let l = list_decode(&p, &y, 2, &cfg).unwrap();
            assert!(h.contains(&msg));
            assert_eq!(h.candidates, l.candidates);
        }
        let p = FrsParams::new(5, 2, 2).unwrap();
        for idx in 0..625u64 {
            let y = crate::matrix::fold(&coeffs_at(idx, 5, 4), 2).unwrap();
            for s in 1..=2 {
                let t = frs_threshold(&p, s).unwrap();
                let h = hensel_list_decode(&p, &y, s, &cfg).unwrap();
                assert_eq!(h.messages(), oracle_list_decode(&p, &y, t, &b).unwrap());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let f = FieldCtx::new(13).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        for _ in 0..30 {
            let q = random_multi(3, 3, &f, &mut rng);
            let seq = DecodeConfig { exec: Exec::Sequential, ..Default::default() };
            let par = DecodeConfig { exec: Exec::Parallel, ..Default::default() };
            assert_eq!(
                enumerate_lambda(&q, 3, Fe(2), &f, &seq).map(|r| r.0),
                enumerate_lambda(&q, 3, Fe(2), &f, &par).map(|r| r.0)
            );
        }
    }
}
