//! Multiplicity codes: a symbol at `a` is every Hasse derivative of order
//! `< s` of an `m`-variate polynomial, evaluated at `a`. Includes the
//! random-lines local self-corrector and its two-line bivariate form.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::linalg;
use crate::matrix::Matrix;
use crate::multipoly::{exponents_below, weight, Exponent, MultiPoly};
use crate::par::{self, Exec};
use crate::poly::Poly;

/// `w x q^m`; column `p` is the symbol at the `p`-th point in lexicographic
/// order.
pub type MultCodeword = Matrix;

#[derive(Clone, Debug)]
pub struct MultParams {
    field: FieldCtx,
    m: usize,
    s: usize,
    d: usize,
    n: usize,
    exps: Vec<Exponent>,
}

impl MultParams {
    pub fn new(q: u64, m: usize, s: usize, d: usize) -> Result<Self> {
        Self::with_field(FieldCtx::new(q)?, m, s, d)
    }

    pub fn with_field(field: FieldCtx, m: usize, s: usize, d: usize) -> Result<Self> {
        let q = field.order() as usize;
        if m == 0 || s == 0 || d == 0 {
            return Err(Error::ParamOutOfRange(format!("need m, s, d >= 1, got m = {m}, s = {s}, d = {d}")));
        }
        if d >= s * q {
            return Err(Error::ParamOutOfRange(format!("need d < s q, got d = {d}, s q = {}", s * q)));
        }
        let n = (q as u64)
            .checked_pow(m as u32)
            .filter(|&n| n <= u32::MAX as u64)
            .ok_or_else(|| Error::ParamOutOfRange(format!("q^m too large for q = {q}, m = {m}")))?;
        let exps = exponents_below(m, s as u32);
        Ok(MultParams { field, m, s, d, n: n as usize, exps })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Alphabet width `C(m+s-1, m)`.
    pub fn w(&self) -> usize {
        self.exps.len()
    }

    /// Block length `q^m`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `1 - d/(sq)`.
    pub fn delta(&self) -> BigRational {
        BigRational::one() - ratio(self.d as u64, self.s as u64 * self.q() as u64)
    }

    /// Symbol layout: exponent vectors of weight `< s` in graded-lex order.
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn point_of(&self, mut index: usize) -> Vec<Fe> {
        let q = self.q() as usize;
        let mut a = vec![Fe::ZERO; self.m];
        for slot in a.iter_mut().rev() {
            *slot = Fe((index % q) as u32);
            index /= q;
        }
        a
    }

    pub fn index_of(&self, a: &[Fe]) -> usize {
        a.iter().fold(0, |acc, x| acc * self.q() as usize + x.0 as usize)
    }

    fn check_point(&self, a: &[Fe]) -> Result<()> {
        if a.len() != self.m {
            return Err(Error::ArityMismatch { expected: self.m, got: a.len() });
        }
        if a.iter().any(|&x| !self.field.contains(x)) {
            return Err(Error::ParamOutOfRange("point coordinate outside the field".into()));
        }
        Ok(())
    }
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn binom_big(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `<P^{(i)}(a)>` over `wt(i) < s`, graded-lex.
pub fn order_s_eval(p: &MultiPoly, a: &[Fe], s: usize, f: &FieldCtx) -> Result<Vec<Fe>> {
    if a.len() != p.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), got: a.len() });
    }
    exponents_below(p.arity(), s as u32)
        .iter()
        .map(|i| Ok(p.hasse_derivative(i, f)?.eval_unchecked(a, f)))
        .collect()
}

pub fn mult_encode(params: &MultParams, p: &MultiPoly) -> Result<MultCodeword> {
    mult_encode_with(params, p, Exec::default())
}

pub fn mult_encode_with(params: &MultParams, p: &MultiPoly, exec: Exec) -> Result<MultCodeword> {
    if p.arity() != params.m {
        return Err(Error::ArityMismatch { expected: params.m, got: p.arity() });
    }
    if let Some(deg) = p.total_degree() {
        if deg as usize > params.d {
            return Err(Error::DegreeTooLarge { degree: deg as usize, bound: params.d });
        }
    }
    Ok(encode_unchecked(params, p, exec))
}

fn encode_unchecked(params: &MultParams, p: &MultiPoly, exec: Exec) -> MultCodeword {
    let f = &params.field;
    let derivs: Vec<MultiPoly> =
        params.exps.iter().map(|i| p.hasse_derivative(i, f).expect("arity checked")).collect();
    let cols = par::map_range(exec, params.n as u64, |idx| {
        let a = params.point_of(idx as usize);
        derivs.iter().map(|h| h.eval_unchecked(&a, f)).collect::<Vec<Fe>>()
    });
    Matrix::from_columns(params.w(), cols).expect("uniform columns")
}

/// Exact rate and distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultReport {
    pub rate: BigRational,
    pub distance: BigRational,
    /// Number of coefficients, `C(d+m, m)`.
    pub message_len: BigUint,
    /// `(1 - m^2/s)(1 - delta)^m`.
    pub rate_lower_bound: BigRational,
    /// Whether `q >= max(10m, (d+6)/s, 5(s+1))`.
    pub large_field: bool,
}

pub fn mult_params_report(params: &MultParams) -> MultReport {
    let (m, s, d, q) = (params.m as u64, params.s as u64, params.d as u64, params.q() as u64);
    let message_len = binom_big(d + m, m);
    let w = binom_big(s + m - 1, m);
    let n = BigUint::from(q).pow(m as u32);
    let rate = BigRational::new(BigInt::from(message_len.clone()), BigInt::from(w * n));
    let distance = params.delta();
    let one_minus = BigRational::one() - &distance;
    let mut pw = BigRational::one();
    for _ in 0..m {
        pw *= &one_minus;
    }
    let rate_lower_bound = (BigRational::one() - ratio(m * m, s)) * pw;
    let large_field = q >= 10 * m && q * s >= d + 6 && q >= 5 * (s + 1);
    MultReport { rate, distance, message_len, rate_lower_bound, large_field }
}

/// `P(a + bT)`.
pub fn restrict_to_line(p: &MultiPoly, a: &[Fe], b: &[Fe], f: &FieldCtx) -> Result<Poly> {
    if a.len() != p.arity() || b.len() != p.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), got: a.len().max(b.len()) });
    }
    if b.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroDirection);
    }
    let lines: Vec<Poly> = a.iter().zip(b).map(|(&ai, &bi)| Poly::from_coeffs(vec![ai, bi])).collect();
    let mut pows: Vec<Vec<Poly>> = lines.iter().map(|l| vec![Poly::constant(Fe::ONE), l.clone()]).collect();
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let mut term = Poly::constant(c);
        for (v, &ev) in e.iter().enumerate() {
            while pows[v].len() <= ev as usize {
                let next = pows[v].last().unwrap().mul(&lines[v], f);
                pows[v].push(next);
            }
            term = term.mul(&pows[v][ev as usize], f);
        }
        out = out.add(&term, f);
    }
    Ok(out)
}

/// Query access to a received word.
pub trait SymbolOracle: Sync {
    fn query(&self, a: &[Fe]) -> Vec<Fe>;
}

/// Serves symbols from a stored word and counts queries.
pub struct CountingOracle<'a> {
    params: &'a MultParams,
    word: &'a Matrix,
    count: AtomicU64,
}

impl<'a> CountingOracle<'a> {
    pub fn new(params: &'a MultParams, word: &'a Matrix) -> Result<Self> {
        if word.shape() != (params.w(), params.n) {
            return Err(Error::ShapeMismatch { expected: (params.w(), params.n), got: word.shape() });
        }
        Ok(CountingOracle { params, word, count: AtomicU64::new(0) })
    }

    pub fn queries(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.count.store(0, Ordering::Relaxed);
    }
}

impl SymbolOracle for CountingOracle<'_> {
    fn query(&self, a: &[Fe]) -> Vec<Fe> {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.word.column(self.params.index_of(a)).to_vec()
    }
}

/// Symbols of the restriction to `a + bT`: column `t` holds
/// `(l_b(t))_j = sum_{wt(i)=j} r^{(i)}(a+bt) b^i` for `j < s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTranscript {
    pub a: Vec<Fe>,
    pub b: Vec<Fe>,
    /// `s x q`, column index is the field element `t`.
    pub values: Matrix,
}

fn monomial_at(b: &[Fe], i: &[u32], f: &FieldCtx) -> Fe {
    b.iter().zip(i).fold(Fe::ONE, |acc, (&x, &e)| f.mul(acc, f.pow(x, e as u64)))
}

/// Makes exactly `q` queries.
pub fn line_transcript<O: SymbolOracle + ?Sized>(
    params: &MultParams,
    r: &O,
    a: &[Fe],
    b: &[Fe],
) -> Result<LineTranscript> {
    params.check_point(a)?;
    params.check_point(b)?;
    if b.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroDirection);
    }
    let f = &params.field;
    let weights: Vec<(usize, Fe)> =
        params.exps.iter().map(|i| (weight(i) as usize, monomial_at(b, i, f))).collect();
    let mut values = Matrix::zeros(params.s, f.order() as usize);
    for t in f.elements() {
        let pt: Vec<Fe> = a.iter().zip(b).map(|(&ai, &bi)| f.add(ai, f.mul(bi, t))).collect();
        let sym = r.query(&pt);
        let mut col = vec![Fe::ZERO; params.s];
        for (&(j, bi), &v) in weights.iter().zip(&sym) {
            col[j] = f.add(col[j], f.mul(bi, v));
        }
        values.set_column(t.0 as usize, &col);
    }
    Ok(LineTranscript { a: a.to_vec(), b: b.to_vec(), values })
}

/// Largest `e` with `e < frac * q`, capped below `delta q / 2`.
fn max_errors(q: u32, s: usize, d: usize, frac: &BigRational) -> usize {
    let cap = (s * q as usize).saturating_sub(d + 1) / (2 * s);
    let qf = frac * BigRational::from_integer(BigInt::from(q));
    let e = if qf <= BigRational::zero() {
        return 0;
    } else if qf.is_integer() {
        qf.to_integer() - 1
    } else {
        qf.floor().to_integer()
    };
    e.to_usize().unwrap_or(usize::MAX).min(cap)
}

/// Unique decoding of an `s x q` word of the univariate order-`s`
/// multiplicity code of degree `<= d`: the polynomial whose encoding differs
/// from `y` in fewer than `max_err_frac * q` positions, if any. The radius is
/// capped below `delta/2`.
pub fn univariate_decode_symbols(
    f: &FieldCtx,
    y: &Matrix,
    d: usize,
    max_err_frac: &BigRational,
) -> Option<Poly> {
    let (s, q) = y.shape();
    if q != f.order() as usize || s == 0 || d >= s * q {
        return None;
    }
    let e = max_errors(q as u32, s, d, max_err_frac);
    let deg_e = s * e;
    let deg_n = d + s * e;
    let ncols = deg_e + 1 + deg_n + 1;
    let hasse = |u: usize, l: usize, t: Fe| {
        if l > u {
            Fe::ZERO
        } else {
            f.mul(f.binom(u as u64, l as u64), f.pow(t, (u - l) as u64))
        }
    };
    let mut rows = Vec::with_capacity(q * s);
    for t in f.elements() {
        let r = y.column(t.0 as usize);
        for j in 0..s {
            let mut row = vec![Fe::ZERO; ncols];
            for (v, slot) in row[deg_e + 1..].iter_mut().enumerate() {
                *slot = hasse(v, j, t);
            }
            for (u, slot) in row[..=deg_e].iter_mut().enumerate() {
                let mut acc = Fe::ZERO;
                for l in 0..=j.min(u) {
                    acc = f.add(acc, f.mul(hasse(u, l, t), r[j - l]));
                }
                *slot = f.neg(acc);
            }
            rows.push(row);
        }
    }
    let v = linalg::kernel_vector(rows, ncols, f)?;
    let big_e = Poly::from_coeffs(v[..=deg_e].to_vec());
    let big_n = Poly::from_coeffs(v[deg_e + 1..].to_vec());
    let (quo, rem) = big_n.divrem(&big_e, f).ok()?;
    if !rem.is_zero() || quo.degree().is_some_and(|g| g > d) {
        return None;
    }
    let enc = univariate_encode(&quo, s, f);
    let wrong = (0..q).filter(|&t| enc.column(t) != y.column(t)).count();
    (wrong <= e).then_some(quo)
}

/// Order-`s` evaluation of a univariate polynomial at every field element.
pub fn univariate_encode(p: &Poly, s: usize, f: &FieldCtx) -> Matrix {
    let derivs: Vec<Poly> = (0..s).map(|j| p.hasse_derivative(j, f)).collect();
    let cols = f.elements().map(|t| derivs.iter().map(|h| h.eval(t, f)).collect()).collect();
    Matrix::from_columns(s, cols).expect("uniform columns")
}

pub fn univariate_mult_decode(
    f: &FieldCtx,
    l: &LineTranscript,
    d: usize,
    max_err_frac: &BigRational,
) -> Option<Poly> {
    univariate_decode_symbols(f, &l.values, d, max_err_frac)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fail {
    LineDecode,
    NotInterpolating,
    Inconsistent,
    NotUnique,
    ParallelDirections,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOutcome {
    pub symbol: std::result::Result<Vec<Fe>, Fail>,
    pub queries: u64,
    pub attempts: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct LocalConfig {
    /// Whole-procedure repetitions before reporting failure.
    pub attempts: u32,
    /// Redraws of the second direction while it is parallel to the first.
    pub direction_retries: u32,
}

impl Default for LocalConfig {
    fn default() -> Self {
        LocalConfig { attempts: 10, direction_retries: 10 }
    }
}

/// Random-lines local self-correction of the symbol at `a`. Each attempt
/// queries `w` lines of `q` points.
pub fn local_correct<O, R>(
    params: &MultParams,
    r: &O,
    a: &[Fe],
    rng: &mut R,
    cfg: &LocalConfig,
) -> Result<LocalOutcome>
where
    O: SymbolOracle + ?Sized,
    R: Rng + ?Sized,
{
    params.check_point(a)?;
    let w = params.w();
    if params.n - 1 < w {
        return Err(Error::ParamOutOfRange(format!("need q^m - 1 >= w = {w} directions")));
    }
    let mut queries = 0;
    let mut last = Fail::LineDecode;
    for attempt in 1..=cfg.attempts.max(1) {
        let dirs: Vec<Vec<Fe>> = rand::seq::index::sample(rng, params.n - 1, w)
            .into_iter()
            .map(|i| params.point_of(i + 1))
            .collect();
        queries += (w * params.q() as usize) as u64;
        match local_attempt(params, r, a, &dirs)? {
            Ok(sym) => return Ok(LocalOutcome { symbol: Ok(sym), queries, attempts: attempt }),
            Err(e) => last = e,
        }
    }
    Ok(LocalOutcome { symbol: Err(last), queries, attempts: cfg.attempts.max(1) })
}

fn decode_line<O: SymbolOracle + ?Sized>(
    params: &MultParams,
    r: &O,
    a: &[Fe],
    b: &[Fe],
) -> Result<Option<Poly>> {
    let l = line_transcript(params, r, a, b)?;
    let half = params.delta() / BigRational::from_integer(BigInt::from(2));
    Ok(univariate_mult_decode(&params.field, &l, params.d, &half))
}

fn local_attempt<O: SymbolOracle + ?Sized>(
    params: &MultParams,
    r: &O,
    a: &[Fe],
    dirs: &[Vec<Fe>],
) -> Result<std::result::Result<Vec<Fe>, Fail>> {
    let f = &params.field;
    let mut lines = Vec::with_capacity(dirs.len());
    for b in dirs {
        lines.push(decode_line(params, r, a, b)?);
    }
    let Some(lines) = lines.into_iter().collect::<Option<Vec<Poly>>>() else {
        return Ok(Err(Fail::LineDecode));
    };
    let w = params.w();
    let full: Vec<Vec<Fe>> =
        dirs.iter().map(|b| params.exps.iter().map(|i| monomial_at(b, i, f)).collect()).collect();
    if linalg::rank(full.clone(), w, f) < w {
        return Ok(Err(Fail::NotInterpolating));
    }
    let mut out = Vec::with_capacity(w);
    let mut start = 0;
    for e in 0..params.s {
        let end = start + params.exps[start..].iter().take_while(|i| weight(i) as usize == e).count();
        let rows: Vec<Vec<Fe>> = full.iter().map(|row| row[start..end].to_vec()).collect();
        let rhs: Vec<Fe> = lines.iter().map(|qb| qb.coeff(e)).collect();
        let Some((sol, kernel)) = linalg::solve(&rows, &rhs, end - start, f) else {
            return Ok(Err(Fail::Inconsistent));
        };
        if !kernel.is_empty() {
            return Ok(Err(Fail::NotUnique));
        }
        out.extend(sol);
        start = end;
    }
    Ok(Ok(out))
}

/// Two-line correction for `m = s = 2`: `2q` queries per attempt. Returns
/// `(P(a), dP/dX(a), dP/dY(a))`.
pub fn bivariate_correct<O, R>(
    params: &MultParams,
    r: &O,
    a: &[Fe],
    rng: &mut R,
    cfg: &LocalConfig,
) -> Result<LocalOutcome>
where
    O: SymbolOracle + ?Sized,
    R: Rng + ?Sized,
{
    if params.m != 2 || params.s != 2 {
        return Err(Error::ParamOutOfRange(format!(
            "two-line correction needs m = s = 2, got m = {}, s = {}",
            params.m, params.s
        )));
    }
    params.check_point(a)?;
    let f = &params.field;
    let q = params.q() as usize;
    let mut queries = 0;
    let mut last = Fail::ParallelDirections;
    for attempt in 1..=cfg.attempts.max(1) {
        let b = params.point_of(rng.gen_range(1..params.n));
        let mut b2 = params.point_of(rng.gen_range(1..params.n));
        let det = |b2: &[Fe]| f.sub(f.mul(b[0], b2[1]), f.mul(b[1], b2[0]));
        let mut tries = 0;
        while det(&b2).is_zero() && tries < cfg.direction_retries {
            b2 = params.point_of(rng.gen_range(1..params.n));
            tries += 1;
        }
        let dt = det(&b2);
        if dt.is_zero() {
            last = Fail::ParallelDirections;
            continue;
        }
        queries += 2 * q as u64;
        let (Some(l1), Some(l2)) = (decode_line(params, r, a, &b)?, decode_line(params, r, a, &b2)?) else {
            last = Fail::LineDecode;
            continue;
        };
        if l1.coeff(0) != l2.coeff(0) {
            last = Fail::Inconsistent;
            continue;
        }
        // b . grad = l1'(0), b2 . grad = l2'(0)
        let (u, v) = (l1.coeff(1), l2.coeff(1));
        let px = f.div(f.sub(f.mul(u, b2[1]), f.mul(b[1], v)), dt)?;
        let py = f.div(f.sub(f.mul(b[0], v), f.mul(u, b2[0])), dt)?;
        return Ok(LocalOutcome { symbol: Ok(vec![l1.coeff(0), px, py]), queries, attempts: attempt });
    }
    Ok(LocalOutcome { symbol: Err(last), queries, attempts: cfg.attempts.max(1) })
}

impl crate::oracle::Code for MultParams {
    type Message = MultiPoly;

    fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Monomials of degree `<= d`, graded-lex.
    fn message_len(&self) -> usize {
        binom_big((self.d + self.m) as u64, self.m as u64).to_usize().expect("message length fits")
    }

    fn message_from_coeffs(&self, coeffs: Vec<Fe>) -> MultiPoly {
        let exps = exponents_below(self.m, self.d as u32 + 1);
        MultiPoly::from_map(self.m, exps.into_iter().zip(coeffs).collect())
    }

    fn encode_message(&self, msg: &MultiPoly) -> Matrix {
        encode_unchecked(self, msg, Exec::Sequential)
    }
}
