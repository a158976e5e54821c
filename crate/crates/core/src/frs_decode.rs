//! Linear-algebraic list decoding of folded Reed-Solomon codes.
//!
//! Interpolate `Q = A_0(X) + A_1(X) Y_1 + ... + A_s(X) Y_s` through every
//! length-`s` window of every column, then solve
//! `A_0(X) + sum_i A_i(X) f(g^{i-1} X) = 0` for the coefficients of `f`
//! by back-substitution and prune the resulting affine space.

use crate::affine::{AffineBuilder, AffineSolutionSet, Expr};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::frs::{encode_unchecked, FrsParams};
use crate::linalg;
use crate::matrix::{Matrix, ReceivedWord};
use crate::multipoly::MultiPoly;
use crate::par::{self, Exec};
use crate::poly::Poly;

/// `Q(X, Y_1..Y_s) = A_0 + sum A_i Y_i` with `deg A_0 <= d + k - 1` and
/// `deg A_i <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationPoly {
    /// `A_0, A_1, ..., A_s`.
    pub coeffs: Vec<Poly>,
    pub d: usize,
}

impl InterpolationPoly {
    pub fn new(coeffs: Vec<Poly>, d: usize) -> Self {
        assert!(coeffs.len() >= 2, "need A_0 and at least A_1");
        InterpolationPoly { coeffs, d }
    }

    pub fn s(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, x: Fe, ys: &[Fe], f: &FieldCtx) -> Fe {
        let mut acc = self.coeffs[0].eval(x, f);
        for (a, &y) in self.coeffs[1..].iter().zip(ys) {
            acc = f.add(acc, f.mul(a.eval(x, f), y));
        }
        acc
    }

    /// `A_0 + sum_i A_i(X) f(g^{i-1} X)`.
    pub fn compose_shift(&self, fpoly: &Poly, gamma: Fe, f: &FieldCtx) -> Poly {
        let mut acc = self.coeffs[0].clone();
        let mut g = Fe::ONE;
        for a in &self.coeffs[1..] {
            acc = acc.add(&a.mul(&fpoly.scale_arg(g, f), f), f);
            g = f.mul(g, gamma);
        }
        acc
    }

    /// `A_0 + sum_i A_i(X) f^{(i-1)}(X)` with formal derivatives.
    pub fn compose_derivative(&self, fpoly: &Poly, f: &FieldCtx) -> Poly {
        let mut acc = self.coeffs[0].clone();
        for (i, a) in self.coeffs[1..].iter().enumerate() {
            acc = acc.add(&a.mul(&fpoly.formal_derivative(i, f), f), f);
        }
        acc
    }

    /// As a polynomial in `X, Y_1, ..., Y_s` (variable 0 is `X`).
    pub fn to_multipoly(&self, f: &FieldCtx) -> MultiPoly {
        let arity = self.coeffs.len();
        let mut out = MultiPoly::zero(arity);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (e, &c) in a.coeffs().iter().enumerate() {
                let mut exp = vec![0u32; arity];
                exp[0] = e as u32;
                if i > 0 {
                    exp[i] = 1;
                }
                out.add_term(exp, c, f);
            }
        }
        out
    }
}

/// One decoded message with its column agreement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub message: Poly,
    pub agreement: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Degree parameter of the interpolation polynomial.
    pub d: usize,
    /// Agreement threshold used for pruning.
    pub threshold: usize,
    pub constraint_rows: usize,
    pub unknowns: usize,
    /// Coordinates left free during back-substitution.
    pub free_coords: usize,
    /// Final affine dimension.
    pub dim: usize,
    /// Candidates checked during pruning.
    pub enumerated: u64,
    /// Recursion nodes visited by the lifting decoder.
    pub nodes: u64,
    /// Window size actually used by the derivative solver.
    pub s_used: usize,
    /// Translation applied by the derivative solver.
    pub shift: Option<Fe>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    /// Sorted by message, no duplicates.
    pub candidates: Vec<Candidate>,
    pub diagnostics: Diagnostics,
}

impl DecodeResult {
    pub fn contains(&self, f: &Poly) -> bool {
        self.candidates.iter().any(|c| &c.message == f)
    }

    pub fn messages(&self) -> Vec<Poly> {
        self.candidates.iter().map(|c| c.message.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecodeConfig {
    /// Cap on `q^{d~}` points enumerated while pruning.
    pub prune_budget: u64,
    /// Cap on recursion nodes for the lifting decoder.
    pub node_budget: u64,
    pub exec: Exec,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig { prune_budget: 1_000_000, node_budget: 100_000, exec: Exec::default() }
    }
}

/// `d = floor((N(m-s+1) - k + 1) / (s+1))`.
pub fn frs_interp_degree(params: &FrsParams, s: usize) -> Result<usize> {
    check_s(params, s)?;
    let rows = params.block_length() * (params.m() - s + 1);
    interp_degree(rows, params.k(), s)
}

pub(crate) fn interp_degree(rows: usize, k: usize, s: usize) -> Result<usize> {
    if rows + 1 < k {
        return Err(Error::ParamOutOfRange(format!(
            "{rows} constraints cannot support k = {k}"
        )));
    }
    Ok((rows + 1 - k) / (s + 1))
}

/// `t = ceil((d + k) / (m - s + 1))`.
pub fn frs_threshold(params: &FrsParams, s: usize) -> Result<usize> {
    let d = frs_interp_degree(params, s)?;
    Ok((d + params.k()).div_ceil(params.m() - s + 1))
}

fn check_s(params: &FrsParams, s: usize) -> Result<()> {
    if s == 0 || s > params.m() {
        return Err(Error::ParamOutOfRange(format!("s = {s} must lie in 1..={}", params.m())));
    }
    Ok(())
}

pub(crate) fn check_shape(y: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if y.shape() != (rows, cols) {
        return Err(Error::ShapeMismatch { expected: (rows, cols), got: y.shape() });
    }
    Ok(())
}

/// Unknowns of `Q` as `(i, e)` meaning the coefficient of `X^e` in `A_i`,
/// ordered by `e` first and `i` second.
pub(crate) fn unknown_layout(s: usize, d: usize, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity((d + 1) * s + d + k);
    for e in 0..d + k {
        out.push((0, e));
        if e <= d {
            for i in 1..=s {
                out.push((i, e));
            }
        }
    }
    out
}

pub(crate) fn assemble(layout: &[(usize, usize)], v: &[Fe], s: usize, d: usize) -> InterpolationPoly {
    let mut coeffs = vec![Vec::new(); s + 1];
    for (&(i, e), &c) in layout.iter().zip(v) {
        let a = &mut coeffs[i];
        if a.len() <= e {
            a.resize(e + 1, Fe::ZERO);
        }
        a[e] = c;
    }
    InterpolationPoly::new(coeffs.into_iter().map(Poly::from_coeffs).collect(), d)
}

/// Homogeneous system for `Q`: one row per column `i` and window start
/// `j = 0..=m-s`, so `N (m - s + 1)` rows.
pub fn frs_constraint_matrix(params: &FrsParams, y: &ReceivedWord, s: usize, d: usize) -> Vec<Vec<Fe>> {
    let f = params.field();
    let layout = unknown_layout(s, d, params.k());
    let mut rows = Vec::with_capacity(params.block_length() * (params.m() - s + 1));
    for i in 0..params.block_length() {
        for j in 0..=params.m() - s {
            let x = params.point(j, i);
            let pows: Vec<Fe> = (0..d + params.k()).map(|e| f.pow(x, e as u64)).collect();
            let row = layout
                .iter()
                .map(|&(l, e)| if l == 0 { pows[e] } else { f.mul(pows[e], y.get(j + l - 1, i)) })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Finds a nonzero `Q` vanishing on every window of `y`.
pub fn interpolate(params: &FrsParams, y: &ReceivedWord, s: usize) -> Result<InterpolationPoly> {
    check_shape(y, params.m(), params.block_length())?;
    let d = frs_interp_degree(params, s)?;
    let rows = frs_constraint_matrix(params, y, s, d);
    let layout = unknown_layout(s, d, params.k());
    assert!(layout.len() > rows.len(), "more unknowns than constraints");
    let v = linalg::kernel_vector(rows, layout.len(), params.field())
        .expect("an underdetermined homogeneous system has a nonzero solution");
    Ok(assemble(&layout, &v, s, d))
}

/// Affine space containing every `f` of degree `< k` that solves
/// `A_0 + sum_i A_i(X) f(g^{i-1} X) = 0`. The returned set is exactly the
/// solution set.
pub fn solve_affine(q: &InterpolationPoly, params: &FrsParams) -> Result<AffineSolutionSet> {
    Ok(solve_affine_with_stats(q, params)?.0)
}

/// As [`solve_affine`], also returning the number of coordinates left free
/// during back-substitution.
pub fn solve_affine_with_stats(
    q: &InterpolationPoly,
    params: &FrsParams,
) -> Result<(AffineSolutionSet, usize)> {
    let f = params.field();
    let k = params.k();
    let gamma = params.gamma();
    let s = q.s();
    let Some(r0) = q.coeffs.iter().filter_map(Poly::x_valuation).min() else {
        return Err(Error::ParamOutOfRange("interpolation polynomial is zero".into()));
    };
    let a: Vec<Poly> = q.coeffs.iter().map(|p| p.shr(r0)).collect();
    if a[1..].iter().all(|p| p.coeff(0).is_zero()) {
        // Only A_0 has a constant term, so the constant coefficient is a
        // nonzero constant.
        return Ok((AffineSolutionSet::empty(k), 0));
    }
    let top = a
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.degree().map(|dg| if i == 0 { dg } else { dg + k - 1 }))
        .max()
        .unwrap_or(0);
    // gpow[i][t] = g^{i t}
    let gpow: Vec<Vec<Fe>> = (0..s)
        .map(|i| (0..k.max(1)).map(|t| f.gamma_pow((i * t) as u64)).collect())
        .collect();
    debug_assert!(gamma == f.gamma_pow(1));
    let mut b = AffineBuilder::new(k);
    for r in 0..=top {
        let mut sum = Expr::constant(k, a[0].coeff(r));
        for j in 1..=r {
            let t = r - j;
            if t >= k {
                continue;
            }
            let mut c = Fe::ZERO;
            for i in 1..=s {
                let aij = a[i].coeff(j);
                if !aij.is_zero() {
                    c = f.add(c, f.mul(aij, gpow[i - 1][t]));
                }
            }
            if let Some(e) = b.unknown(t) {
                sum.add_scaled(c, e, f);
            }
        }
        if r < k {
            let mut bval = Fe::ZERO;
            for i in 1..=s {
                bval = f.add(bval, f.mul(a[i].coeff(0), gpow[i - 1][r]));
            }
            if bval.is_zero() {
                b.constrain(sum);
                b.push_free();
            } else {
                sum.scale(f.neg(f.inv_nonzero(bval)), f);
                b.push(sum);
            }
        } else {
            b.constrain(sum);
        }
    }
    while b.determined() < k {
        b.push_free();
    }
    let free = b.free_count();
    Ok((b.finish(f), free))
}

/// Enumerates every point of `set` and keeps those whose encoding agrees
/// with `y` in at least `t` columns.
pub fn prune_with<E>(
    set: &AffineSolutionSet,
    f: &FieldCtx,
    y: &ReceivedWord,
    t: usize,
    cfg: &DecodeConfig,
    encode: E,
) -> Result<(Vec<Candidate>, u64)>
where
    E: Fn(&Poly) -> Matrix + Sync + Send,
{
    let size = set.size(f.order());
    if size > cfg.prune_budget as u128 {
        return Err(Error::BudgetExceeded { needed: size, budget: cfg.prune_budget });
    }
    let mut out = par::filter_map_range(cfg.exec, size as u64, |idx| {
        let msg = Poly::from_coeffs(set.point_at(idx, f));
        let agreement = encode(&msg).agreement(y).expect("encoder shape matches received word");
        (agreement >= t).then_some(Candidate { message: msg, agreement })
    });
    out.sort();
    out.dedup();
    Ok((out, size as u64))
}

pub fn prune(
    params: &FrsParams,
    set: &AffineSolutionSet,
    y: &ReceivedWord,
    t: usize,
    cfg: &DecodeConfig,
) -> Result<(Vec<Candidate>, u64)> {
    check_shape(y, params.m(), params.block_length())?;
    prune_with(set, params.field(), y, t, cfg, |m| encode_unchecked(params, m))
}

/// Interpolate, solve and prune. The output contains every message whose
/// encoding agrees with `y` in at least `t = ceil((d+k)/(m-s+1))` columns,
/// and nothing else.
pub fn list_decode(params: &FrsParams, y: &ReceivedWord, s: usize, cfg: &DecodeConfig) -> Result<DecodeResult> {
    let q = interpolate(params, y, s)?;
    let t = frs_threshold(params, s)?;
    let (set, free) = solve_affine_with_stats(&q, params)?;
    let (candidates, enumerated) = prune(params, &set, y, t, cfg)?;
    Ok(DecodeResult {
        candidates,
        diagnostics: Diagnostics {
            d: q.d,
            threshold: t,
            constraint_rows: params.block_length() * (params.m() - s + 1),
            unknowns: unknown_layout(s, q.d, params.k()).len(),
            free_coords: free,
            dim: set.dim(),
            enumerated,
            nodes: 0,
            s_used: s,
            shift: None,
        },
    })
}
