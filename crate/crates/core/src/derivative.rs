//! Derivative codes: column `i` holds `f(a_i), f'(a_i), ..., f^{(m-1)}(a_i)`.
//!
//! Decoding interpolates `Q = A_0 + sum A_i Y_i` so that `Q` and its images
//! under the operator `D` (a derivation with `D Y_i = Y_{i+1}`) vanish at
//! every column, then solves the linear differential equation
//! `A_0 + sum_i A_i f^{(i-1)} = 0` for the message.

use crate::affine::{AffineBuilder, AffineSolutionSet, Expr};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::frs_decode::{
    assemble, check_shape, interp_degree, prune_with, unknown_layout, DecodeConfig, DecodeResult,
    Diagnostics, InterpolationPoly,
};
use crate::linalg;
use crate::matrix::{Matrix, ReceivedWord};
use crate::poly::Poly;

/// A derivative codeword, `m x n`.
pub type DerCodeword = Matrix;

#[derive(Clone, Debug)]
pub struct DerParams {
    field: FieldCtx,
    n: usize,
    m: usize,
    k: usize,
    points: Vec<Fe>,
}

impl DerParams {
    /// Evaluation points default to `1, g, g^2, ...`.
    pub fn new(q: u64, n: usize, m: usize, k: usize) -> Result<Self> {
        let field = FieldCtx::new(q)?;
        if n >= field.order() as usize {
            return Err(Error::ParamOutOfRange(format!(
                "default points give at most {} distinct values; pass explicit points",
                field.order() - 1
            )));
        }
        let points = (0..n).map(|i| field.gamma_pow(i as u64)).collect();
        Self::with_points(field, m, k, points)
    }

    pub fn with_points(field: FieldCtx, m: usize, k: usize, points: Vec<Fe>) -> Result<Self> {
        let n = points.len();
        let q = field.order() as usize;
        if m == 0 || m > k || k >= n * m || n * m > q {
            return Err(Error::ParamOutOfRange(format!(
                "need 1 <= m <= k < n m <= q, got m = {m}, k = {k}, n = {n}, q = {q}"
            )));
        }
        if field.characteristic() as usize <= k {
            return Err(Error::ParamOutOfRange(format!(
                "characteristic {} must exceed k = {k}",
                field.characteristic()
            )));
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n || points.iter().any(|&a| !field.contains(a)) {
            return Err(Error::ParamOutOfRange("evaluation points must be distinct field elements".into()));
        }
        Ok(DerParams { field, n, m, k, points })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    /// Minimum distance `n - floor((k-1)/m)`.
    pub fn min_distance(&self) -> usize {
        self.n - (self.k - 1) / self.m
    }
}

pub fn der_encode(params: &DerParams, f: &Poly) -> Result<DerCodeword> {
    if let Some(d) = f.degree() {
        if d >= params.k {
            return Err(Error::DegreeTooLarge { degree: d, bound: params.k - 1 });
        }
    }
    Ok(encode_unchecked(params, f))
}

fn encode_unchecked(params: &DerParams, f: &Poly) -> DerCodeword {
    let fld = &params.field;
    let mut out = Matrix::zeros(params.m, params.n);
    let mut der = f.clone();
    for j in 0..params.m {
        for (i, &a) in params.points.iter().enumerate() {
            out.set(j, i, der.eval(a, fld));
        }
        der = der.formal_derivative(1, fld);
    }
    out
}

impl crate::oracle::Code for DerParams {
    type Message = Poly;

    fn field(&self) -> &FieldCtx {
        &self.field
    }

    fn message_len(&self) -> usize {
        self.k
    }

    fn message_from_coeffs(&self, coeffs: Vec<Fe>) -> Poly {
        Poly::from_coeffs(coeffs)
    }

    fn encode_message(&self, msg: &Poly) -> Matrix {
        encode_unchecked(self, msg)
    }
}

/// `B_0(X) + sum_{i=1}^{m} B_i(X) Y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DOperatorPoly {
    /// `B_0, B_1, ..., B_m`.
    pub parts: Vec<Poly>,
}

impl DOperatorPoly {
    pub fn new(m: usize) -> Self {
        DOperatorPoly { parts: vec![Poly::zero(); m + 1] }
    }

    pub fn from_interpolation(q: &InterpolationPoly, m: usize) -> Result<Self> {
        if q.s() > m {
            return Err(Error::IndexOverflow { index: q.s() });
        }
        let mut parts = q.coeffs.clone();
        parts.resize(m + 1, Poly::zero());
        Ok(DOperatorPoly { parts })
    }

    pub fn m(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn eval(&self, x: Fe, ys: &[Fe], f: &FieldCtx) -> Fe {
        let mut acc = self.parts[0].eval(x, f);
        for (b, &y) in self.parts[1..].iter().zip(ys) {
            if !b.is_zero() {
                acc = f.add(acc, f.mul(b.eval(x, f), y));
            }
        }
        acc
    }

    pub fn add(&self, other: &DOperatorPoly, f: &FieldCtx) -> DOperatorPoly {
        DOperatorPoly { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b, f)).collect() }
    }

    pub fn scale(&self, c: Fe, f: &FieldCtx) -> DOperatorPoly {
        DOperatorPoly { parts: self.parts.iter().map(|a| a.scale(c, f)).collect() }
    }

    /// `D(p Y_i) = p' Y_i + p Y_{i+1}` and `D(p) = p'`. Fails instead of
    /// producing `Y_{m+1}`.
    pub fn d_operator(&self, f: &FieldCtx) -> Result<DOperatorPoly> {
        let m = self.m();
        if !self.parts[m].is_zero() && m > 0 {
            return Err(Error::IndexOverflow { index: m + 1 });
        }
        let mut out: Vec<Poly> = self.parts.iter().map(|p| p.formal_derivative(1, f)).collect();
        for i in 1..m {
            out[i + 1] = out[i + 1].add(&self.parts[i], f);
        }
        Ok(DOperatorPoly { parts: out })
    }
}

/// `d = floor((n(m-s+1) - k + 1) / (s+1))`.
pub fn der_interp_degree(params: &DerParams, s: usize) -> Result<usize> {
    check_s(params, s)?;
    interp_degree(params.n * (params.m - s + 1), params.k, s)
}

/// Smallest agreement `floor((d+k-1)/(m-s+1)) + 1` that guarantees a message
/// survives.
pub fn der_threshold(params: &DerParams, s: usize) -> Result<usize> {
    let d = der_interp_degree(params, s)?;
    Ok((d + params.k - 1) / (params.m - s + 1) + 1)
}

fn check_s(params: &DerParams, s: usize) -> Result<()> {
    if s == 0 || s > params.m {
        return Err(Error::ParamOutOfRange(format!("s = {s} must lie in 1..={}", params.m)));
    }
    Ok(())
}

/// `e (e-1) ... (e-t+1)` in the field.
fn falling(e: usize, t: usize, f: &FieldCtx) -> Fe {
    if t > e {
        return Fe::ZERO;
    }
    (e + 1 - t..=e).fold(Fe::ONE, |acc, v| f.mul(acc, f.from_u64(v as u64)))
}

/// Rows `(D^c Q)(a_i, y_{1i}, ..., y_{mi}) = 0` for every column `i` and
/// `c = 0..=m-s`; `n (m - s + 1)` rows. Uses
/// `D^c (p Y_l) = sum_t C(c, t) p^{(t)} Y_{l+c-t}`.
pub fn der_constraint_matrix(params: &DerParams, y: &ReceivedWord, s: usize, d: usize) -> Vec<Vec<Fe>> {
    let f = &params.field;
    let layout = unknown_layout(s, d, params.k);
    let mut rows = Vec::with_capacity(params.n * (params.m - s + 1));
    for (i, &a) in params.points.iter().enumerate() {
        let pows: Vec<Fe> = (0..d + params.k).map(|e| f.pow(a, e as u64)).collect();
        // (X^e)^{(t)} at a
        let dmono = |e: usize, t: usize| if t > e { Fe::ZERO } else { f.mul(falling(e, t, f), pows[e - t]) };
        for c in 0..=params.m - s {
            let row = layout
                .iter()
                .map(|&(l, e)| {
                    if l == 0 {
                        return dmono(e, c);
                    }
                    (0..=c).fold(Fe::ZERO, |acc, t| {
                        let term = f.mul(f.binom(c as u64, t as u64), dmono(e, t));
                        f.add(acc, f.mul(term, y.get(l + c - t - 1, i)))
                    })
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

pub fn der_interpolate(params: &DerParams, y: &ReceivedWord, s: usize) -> Result<InterpolationPoly> {
    check_shape(y, params.m, params.n)?;
    let d = der_interp_degree(params, s)?;
    let rows = der_constraint_matrix(params, y, s, d);
    let layout = unknown_layout(s, d, params.k);
    assert!(layout.len() > rows.len(), "more unknowns than constraints");
    let v = linalg::kernel_vector(rows, layout.len(), &params.field)
        .expect("an underdetermined homogeneous system has a nonzero solution");
    Ok(assemble(&layout, &v, s, d))
}

/// Back-substitution assuming `A_s(0) != 0`: the coefficient of `X^r` in
/// `A_0 + sum A_i f^{(i-1)}` determines `f_{r+s-1}` through the factor
/// `A_s(0) (r+s-1)!/r!`, leaving `f_0, ..., f_{s-2}` free. Returns the exact
/// solution set and the number of free coordinates.
pub fn der_solve_affine_raw(q: &InterpolationPoly, params: &DerParams) -> Result<(AffineSolutionSet, usize)> {
    let f = &params.field;
    let k = params.k;
    let s = q.s();
    let a = &q.coeffs;
    let as0 = a[s].coeff(0);
    if as0.is_zero() {
        return Err(Error::ShiftRequired);
    }
    let top = a
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.degree().map(|dg| if i == 0 { dg } else { dg + k }))
        .max()
        .unwrap_or(0);
    let mut b = AffineBuilder::new(k);
    for _ in 0..(s - 1).min(k) {
        b.push_free();
    }
    for r in 0..=top {
        let mut sum = Expr::constant(k, a[0].coeff(r));
        for (i, ai) in a.iter().enumerate().skip(1) {
            for j in 0..=r.min(ai.len()) {
                if i == s && j == 0 {
                    continue;
                }
                let idx = r - j + i - 1;
                let aij = ai.coeff(j);
                if idx >= k || aij.is_zero() {
                    continue;
                }
                let c = f.mul(aij, falling(idx, i - 1, f));
                sum.add_scaled(c, b.unknown(idx).expect("lower index already determined"), f);
            }
        }
        let lead = r + s - 1;
        if lead < k {
            let fact = falling(lead, s - 1, f);
            assert!(!fact.is_zero(), "(r+s-1)!/r! vanishes although char > k");
            sum.scale(f.neg(f.inv_nonzero(f.mul(as0, fact))), f);
            b.push(sum);
        } else {
            b.constrain(sum);
        }
    }
    let free = b.free_count();
    Ok((b.finish(f), free))
}

/// Outcome of [`der_solve_affine`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerSolve {
    pub set: AffineSolutionSet,
    /// Free coordinates during back-substitution.
    pub free: usize,
    /// Largest `i` with `A_i` nonzero.
    pub s_used: usize,
    /// Translation `X -> X + b` applied when `A_s(0) = 0`.
    pub shift: Option<Fe>,
}

/// Exact solution set of `A_0 + sum A_i f^{(i-1)} = 0` over `deg f < k`.
/// Trailing zero `A_i` are dropped; if the top `A_s` vanishes at `0` the
/// problem is translated by the smallest `b` with `A_s(b) != 0`.
pub fn der_solve_affine(q: &InterpolationPoly, params: &DerParams) -> Result<DerSolve> {
    let f = &params.field;
    if q.is_zero() {
        return Err(Error::ParamOutOfRange("interpolation polynomial is zero".into()));
    }
    let Some(s_used) = (1..=q.s()).rev().find(|&i| !q.coeffs[i].is_zero()) else {
        return Ok(DerSolve { set: AffineSolutionSet::empty(params.k), free: 0, s_used: 0, shift: None });
    };
    let trimmed = InterpolationPoly::new(q.coeffs[..=s_used].to_vec(), q.d);
    let lead = &trimmed.coeffs[s_used];
    if !lead.coeff(0).is_zero() {
        let (set, free) = der_solve_affine_raw(&trimmed, params)?;
        return Ok(DerSolve { set, free, s_used, shift: None });
    }
    let beta = f.elements().find(|&b| !lead.eval(b, f).is_zero()).ok_or(Error::ShiftRequired)?;
    let moved = InterpolationPoly::new(trimmed.coeffs.iter().map(|p| p.translate(beta, f)).collect(), q.d);
    let (set, free) = der_solve_affine_raw(&moved, params)?;
    if set.is_empty() {
        return Ok(DerSolve { set, free, s_used, shift: Some(beta) });
    }
    let back = |v: &[Fe]| Poly::from_coeffs(v.to_vec()).translate(f.neg(beta), f).padded(params.k);
    let basis = set.basis().iter().map(|v| back(v)).collect();
    let offset = back(set.offset());
    Ok(DerSolve { set: AffineSolutionSet::from_parts(params.k, basis, offset, f), free, s_used, shift: Some(beta) })
}

/// Interpolate, solve and prune at threshold `floor((d+k-1)/(m-s+1)) + 1`.
pub fn der_list_decode(params: &DerParams, y: &ReceivedWord, s: usize, cfg: &DecodeConfig) -> Result<DecodeResult> {
    let q = der_interpolate(params, y, s)?;
    let t = der_threshold(params, s)?;
    let sol = der_solve_affine(&q, params)?;
    let (candidates, enumerated) = prune_with(&sol.set, &params.field, y, t, cfg, |m| encode_unchecked(params, m))?;
    Ok(DecodeResult {
        candidates,
        diagnostics: Diagnostics {
            d: q.d,
            threshold: t,
            constraint_rows: params.n * (params.m - s + 1),
            unknowns: unknown_layout(s, q.d, params.k).len(),
            free_coords: sol.free,
            dim: sol.set.dim(),
            enumerated,
            nodes: 0,
            s_used: sol.s_used,
            shift: sol.shift,
        },
    })
}
