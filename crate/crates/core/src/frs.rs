//! Folded Reed-Solomon codes.
//!
//! A message `f` of degree `< k` is evaluated at `1, g, g^2, ..., g^{n-1}`
//! for a primitive `g` and `n = q - 1`; the evaluations are bundled into
//! `N = n / m` columns of `m` consecutive values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// An FRS codeword, `m x N`.
pub type FrsCodeword = Matrix;

#[derive(Clone, Debug)]
pub struct FrsParams {
    field: FieldCtx,
    gamma: Fe,
    m: usize,
    big_n: usize,
    k: usize,
}

impl FrsParams {
    /// Code over `GF(q)` with folding `m` and dimension `k`; `N` is `(q-1)/m`.
    pub fn new(q: u64, m: usize, k: usize) -> Result<Self> {
        let field = FieldCtx::new(q)?;
        Self::with_field(field, m, k)
    }

    pub fn with_field(field: FieldCtx, m: usize, k: usize) -> Result<Self> {
        let n = field.order() as usize - 1;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::ParamOutOfRange(format!("m = {m} must divide n = {n}")));
        }
        if k == 0 || k > n {
            return Err(Error::ParamOutOfRange(format!("k = {k} must lie in 1..={n}")));
        }
        let gamma = field.find_primitive();
        Ok(FrsParams { field, gamma, m, big_n: n / m, k })
    }

    /// As [`FrsParams::new`] but also checks a requested block length.
    pub fn with_block_length(q: u64, m: usize, big_n: usize, k: usize) -> Result<Self> {
        let p = Self::new(q, m, k)?;
        if p.big_n != big_n {
            return Err(Error::ParamOutOfRange(format!(
                "N = {big_n} but (q-1)/m = {}",
                p.big_n
            )));
        }
        Ok(p)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Block length `N`.
    pub fn block_length(&self) -> usize {
        self.big_n
    }

    /// Unfolded length `n = N m`.
    pub fn n(&self) -> usize {
        self.big_n * self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn check_message(&self, f: &Poly) -> Result<()> {
        match f.degree() {
            Some(d) if d >= self.k => Err(Error::DegreeTooLarge { degree: d, bound: self.k - 1 }),
            _ => Ok(()),
        }
    }

    /// Evaluation point of row `j`, column `i`.
    pub fn point(&self, j: usize, i: usize) -> Fe {
        self.field.gamma_pow((i * self.m + j) as u64)
    }
}

pub fn frs_encode(params: &FrsParams, f: &Poly) -> Result<FrsCodeword> {
    params.check_message(f)?;
    Ok(encode_unchecked(params, f))
}

pub(crate) fn encode_unchecked(params: &FrsParams, f: &Poly) -> FrsCodeword {
    let fld = params.field();
    let mut out = Matrix::zeros(params.m, params.big_n);
    for i in 0..params.big_n {
        for j in 0..params.m {
            out.set(j, i, f.eval(params.point(j, i), fld));
        }
    }
    out
}

/// Rate `k / (N m)` and minimum distance `N - ceil(k/m) + 1`.
pub fn frs_derived_params(params: &FrsParams) -> (BigRational, usize) {
    let rate = BigRational::new(BigInt::from(params.k), BigInt::from(params.n()));
    let dmin = params.big_n + 1 - params.k.div_ceil(params.m);
    (rate, dmin)
}

/// Number of column errors `e` guaranteed correctable with window size `s`
/// and slack `delta`: the largest integer `e` with
/// `(1 + delta) (k^s N (m-s+1))^{1/(s+1)} <= (N - e)(m-s+1)`.
/// Computed exactly by comparing `(s+1)`-th powers.
pub fn frs_decoding_radius(params: &FrsParams, s: usize, delta: &BigRational) -> Result<i64> {
    if s == 0 || s > params.m {
        return Err(Error::ParamOutOfRange(format!("s = {s} must lie in 1..={}", params.m)));
    }
    if delta.is_negative() {
        return Err(Error::ParamOutOfRange("delta must be non-negative".into()));
    }
    let w = BigInt::from(params.m - s + 1);
    let big_n = BigInt::from(params.big_n);
    let radicand = BigInt::from(params.k).pow(s as u32) * &big_n * &w;
    let one_plus = BigRational::one() + delta;
    let fits = |e: &BigInt| -> bool {
        let c = BigRational::from_integer((&big_n - e) * &w) / &one_plus;
        if c.is_negative() {
            return false;
        }
        let pow = num_traits::pow(c, s + 1);
        pow >= BigRational::from_integer(radicand.clone())
    };
    let mut hi = big_n.clone();
    if fits(&hi) {
        return Ok(params.big_n as i64);
    }
    let slack = (BigRational::from_integer(radicand.clone()) * &one_plus).ceil().to_integer();
    let mut lo = &big_n - slack.max(BigInt::one());
    debug_assert!(fits(&lo));
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo.to_i64().ok_or_else(|| Error::ParamOutOfRange("radius out of range".into()))
}

/// Window size, folding and slack aimed at correcting a `1 - R - eps`
/// fraction of errors: `s = ceil(1/eps)`, `m = s^2`, `delta = eps`.
pub fn choose_capacity_params(eps: &BigRational) -> Result<(usize, usize, BigRational)> {
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::ParamOutOfRange("eps must lie in (0, 1)".into()));
    }
    let s = eps.recip().ceil().to_integer().to_usize().expect("s fits usize");
    Ok((s, s * s, eps.clone()))
}

impl crate::oracle::Code for FrsParams {
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
