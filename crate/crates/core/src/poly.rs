//! Dense univariate polynomials over a [`FieldCtx`].

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// Dense polynomial, lowest degree first, with no trailing zero coefficient.
/// The zero polynomial has no coefficients and degree `None` (i.e. -inf).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

/// Lexicographic on coefficient vectors (constant term most significant),
/// missing coefficients read as zero. This matches the enumeration order of
/// messages by index.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        for i in 0..n {
            let a = self.coeff(i);
            let b = other.coeff(i);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * X^deg`.
    pub fn monomial(c: Fe, deg: usize) -> Self {
        let mut v = vec![Fe::ZERO; deg + 1];
        v[deg] = c;
        Self::from_coeffs(v)
    }

    pub fn x() -> Self {
        Self::monomial(Fe::ONE, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient vector padded (or truncated) to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Fe> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of coefficients in the canonical form (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.len().max(other.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.len().max(other.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Fe, f: &FieldCtx) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Poly, f: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Multiplies by `X^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe, f: &FieldCtx) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `p(c X)`.
    pub fn scale_arg(&self, c: Fe, f: &FieldCtx) -> Poly {
        let mut pw = Fe::ONE;
        let mut out = Vec::with_capacity(self.len());
        for &a in &self.coeffs {
            out.push(f.mul(a, pw));
            pw = f.mul(pw, c);
        }
        Poly::from_coeffs(out)
    }

    /// `p(X + b)`.
    pub fn translate(&self, b: Fe, f: &FieldCtx) -> Poly {
        // Horner in the ring: ((c_n)(X+b) + c_{n-1})(X+b) + ...
        let xb = Poly::from_coeffs(vec![b, Fe::ONE]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(&xb, f).add(&Poly::constant(c), f))
    }

    /// Largest `r` with `X^r | p`; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `X^r` (drops the low `r` coefficients).
    pub fn shr(&self, r: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().skip(r).copied().collect())
    }

    /// Iterated formal derivative; the coefficient of `X^j` in `p'` is
    /// `(j + 1) p_{j+1}`.
    pub fn formal_derivative(&self, order: usize, f: &FieldCtx) -> Poly {
        let mut cur = self.clone();
        for _ in 0..order {
            if cur.is_zero() {
                break;
            }
            let v = (1..cur.len()).map(|j| f.mul(f.from_u64(j as u64), cur.coeffs[j])).collect();
            cur = Poly::from_coeffs(v);
        }
        cur
    }

    /// Univariate Hasse derivative: coefficient of `Z^j` in `p(X + Z)`.
    pub fn hasse_derivative(&self, j: usize, f: &FieldCtx) -> Poly {
        if j >= self.len() {
            return Poly::zero();
        }
        let v = (j..self.len())
            .map(|l| f.mul(f.binom(l as u64, j as u64), self.coeffs[l]))
            .collect();
        Poly::from_coeffs(v)
    }

    /// Euclidean division; errors when dividing by zero.
    pub fn divrem(&self, divisor: &Poly, f: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv_nonzero(divisor.lead());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Remainder of `self` modulo `X^n - c` (cheap wraparound reduction).
    pub fn rem_binomial(&self, n: usize, c: Fe, f: &FieldCtx) -> Poly {
        assert!(n > 0);
        let mut out = vec![Fe::ZERO; n.min(self.len())];
        for (j, &a) in self.coeffs.iter().enumerate() {
            // X^j = X^(j mod n) * (X^n)^(j / n) = X^(j mod n) * c^(j / n)
            let t = f.mul(a, f.pow(c, (j / n) as u64));
            out[j % n] = f.add(out[j % n], t);
        }
        Poly::from_coeffs(out)
    }

    /// Space-separated coefficients, lowest first; the zero polynomial is `0`.
    pub fn to_text(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return f.format_elem(Fe::ZERO);
        }
        let parts: Vec<String> = self.coeffs.iter().map(|&c| f.format_elem(c)).collect();
        parts.join(" ")
    }

    pub fn from_text(s: &str, f: &FieldCtx) -> Result<Poly> {
        let coeffs = s.split_whitespace().map(|t| f.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

/// Checks the Frobenius-type identity `f(gamma X) = f(X)^q mod (X^{q-1} - gamma)`
/// for `deg f < q - 1`, with `gamma` the context's primitive element.
pub fn frobenius_shift_check(fpoly: &Poly, ctx: &FieldCtx) -> Result<bool> {
    let q = ctx.order() as usize;
    let n = q - 1;
    if let Some(d) = fpoly.degree() {
        if d >= n {
            return Err(Error::DegreeTooLarge { degree: d, bound: n.saturating_sub(1) });
        }
    }
    let gamma = ctx.find_primitive();
    let lhs = fpoly.scale_arg(gamma, ctx).rem_binomial(n, gamma, ctx);
    // f^q by square-and-multiply, reducing after each product
    let mut result = Poly::constant(Fe::ONE);
    let mut base = fpoly.rem_binomial(n, gamma, ctx);
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base, ctx).rem_binomial(n, gamma, ctx);
        }
        base = base.mul(&base, ctx).rem_binomial(n, gamma, ctx);
        e >>= 1;
    }
    Ok(lhs == result)
}
