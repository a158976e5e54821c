//! Sparse multivariate polynomials, Hasse derivatives and multiplicities.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// Exponent vector.
pub type Exponent = Vec<u32>;

/// Sparse polynomial in a fixed number of variables. Never stores a zero
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, Fe>,
}

/// Vanishing order of a polynomial at a point; `Infinite` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

pub fn weight(i: &[u32]) -> u32 {
    i.iter().sum()
}

/// All exponent vectors of weight exactly `w` in `n` variables, in
/// lexicographically descending order (so `(1,0)` precedes `(0,1)`).
pub fn exponents_of_weight(n: usize, w: u32) -> Vec<Exponent> {
    fn rec(n: usize, w: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if n == 1 {
            prefix.push(w);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=w).rev() {
            prefix.push(first);
            rec(n - 1, w - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if w == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, w, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All exponent vectors of weight `< s` in graded-lexicographic order.
pub fn exponents_below(n: usize, s: u32) -> Vec<Exponent> {
    (0..s).flat_map(|w| exponents_of_weight(n, w)).collect()
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Fe) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn monomial(exp: Exponent, c: Fe) -> Self {
        let arity = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { arity, terms }
    }

    /// The variable with index `i`.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(e, Fe::ONE)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(arity: usize, terms: I, f: &FieldCtx) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Fe)>,
    {
        let mut out = MultiPoly::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: e.len() });
            }
            out.add_term(e, c, f);
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, Fe)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> Fe {
        self.terms.get(exp).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Fe, f: &FieldCtx) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.arity);
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Drops zero coefficients from an accumulated map.
    pub(crate) fn from_map(arity: usize, mut terms: BTreeMap<Exponent, Fe>) -> Self {
        terms.retain(|_, v| !v.is_zero());
        MultiPoly { arity, terms }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| weight(e)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn add(&self, other: &MultiPoly, f: &FieldCtx) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c, f);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly, f: &FieldCtx) -> MultiPoly {
        self.add(&other.neg(f), f)
    }

    pub fn neg(&self, f: &FieldCtx) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: Fe, f: &FieldCtx) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, &a)| (e.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly, f: &FieldCtx) -> MultiPoly {
        let mut acc: BTreeMap<Exponent, Fe> = BTreeMap::new();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert(Fe::ZERO);
                *slot = f.add(*slot, f.mul(c1, c2));
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly { arity: self.arity, terms: acc }
    }

    pub fn pow(&self, n: u32, f: &FieldCtx) -> MultiPoly {
        let mut out = MultiPoly::constant(self.arity, Fe::ONE);
        for _ in 0..n {
            out = out.mul(self, f);
        }
        out
    }

    fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: len });
        }
        Ok(())
    }

    pub fn eval(&self, point: &[Fe], f: &FieldCtx) -> Result<Fe> {
        self.check_arity(point.len())?;
        Ok(self.eval_unchecked(point, f))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Fe], f: &FieldCtx) -> Fe {
        let mut acc = Fe::ZERO;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (&x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = f.mul(t, f.pow(x, k as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Hasse derivative `P^{(i)}`: the coefficient of `Z^i` in `P(X + Z)`.
    /// Term by term, `X^j` maps to `prod_l C(j_l, i_l) X^{j - i}`.
    pub fn hasse_derivative(&self, i: &[u32], f: &FieldCtx) -> Result<MultiPoly> {
        self.check_arity(i.len())?;
        let mut out = MultiPoly::zero(self.arity);
        for (e, &c) in &self.terms {
            if e.iter().zip(i).any(|(a, b)| a < b) {
                continue;
            }
            let mut coef = c;
            for (&a, &b) in e.iter().zip(i) {
                coef = f.mul(coef, f.binom(a as u64, b as u64));
                if coef.is_zero() {
                    break;
                }
            }
            let ne: Exponent = e.iter().zip(i).map(|(a, b)| a - b).collect();
            out.add_term(ne, coef, f);
        }
        Ok(out)
    }

    /// Largest `M` such that every Hasse derivative of weight `< M` vanishes
    /// at `a`.
    pub fn multiplicity(&self, a: &[Fe], f: &FieldCtx) -> Result<Multiplicity> {
        self.check_arity(a.len())?;
        let Some(deg) = self.total_degree() else {
            return Ok(Multiplicity::Infinite);
        };
        for w in 0..=deg {
            for i in exponents_of_weight(self.arity, w) {
                if !self.hasse_derivative(&i, f)?.eval_unchecked(a, f).is_zero() {
                    return Ok(Multiplicity::Finite(w));
                }
            }
        }
        unreachable!("a nonzero polynomial has a nonzero Taylor coefficient of weight <= its degree")
    }
}
