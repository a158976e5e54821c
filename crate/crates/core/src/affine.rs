//! Affine subspaces of message space and the back-substitution builder that
//! produces them.

use crate::field::{Fe, FieldCtx};
use crate::linalg::{self, dot};

/// The set `{ M x + z }` of candidate coefficient vectors in `F_q^k`, or the
/// empty set. In canonical form the columns of `M` are in reduced echelon
/// form: column `c` has a one at `pivots[c]` and every other column is zero
/// there, and `z` is zero on all pivot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    k: usize,
    basis: Vec<Vec<Fe>>,
    offset: Vec<Fe>,
    pivots: Vec<usize>,
    empty: bool,
}

impl AffineSolutionSet {
    pub fn empty(k: usize) -> Self {
        AffineSolutionSet { k, basis: Vec::new(), offset: vec![Fe::ZERO; k], pivots: Vec::new(), empty: true }
    }

    pub fn from_parts(k: usize, basis: Vec<Vec<Fe>>, offset: Vec<Fe>, f: &FieldCtx) -> Self {
        assert_eq!(offset.len(), k);
        let mut out = AffineSolutionSet { k, basis, offset, pivots: Vec::new(), empty: false };
        out.canonicalize(f);
        out
    }

    /// Brings the set to canonical form; the set itself is unchanged.
    pub fn canonicalize(&mut self, f: &FieldCtx) {
        if self.empty {
            return;
        }
        let r = linalg::rref(std::mem::take(&mut self.basis), self.k, f);
        self.basis = r.rows;
        self.pivots = r.pivots;
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = self.offset[p];
            if !c.is_zero() {
                for (z, &v) in self.offset.iter_mut().zip(b) {
                    *z = f.sub(*z, f.mul(c, v));
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Dimension `d~`; zero for the empty set.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Columns of `M`.
    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }

    pub fn offset(&self) -> &[Fe] {
        &self.offset
    }

    /// Coordinates on which `M` restricts to the identity.
    pub fn free_coordinates(&self) -> &[usize] {
        &self.pivots
    }

    /// `M` as `k` rows of `d~` entries.
    pub fn matrix(&self) -> Vec<Vec<Fe>> {
        (0..self.k).map(|r| self.basis.iter().map(|b| b[r]).collect()).collect()
    }

    /// Number of points, `q^{d~}`, or zero for the empty set.
    pub fn size(&self, q: u32) -> u128 {
        if self.empty {
            0
        } else {
            (q as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
        }
    }

    pub fn point(&self, x: &[Fe], f: &FieldCtx) -> Vec<Fe> {
        assert_eq!(x.len(), self.dim());
        let mut v = self.offset.clone();
        for (b, &c) in self.basis.iter().zip(x) {
            if c.is_zero() {
                continue;
            }
            for (z, &e) in v.iter_mut().zip(b) {
                *z = f.add(*z, f.mul(c, e));
            }
        }
        v
    }

    /// The point whose parameters are the base-`q` digits of `index`, most
    /// significant first.
    pub fn point_at(&self, mut index: u64, f: &FieldCtx) -> Vec<Fe> {
        let q = f.order() as u64;
        let mut x = vec![Fe::ZERO; self.dim()];
        for slot in x.iter_mut().rev() {
            *slot = Fe((index % q) as u32);
            index /= q;
        }
        self.point(&x, f)
    }

    pub fn contains(&self, v: &[Fe], f: &FieldCtx) -> bool {
        if self.empty || v.len() != self.k {
            return false;
        }
        let x: Vec<Fe> = self.pivots.iter().map(|&p| f.sub(v[p], self.offset[p])).collect();
        self.point(&x, f) == v
    }
}

/// Affine expression `lin . params + cst` in the free parameters of a
/// back-substitution.
#[derive(Clone, Debug)]
pub(crate) struct Expr {
    lin: Vec<Fe>,
    cst: Fe,
}

impl Expr {
    pub(crate) fn constant(cap: usize, c: Fe) -> Self {
        Expr { lin: vec![Fe::ZERO; cap], cst: c }
    }

    /// `self += c * other`.
    pub(crate) fn add_scaled(&mut self, c: Fe, other: &Expr, f: &FieldCtx) {
        if c.is_zero() {
            return;
        }
        for (x, &y) in self.lin.iter_mut().zip(&other.lin) {
            if !y.is_zero() {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        self.cst = f.add(self.cst, f.mul(c, other.cst));
    }

    pub(crate) fn scale(&mut self, c: Fe, f: &FieldCtx) {
        for x in self.lin.iter_mut() {
            *x = f.mul(*x, c);
        }
        self.cst = f.mul(self.cst, c);
    }
}

/// Determines the unknowns `f_0, f_1, ...` in order, each either as a fresh
/// free parameter or as an affine combination of earlier ones, and collects
/// leftover linear conditions. [`AffineBuilder::finish`] resolves the
/// conditions so that the result is exactly the solution set.
pub(crate) struct AffineBuilder {
    k: usize,
    exprs: Vec<Expr>,
    params: usize,
    constraints: Vec<Expr>,
}

impl AffineBuilder {
    pub(crate) fn new(k: usize) -> Self {
        AffineBuilder { k, exprs: Vec::with_capacity(k), params: 0, constraints: Vec::new() }
    }

    pub(crate) fn zero(&self) -> Expr {
        Expr::constant(self.k, Fe::ZERO)
    }

    pub(crate) fn determined(&self) -> usize {
        self.exprs.len()
    }

    pub(crate) fn free_count(&self) -> usize {
        self.params
    }

    /// Expression for `f_r`; coefficients at or beyond `k` are zero.
    pub(crate) fn unknown(&self, r: usize) -> Option<&Expr> {
        self.exprs.get(r)
    }

    pub(crate) fn push_free(&mut self) {
        let mut e = self.zero();
        e.lin[self.params] = Fe::ONE;
        self.params += 1;
        self.exprs.push(e);
    }

    pub(crate) fn push(&mut self, e: Expr) {
        self.exprs.push(e);
    }

    /// Requires `e = 0`.
    pub(crate) fn constrain(&mut self, e: Expr) {
        if e.lin.iter().all(|x| x.is_zero()) && e.cst.is_zero() {
            return;
        }
        self.constraints.push(e);
    }

    pub(crate) fn finish(self, f: &FieldCtx) -> AffineSolutionSet {
        assert_eq!(self.exprs.len(), self.k);
        let p = self.params;
        let rows: Vec<Vec<Fe>> = self.constraints.iter().map(|e| e.lin[..p].to_vec()).collect();
        let rhs: Vec<Fe> = self.constraints.iter().map(|e| f.neg(e.cst)).collect();
        let Some((y0, kernel)) = linalg::solve(&rows, &rhs, p, f) else {
            return AffineSolutionSet::empty(self.k);
        };
        let offset: Vec<Fe> =
            self.exprs.iter().map(|e| f.add(e.cst, dot(&e.lin[..p], &y0, f))).collect();
        let basis: Vec<Vec<Fe>> = kernel
            .iter()
            .map(|kv| self.exprs.iter().map(|e| dot(&e.lin[..p], kv, f)).collect())
            .collect();
        AffineSolutionSet::from_parts(self.k, basis, offset, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_has_identity() {
        let f = FieldCtx::new(5).unwrap();
        let s = AffineSolutionSet::from_parts(
            3,
            vec![vec![Fe(2), Fe(4), Fe(1)], vec![Fe(0), Fe(1), Fe(1)]],
            vec![Fe(1), Fe(1), Fe(1)],
            &f,
        );
        assert_eq!(s.dim(), 2);
        for (c, &p) in s.free_coordinates().iter().enumerate() {
            for (c2, b) in s.basis().iter().enumerate() {
                assert_eq!(b[p], if c == c2 { Fe::ONE } else { Fe::ZERO });
            }
        }
        assert!(s.contains(&[Fe(1), Fe(1), Fe(1)], &f));
        assert!(s.contains(&[Fe(3), Fe(0), Fe(2)], &f));
        let pts: std::collections::BTreeSet<_> = (0..25).map(|i| s.point_at(i, &f)).collect();
        assert_eq!(pts.len(), 25);
        assert!(pts.iter().all(|v| s.contains(v, &f)));
    }

    #[test]
    fn dependent_basis_collapses() {
        let f = FieldCtx::new(7).unwrap();
        let s = AffineSolutionSet::from_parts(
            2,
            vec![vec![Fe(1), Fe(2)], vec![Fe(2), Fe(4)]],
            vec![Fe(0), Fe(0)],
            &f,
        );
        assert_eq!(s.dim(), 1);
        assert_eq!(s.size(7), 7);
    }

    #[test]
    fn builder_resolves_constraints() {
        let f = FieldCtx::new(7).unwrap();
        // f0, f1 free; f2 = f0 + 1; constraint f1 - f0 = 0.
        let mut b = AffineBuilder::new(3);
        b.push_free();
        b.push_free();
        let mut e = b.unknown(0).unwrap().clone();
        e.cst = Fe(1);
        b.push(e);
        let mut c = b.unknown(1).unwrap().clone();
        c.add_scaled(f.neg(Fe::ONE), &b.unknown(0).unwrap().clone(), &f);
        b.constrain(c);
        let s = b.finish(&f);
        assert_eq!(s.dim(), 1);
        for a in f.elements() {
            assert!(s.contains(&[a, a, f.add(a, Fe(1))], &f));
        }
        assert!(!s.contains(&[Fe(0), Fe(1), Fe(1)], &f));

        let mut b = AffineBuilder::new(1);
        b.push_free();
        b.constrain(Expr::constant(1, Fe(3)));
        assert!(b.finish(&f).is_empty());
    }
}
