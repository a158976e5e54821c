//! Dense Gaussian elimination over a finite field.

use crate::field::{Fe, FieldCtx};

/// Reduced row echelon form. Pivots are chosen column by column, taking the
/// first row with a nonzero entry, so results are deterministic.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Fe>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

pub fn rref(mut rows: Vec<Vec<Fe>>, ncols: usize, f: &FieldCtx) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv_nonzero(rows[r][c]);
        for x in rows[r][c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots, ncols }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.ncols - self.rank());
        let mut it = self.pivots.iter().peekable();
        for c in 0..self.ncols {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                free.push(c);
            }
        }
        free
    }

    fn kernel_vector_for(&self, free: usize, f: &FieldCtx) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.ncols];
        v[free] = Fe::ONE;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            v[p] = f.neg(row[free]);
        }
        v
    }

    /// One kernel vector per free column, in column order.
    pub fn kernel_basis(&self, f: &FieldCtx) -> Vec<Vec<Fe>> {
        self.free_columns().into_iter().map(|c| self.kernel_vector_for(c, f)).collect()
    }
}

pub fn rank(rows: Vec<Vec<Fe>>, ncols: usize, f: &FieldCtx) -> usize {
    rref(rows, ncols, f).rank()
}

/// The kernel vector attached to the first free column, if any.
pub fn kernel_vector(rows: Vec<Vec<Fe>>, ncols: usize, f: &FieldCtx) -> Option<Vec<Fe>> {
    let r = rref(rows, ncols, f);
    r.free_columns().first().map(|&c| r.kernel_vector_for(c, f))
}

/// Solves `A x = b`. Returns a particular solution and a kernel basis, or
/// `None` when the system is inconsistent.
pub fn solve(
    rows: &[Vec<Fe>],
    rhs: &[Fe],
    ncols: usize,
    f: &FieldCtx,
) -> Option<(Vec<Fe>, Vec<Vec<Fe>>)> {
    let aug: Vec<Vec<Fe>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let r = rref(aug, ncols + 1, f);
    if r.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Fe::ZERO; ncols];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        x[p] = row[ncols];
    }
    let inner = Rref {
        rows: r.rows.iter().map(|row| row[..ncols].to_vec()).collect(),
        pivots: r.pivots.clone(),
        ncols,
    };
    Some((x, inner.kernel_basis(f)))
}

pub fn dot(a: &[Fe], b: &[Fe], f: &FieldCtx) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}
