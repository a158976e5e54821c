//! Column-oriented symbol matrices: codewords and received words.

use crate::error::{Error, Result};
use crate::field::Fe;

/// A `rows x cols` matrix whose columns are code symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// A possibly corrupted codeword.
pub type ReceivedWord = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<Fe>>) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for c in columns {
            if c.len() != rows {
                return Err(Error::LengthMismatch { len: c.len(), what: format!("column of height {rows}") });
            }
            data.extend(c);
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::LengthMismatch { len: row.len(), what: format!("row of width {c}") });
            }
            for (i, &v) in row.iter().enumerate() {
                m.set(j, i, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Entry in row `j`, column `i`.
    pub fn get(&self, j: usize, i: usize) -> Fe {
        self.data[i * self.rows + j]
    }

    pub fn set(&mut self, j: usize, i: usize, v: Fe) {
        self.data[i * self.rows + j] = v;
    }

    pub fn column(&self, i: usize) -> &[Fe] {
        &self.data[i * self.rows..(i + 1) * self.rows]
    }

    pub fn set_column(&mut self, i: usize, v: &[Fe]) {
        self.data[i * self.rows..(i + 1) * self.rows].copy_from_slice(v);
    }

    pub fn row(&self, j: usize) -> Vec<Fe> {
        (0..self.cols).map(|i| self.get(j, i)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|j| self.row(j)).collect()
    }

    /// Entries in column order: the unfolded vector.
    pub fn as_slice(&self) -> &[Fe] {
        &self.data
    }

    /// Number of identical columns.
    pub fn agreement(&self, other: &Matrix) -> Result<usize> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch { expected: self.shape(), got: other.shape() });
        }
        Ok((0..self.cols).filter(|&i| self.column(i) == other.column(i)).count())
    }
}

/// Splits a length-`n` vector into `n / m` columns of `m` consecutive entries.
pub fn fold(v: &[Fe], m: usize) -> Result<Matrix> {
    if m == 0 || !v.len().is_multiple_of(m) {
        return Err(Error::LengthMismatch { len: v.len(), what: format!("folding parameter {m}") });
    }
    Ok(Matrix { rows: m, cols: v.len() / m, data: v.to_vec() })
}

pub fn unfold(mat: &Matrix) -> Vec<Fe> {
    mat.data.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fold_layout() {
        let v = [Fe(1), Fe(2), Fe(3), Fe(4)];
        let m = fold(&v, 2).unwrap();
        assert_eq!(m.to_rows(), vec![vec![Fe(1), Fe(3)], vec![Fe(2), Fe(4)]]);
        let r = fold(&v, 1).unwrap();
        assert_eq!(r.to_rows(), vec![v.to_vec()]);
        assert_eq!(unfold(&r), v.to_vec());
        assert!(matches!(fold(&v, 3), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn agreement_counts_columns() {
        let a = Matrix::from_rows(vec![vec![Fe(1), Fe(2), Fe(3)], vec![Fe(0), Fe(0), Fe(0)]]).unwrap();
        assert_eq!(a.agreement(&a).unwrap(), 3);
        let mut b = a.clone();
        b.set(1, 2, Fe(5));
        assert_eq!(a.agreement(&b).unwrap(), 2);
        let c = Matrix::zeros(2, 2);
        assert_eq!(a.agreement(&c), Err(Error::ShapeMismatch { expected: (2, 3), got: (2, 2) }));
    }

    proptest! {
        #[test]
        fn fold_round_trip(v in proptest::collection::vec((0u32..13).prop_map(Fe), 12..=12), m in prop::sample::select(vec![1usize, 2, 3, 4, 6, 12])) {
            let mat = fold(&v, m).unwrap();
            prop_assert_eq!(unfold(&mat), v.clone());
            for i in 0..mat.cols() {
                prop_assert_eq!(mat.column(i), &v[i * m..(i + 1) * m]);
            }
        }
    }
}
