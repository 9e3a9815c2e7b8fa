//! Dense matrices over the max-plus semiring and their product.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::TropValue;

/// A dense rectangular matrix of max-plus scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropValue>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, fill: TropValue) -> Self {
        TropMatrix {
            rows,
            cols,
            entries: vec![fill; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> TropValue) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        TropMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<TropValue>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape);
        }
        Ok(TropMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal convenience, mostly for tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        TropMatrix::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| {
            TropValue::from(rows[i][j])
        })
    }

    /// The tropical identity: `0` on the diagonal, `−∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        TropMatrix::from_fn(n, n, |i, j| {
            if i == j {
                TropValue::unit()
            } else {
                TropValue::NegInf
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(TropValue::is_finite)
    }

    pub fn get(&self, i: usize, j: usize) -> &TropValue {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TropValue) {
        self.entries[i * self.cols + j] = v;
    }

    /// Max-plus matrix product: `C[i][j] = max_t (A[i][t] + B[t][j])`.
    pub fn matmul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape);
        }
        Ok(TropMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = TropValue::NegInf;
            for t in 0..self.cols {
                acc = acc.plus(&self.get(i, t).times(other.get(t, j)));
            }
            acc
        }))
    }

    pub fn transpose(&self) -> TropMatrix {
        TropMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix selected by 0-based row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> TropMatrix {
        TropMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }
}

impl Index<(usize, usize)> for TropMatrix {
    type Output = TropValue;

    fn index(&self, (i, j): (usize, usize)) -> &TropValue {
        self.get(i, j)
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let a = TropMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        let id = TropMatrix::identity(2);
        assert_eq!(id.matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&id).unwrap(), a);
    }

    #[test]
    fn jacobi_factor_times_identity() {
        // x_1^trop(5) ⊙ I = x_1^trop(5)
        let mut x1 = TropMatrix::identity(2);
        x1.set(0, 1, TropValue::from(5));
        assert_eq!(x1.matmul(&TropMatrix::identity(2)).unwrap(), x1);
    }

    #[test]
    fn hand_expanded_2x2_product() {
        let a = TropMatrix::from_ints(&[&[0, 1], &[2, 3]]);
        let b = TropMatrix::from_ints(&[&[0, 0], &[0, 0]]);
        let c = a.matmul(&b).unwrap();
        assert_eq!(c, TropMatrix::from_ints(&[&[1, 1], &[3, 3]]));
    }

    #[test]
    fn shape_mismatch_errors() {
        let a = TropMatrix::identity(2);
        let b = TropMatrix::identity(3);
        assert_eq!(a.matmul(&b), Err(Error::Shape));
    }
}
