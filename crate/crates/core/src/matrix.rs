//! Dense exact matrices with fraction-free elimination.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_integer::Integer;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

/// Row echelon form of a matrix with integral entries.
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    /// Nonzero rows, each with its pivot column strictly right of the previous.
    pub rows: Vec<Vec<S>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("rows have different lengths".into()));
        }
        let n = rows.len();
        ExactMatrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m.entries[k * n + k] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Restriction to the first `cols` columns.
    pub fn leading_columns(&self, cols: usize) -> Self {
        let cols = cols.min(self.cols);
        let entries = (0..self.rows)
            .flat_map(|r| self.row(r)[..cols].to_vec())
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols,
            entries,
        }
    }

    /// Bareiss elimination after scaling every row to integral entries.
    /// Among the rows eligible as pivot the one with the smallest entry is
    /// chosen.
    pub fn echelon(&self) -> Echelon<S> {
        let mut a: Vec<Vec<S>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let m = row.iter().fold(num_bigint::BigInt::one(), |acc, c| {
                    acc.lcm(&c.denominator_lcm())
                });
                let m = S::from_rational(m.into());
                row.iter().map(|c| c.clone() * m.clone()).collect()
            })
            .collect();
        let mut prev = S::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].bit_size())
            else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r][c].clone();
            for i in r + 1..a.len() {
                let f = a[i][c].clone();
                for j in c + 1..self.cols {
                    let v = pivot.clone() * a[i][j].clone() - f.clone() * a[r][j].clone();
                    a[i][j] = v / prev.clone();
                }
                a[i][c] = S::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon {
            rows: a,
            pivots,
            cols: self.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel: one vector per non-pivot column, with a 1
    /// in that column and 0 in the other non-pivot columns.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let e = self.echelon();
        (0..self.cols)
            .filter(|c| !e.pivots.contains(c))
            .map(|free| e.kernel_vector(free))
            .collect()
    }

    /// First column that lies in the span of the columns before it, with the
    /// kernel vector expressing the dependency.
    pub fn first_dependent_column(&self) -> Option<(usize, Vec<S>)> {
        let e = self.echelon();
        let free = (0..self.cols).find(|c| !e.pivots.contains(c))?;
        Some((free, e.kernel_vector(free)))
    }

    pub fn determinant(&self) -> Result<S> {
        if self.rows != self.cols {
            return Err(Error::Precondition(
                "determinant of a non-square matrix".into(),
            ));
        }
        // Plain elimination keeps track of swaps and scalings exactly.
        let mut a: Vec<Vec<S>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut det = S::one();
        for c in 0..self.cols {
            let Some(p) = (c..self.rows).find(|&i| !a[i][c].is_zero()) else {
                return Ok(S::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det = det * pivot.clone();
            for i in c + 1..self.rows {
                let f = a[i][c].clone() / pivot.clone();
                for j in c..self.cols {
                    let v = a[i][j].clone() - f.clone() * a[c][j].clone();
                    a[i][j] = v;
                }
            }
        }
        Ok(det)
    }
}

impl<S: Scalar> Echelon<S> {
    fn kernel_vector(&self, free: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.cols];
        v[free] = S::one();
        for (k, row) in self.rows.iter().enumerate().rev() {
            let p = self.pivots[k];
            if p > free {
                continue;
            }
            let s =
                (p + 1..self.cols).fold(S::zero(), |acc, j| acc + row[j].clone() * v[j].clone());
            v[p] = -s / row[p].clone();
        }
        v
    }
}
