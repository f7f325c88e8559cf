//! Dense exact linear algebra over Q: row reduction, rank and null spaces.

use num::{One, Zero};

use crate::scalar::{fmt_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Build from columns given as sparse `(row, value)` lists.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, Rational)>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.data[*i][j] += v;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Reduce in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = Rational::one() / &self.data[r][c];
            if !inv.is_one() {
                for v in self.data[r][c..].iter_mut() {
                    if !v.is_zero() {
                        *v *= &inv;
                    }
                }
            }
            let pivot_row = std::mem::take(&mut self.data[r]);
            let nz: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let f = self.data[i][c].clone();
                for &j in &nz {
                    let d = &f * &pivot_row[j];
                    self.data[i][j] -= d;
                }
            }
            self.data[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m.data[r][f].clone();
                }
                x
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data.iter().map(|r| r.iter().map(fmt_rational).collect()).collect()
    }
}

/// Rank of a set of vectors given as sparse maps from a shared key space.
pub fn rank_of_vectors(vectors: &[Vec<(usize, Rational)>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_sparse_columns(dim, vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(), cols)
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::zeros(3, 4).kernel().len(), 4);
        let id = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.rank(), 2);
        assert!(id.kernel().is_empty());
    }
}
