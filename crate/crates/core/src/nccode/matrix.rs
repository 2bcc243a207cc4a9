//! Dense matrices over a [`GaloisField`].

use super::field::{GaloisField, Gf};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Gf::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Gf::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gf>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Gf] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Gf>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, f: &GaloisField, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, rhs[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: &GaloisField, v: &[Gf]) -> Result<Vec<Gf>> {
        if v.len() != self.cols {
            return Err(Error::invalid("vector length does not match matrix"));
        }
        Ok((0..self.rows).map(|i| f.dot(self.row(i), v)).collect())
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        let mut m = self.clone();
        m.eliminate(f, None)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self, f: &GaloisField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let mut m = self.clone();
        let mut inv = Matrix::identity(self.rows);
        (m.eliminate(f, Some(&mut inv)) == self.rows).then_some(inv)
    }

    /// Gauss-Jordan elimination; returns the rank. Row operations are
    /// mirrored onto `companion` when given.
    fn eliminate(&mut self, f: &GaloisField, mut companion: Option<&mut Matrix>) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            if let Some(c) = companion.as_deref_mut() {
                c.swap_rows(rank, pivot);
            }
            let scale = f.inv(self[(rank, col)]).expect("nonzero pivot");
            self.scale_row(f, rank, scale);
            if let Some(c) = companion.as_deref_mut() {
                c.scale_row(f, rank, scale);
            }
            for r in 0..self.rows {
                let factor = self[(r, col)];
                if r != rank && !factor.is_zero() {
                    self.add_scaled_row(f, r, rank, factor);
                    if let Some(c) = companion.as_deref_mut() {
                        c.add_scaled_row(f, r, rank, factor);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, f: &GaloisField, r: usize, s: Gf) {
        for j in 0..self.cols {
            self[(r, j)] = f.mul(self[(r, j)], s);
        }
    }

    /// row[dst] += s * row[src]
    fn add_scaled_row(&mut self, f: &GaloisField, dst: usize, src: usize, s: Gf) {
        for j in 0..self.cols {
            let v = f.add(self[(dst, j)], f.mul(s, self[(src, j)]));
            self[(dst, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Gf;

    fn index(&self, (r, c): (usize, usize)) -> &Gf {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Gf {
        &mut self.data[r * self.cols + c]
    }
}
