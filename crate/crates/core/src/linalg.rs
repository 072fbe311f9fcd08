//! Dense exact-rational matrices: just enough linear algebra for assembling
//! differentials and computing homology ranks by Gaussian elimination.

use num::{One, Zero};

use crate::orbit::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity_scaled(diag: &[Rational]) -> Self {
        let n = diag.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        let cur = self.get(r, c).clone();
        self.set(r, c, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() {
                    return Some((r, c, self.get(r, c).clone()));
                }
            }
        }
        None
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_to(r, c, &(a * b));
                    }
                }
            }
        }
        out
    }

    /// Rank over the rationals, by fraction-exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &Vec<Rational>, r: usize, c: usize| m[r * cols + c].clone();
        let mut rank = 0;
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row >= rows {
                break;
            }
            let mut pivot = None;
            for r in pivot_row..rows {
                if !at(&m, r, col).is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != pivot_row {
                for c in 0..cols {
                    m.swap(p * cols + c, pivot_row * cols + c);
                }
            }
            let inv = {
                let v = at(&m, pivot_row, col);
                Rational::one() / v
            };
            for r in (pivot_row + 1)..rows {
                let factor = at(&m, r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    let v = at(&m, r, c) - &factor * at(&m, pivot_row, c);
                    m[r * cols + c] = v;
                }
            }
            pivot_row += 1;
            rank += 1;
        }
        rank
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        (0..self.rows).flat_map(move |r| (0..self.cols).map(move |c| (r, c, self.get(r, c))))
    }
}
