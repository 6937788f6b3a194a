//! Dense matrices over a [`Field`], with the reduced row echelon form and
//! kernel computations the code calculus is built on.
//!
//! Entries are stored as canonical element encodings. RREF is unique, so
//! comparing reduced matrices compares row spaces.

use crate::code::CodeError;
use crate::gf::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries given as canonical encodings.
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, CodeError> {
        if data.len() != rows * cols {
            return Err(CodeError::BadShape {
                rows,
                cols,
                entries: data.len(),
            });
        }
        for &e in &data {
            if e >= field.order() {
                return Err(CodeError::EntryOutOfRange(e));
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form, returning the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv_raw(self.get(r, c));
            if inv != 1 {
                for cc in c..self.cols {
                    let v = f.mul_raw(self.get(r, cc), inv);
                    self.set(r, cc, v);
                }
            }
            for rr in 0..self.rows {
                if rr == r {
                    continue;
                }
                let factor = self.get(rr, c);
                if factor == 0 {
                    continue;
                }
                for cc in c..self.cols {
                    let v = f.sub_raw(self.get(rr, cc), f.mul_raw(factor, self.get(r, cc)));
                    self.set(rr, cc, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {v : M v = 0} in reduced row echelon form.
    /// `self` must already be in RREF with the given pivot columns.
    pub(crate) fn kernel_from_rref(&self, pivots: &[usize]) -> Matrix {
        let f = &self.field;
        let n = self.cols;
        let is_pivot = {
            let mut v = vec![usize::MAX; n];
            for (t, &p) in pivots.iter().enumerate() {
                v[p] = t;
            }
            v
        };
        let free: Vec<usize> = (0..n).filter(|&c| is_pivot[c] == usize::MAX).collect();
        let mut out = Matrix::zero(f, free.len(), n);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (t, &pc) in pivots.iter().enumerate() {
                let v = f.neg_raw(self.get(t, fc));
                out.set(i, pc, v);
            }
        }
        out.rref();
        out
    }
}
