// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Compressed-row operators used on the hot path of time integration.

use ndarray::{Array2, ArrayView2, ArrayViewMut2};
use num_complex::Complex64 as C64;

/// Compressed sparse row copy of a dense operator (exact zeros dropped).
#[derive(Debug, Clone)]
pub struct Csr {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl Csr {
    pub fn from_dense(m: &Array2<C64>) -> Self {
        let n = m.nrows();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for r in 0..n {
            for c in 0..m.ncols() {
                let v = m[[r, c]];
                if v != C64::new(0.0, 0.0) {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self { n, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// `out += scale * (self · y)`.
    pub fn mul_add(&self, scale: C64, y: ArrayView2<C64>, mut out: ArrayViewMut2<C64>) {
        let k = y.ncols();
        for r in 0..self.n {
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                let v = scale * self.vals[idx];
                let src = y.row(self.cols[idx]);
                let mut dst = out.row_mut(r);
                for j in 0..k {
                    dst[j] += v * src[j];
                }
            }
        }
    }

    /// `out += scale * (y · self)`.
    pub fn right_mul_add(&self, scale: C64, y: ArrayView2<C64>, mut out: ArrayViewMut2<C64>) {
        // (y A)[i, c] = Σ_r y[i, r] A[r, c]
        for r in 0..self.n {
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                let v = scale * self.vals[idx];
                let c = self.cols[idx];
                for i in 0..y.nrows() {
                    out[[i, c]] += v * y[[i, r]];
                }
            }
        }
    }
}
