//! Row-major `f32` matrices and the three matmul shapes training needs.
//!
//! The kernels parallelize over output rows only; within a row, accumulation
//! order is fixed by the source. That makes every product bit-reproducible
//! across thread counts while still leaving the inner loops in a shape the
//! compiler can vectorize (per-lane sums for the SAXPY-style loops, four
//! independent accumulator chains for the dot products).

use crate::error::{Error, Result};
use rayon::prelude::*;

/// Dense row-major matrix. `rows` is the output dimension when the matrix is
/// used as a layer: entry `(r, c)` is the weight from input `c` to output `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f32>,
}

impl Matrix {
    /// All-zeros matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Identity matrix of side `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Wraps an existing row-major buffer. Fails unless
    /// `data.len() == rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix buffer holds {} values but {rows}x{cols} needs {}",
                data.len(),
                rows * cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major view of the underlying buffer.
    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f32] {
        &mut self.data
    }

    /// Entry at row `r`, column `c`.
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f32 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: f32) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = value;
    }

    /// Row `r` as a contiguous slice.
    #[inline]
    pub fn row(&self, r: usize) -> &[f32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Plain product `a * b` for `a: p×q`, `b: q×r`.
///
/// Each output row is produced by one worker as a fixed-order sum over `k`
/// with the contiguous inner loop running along the row.
pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::InvalidArgument(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    let r = b.cols;
    super::pool().install(|| {
        out.data
            .par_chunks_mut(r)
            .enumerate()
            .for_each(|(i, out_row)| {
                let a_row = a.row(i);
                for (k, &aik) in a_row.iter().enumerate() {
                    let b_row = b.row(k);
                    for (o, &bkj) in out_row.iter_mut().zip(b_row) {
                        *o += aik * bkj;
                    }
                }
            });
    });
    Ok(out)
}

/// Dot product with four independent accumulator chains.
///
/// The chains vectorize without the compiler having to reassociate anything,
/// and the combination order `(c0 + c1) + (c2 + c3)` is fixed, so the result
/// is identical on every build host and thread count.
#[inline]
fn dot(x: &[f32], y: &[f32]) -> f32 {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = [0.0f32; 4];
    let chunks = x.len() / 4;
    for i in 0..chunks {
        let xi = &x[i * 4..i * 4 + 4];
        let yi = &y[i * 4..i * 4 + 4];
        acc[0] += xi[0] * yi[0];
        acc[1] += xi[1] * yi[1];
        acc[2] += xi[2] * yi[2];
        acc[3] += xi[3] * yi[3];
    }
    let mut tail = 0.0f32;
    for i in chunks * 4..x.len() {
        tail += x[i] * y[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Affine layer forward pass: `y[i][o] = Σ_k x[i][k] · w[o][k] + bias[o]`.
///
/// `x` is a batch (one sample per row), `w` is a layer matrix in row-major
/// output-by-input layout, `bias` has one entry per output. Parallel over
/// batch rows.
pub fn linear_forward(x: &Matrix, w: &Matrix, bias: &[f32]) -> Matrix {
    assert_eq!(x.cols, w.cols, "input width must match layer input dimension");
    assert_eq!(bias.len(), w.rows, "bias length must match layer output dimension");
    let mut out = Matrix::zeros(x.rows, w.rows);
    let outputs = w.rows;
    super::pool().install(|| {
        out.data
            .par_chunks_mut(outputs)
            .enumerate()
            .for_each(|(i, out_row)| {
                let x_row = x.row(i);
                for (o, slot) in out_row.iter_mut().enumerate() {
                    *slot = dot(x_row, w.row(o)) + bias[o];
                }
            });
    });
    out
}

/// Gradient of a scalar loss with respect to layer weights:
/// `gw[o][k] = Σ_i gy[i][o] · x[i][k]`.
///
/// Parallel over weight rows; the batch sum for each row runs in index order.
pub fn grad_weights(gy: &Matrix, x: &Matrix) -> Matrix {
    assert_eq!(gy.rows, x.rows, "gradient and input batches must be the same size");
    let mut out = Matrix::zeros(gy.cols, x.cols);
    let cols = x.cols;
    super::pool().install(|| {
        out.data
            .par_chunks_mut(cols)
            .enumerate()
            .for_each(|(o, w_row)| {
                for i in 0..x.rows {
                    let g = gy.at(i, o);
                    if g != 0.0 {
                        for (slot, &xv) in w_row.iter_mut().zip(x.row(i)) {
                            *slot += g * xv;
                        }
                    }
                }
            });
    });
    out
}

/// Gradient of a scalar loss with respect to layer inputs:
/// `gx[i][k] = Σ_o gy[i][o] · w[o][k]`.
///
/// Parallel over batch rows.
pub fn grad_inputs(gy: &Matrix, w: &Matrix) -> Matrix {
    assert_eq!(gy.cols, w.rows, "gradient width must match layer output dimension");
    let mut out = Matrix::zeros(gy.rows, w.cols);
    let cols = w.cols;
    super::pool().install(|| {
        out.data
            .par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, out_row)| {
                for o in 0..w.rows {
                    let g = gy.at(i, o);
                    if g != 0.0 {
                        for (slot, &wv) in out_row.iter_mut().zip(w.row(o)) {
                            *slot += g * wv;
                        }
                    }
                }
            });
    });
    out
}
