//! Evaluation coordinate grids.

use crate::numeric::Matrix;

/// Builds the full coordinate grid for a signal with the given axis lengths.
///
/// Axis `j` of length `n` contributes values `-1 + 2 j/(n-1)` for
/// `j = 0 … n-1` — evenly spaced over `[-1, 1]` inclusive — except that a
/// length-1 axis contributes the single value 0. Rows enumerate the cartesian
/// product lexicographically with the first axis slowest, so for a video the
/// order is frame, then row, then column.
pub fn make_grid(dims: &[usize]) -> Matrix {
    assert!(!dims.is_empty(), "a grid needs at least one axis");
    assert!(dims.iter().all(|&n| n >= 1), "axis lengths must be at least 1");
    let total: usize = dims.iter().product();
    let k = dims.len();
    let mut data = vec![0.0f32; total * k];

    let axis_value = |n: usize, j: usize| -> f32 {
        if n == 1 {
            0.0
        } else {
            -1.0 + 2.0 * j as f32 / (n - 1) as f32
        }
    };

    // stride[a] = number of consecutive rows sharing one value of axis a.
    let mut stride = vec![1usize; k];
    for a in (0..k.saturating_sub(1)).rev() {
        stride[a] = stride[a + 1] * dims[a + 1];
    }
    for (row, chunk) in data.chunks_exact_mut(k).enumerate() {
        for a in 0..k {
            let j = (row / stride[a]) % dims[a];
            chunk[a] = axis_value(dims[a], j);
        }
    }
    Matrix::from_vec(total, k, data).expect("size computed from dims")
}
