//! 8-bit uniform quantization of weight values.
//!
//! One pair of functions defines the entire weight-to-pixel grid:
//! [`quantize_level`] and [`dequantize_level`]. Every path that touches the
//! grid — container encoding, container decoding, cover targets, trainable
//! weight init — goes through these two functions, which is what makes
//! bit-exact round-trip guarantees possible at all.

use crate::numeric::Matrix;

/// Maps a weight to its 8-bit level on the uniform grid over
/// `[w_min, w_max]`: clamp into range, rescale to `[0, 255]`, round to the
/// nearest level with halves away from zero.
#[inline]
pub fn quantize_level(w: f32, w_min: f32, w_max: f32) -> u8 {
    debug_assert!(w_min < w_max, "quantization range must be non-empty");
    let clamped = w.clamp(w_min, w_max);
    // f32::round ties away from zero, which is the contract here.
    let level = (255.0 * (clamped - w_min) / (w_max - w_min)).round();
    level as u8
}

/// Reconstructs the weight value a level stands for.
#[inline]
pub fn dequantize_level(level: u8, w_min: f32, w_max: f32) -> f32 {
    w_min + (level as f32 / 255.0) * (w_max - w_min)
}

/// Quantize-then-dequantize: snaps a weight to its grid value.
#[inline]
pub fn quantize_dequantize(w: f32, w_min: f32, w_max: f32) -> f32 {
    dequantize_level(quantize_level(w, w_min, w_max), w_min, w_max)
}

/// Snaps every entry of a matrix to the grid, producing the matrix the
/// forward pass sees during quantization-aware training.
pub fn quantize_matrix(w: &Matrix, w_min: f32, w_max: f32) -> Matrix {
    let mut out = w.clone();
    for v in out.data_mut().iter_mut() {
        *v = quantize_dequantize(*v, w_min, w_max);
    }
    out
}
