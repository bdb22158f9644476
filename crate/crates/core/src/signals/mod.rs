//! Signals in and out: coordinate grids, 8-bit images, WAV clips, video
//! frame directories, and the fixed mappings between sample domains.
//!
//! Everything trains and evaluates in the normalized domain `[-1, 1]`. The
//! conversions are pinned here and used by every path:
//!
//! - 8-bit pixel `p` → `2 p / 255 − 1`; back out via
//!   `round(255 (v + 1) / 2)` clamped to `[0, 255]`.
//! - 16-bit sample `s` → `s / 32768`; back out via `round(32768 v)` clamped
//!   to `[-32768, 32767]`. The same power-of-two scale in both directions
//!   makes load → emit the identity for every representable sample, and one
//!   least-significant bit corresponds to exactly 1.0 of 16-bit error.

mod frames;
mod grid;
mod wav;

pub use frames::{
    frames_to_samples, load_frame_dir, load_png, samples_to_frames, save_frame_dir, save_png,
};
pub use grid::make_grid;
pub use wav::{encode_wav, load_wav, parse_wav, save_wav, WavClip};

use crate::error::{Error, Result};
use crate::numeric::Matrix;

/// Interleaved 8-bit RGB image.
#[derive(Clone, Debug, PartialEq)]
pub struct Rgb8Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Rgb8Image {
    /// Black image of the given size.
    pub fn new(width: usize, height: usize) -> Self {
        Rgb8Image { width, height, pixels: vec![0; width * height * 3] }
    }

    /// Wraps an interleaved RGB buffer; its length must be `3·width·height`.
    pub fn from_raw(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height * 3 {
            return Err(Error::InvalidArgument(format!(
                "pixel buffer holds {} bytes but {width}x{height} RGB needs {}",
                pixels.len(),
                width * height * 3
            )));
        }
        Ok(Rgb8Image { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Interleaved RGB bytes, row-major, top-left first.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Channel `c` of the pixel at column `x`, row `y`.
    #[inline]
    pub fn channel(&self, x: usize, y: usize, c: usize) -> u8 {
        self.pixels[(y * self.width + x) * 3 + c]
    }

    #[inline]
    pub fn set_channel(&mut self, x: usize, y: usize, c: usize, value: u8) {
        self.pixels[(y * self.width + x) * 3 + c] = value;
    }

    /// Samples matrix for training/evaluation: one row per pixel in
    /// row-major (y slowest) order, three normalized channel columns.
    /// Matches `make_grid(&[height, width])` row for row.
    pub fn to_samples(&self) -> Matrix {
        let data: Vec<f32> = self.pixels.iter().map(|&p| pixel_to_unit(p)).collect();
        Matrix::from_vec(self.width * self.height, 3, data)
            .expect("pixel count and buffer length agree by construction")
    }
}

/// Normalizes an 8-bit value into `[-1, 1]`.
#[inline]
pub fn pixel_to_unit(p: u8) -> f32 {
    2.0 * p as f32 / 255.0 - 1.0
}

/// Quantizes a normalized value back to 8 bits, clamping out-of-range input.
#[inline]
pub fn unit_to_pixel(v: f32) -> u8 {
    let scaled = (255.0 * (v + 1.0) / 2.0).round();
    scaled.clamp(0.0, 255.0) as u8
}

/// Normalizes a 16-bit sample into `[-1, 1)`.
#[inline]
pub fn sample_to_unit(s: i16) -> f32 {
    s as f32 / 32768.0
}

/// Quantizes a normalized value back to 16 bits, clamping out-of-range input.
#[inline]
pub fn unit_to_sample(v: f32) -> i16 {
    let scaled = (32768.0 * v).round();
    scaled.clamp(-32768.0, 32767.0) as i16
}

/// Converts an evaluation batch (one sample per row) into 8-bit pixels for
/// an image of the given size; rows follow `make_grid(&[height, width])`.
pub fn samples_to_image(samples: &Matrix, width: usize, height: usize) -> Result<Rgb8Image> {
    if samples.rows() != width * height || samples.cols() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected {}x3 samples for a {width}x{height} image, got {}x{}",
            width * height,
            samples.rows(),
            samples.cols()
        )));
    }
    let pixels: Vec<u8> = samples.data().iter().map(|&v| unit_to_pixel(v)).collect();
    Rgb8Image::from_raw(width, height, pixels)
}
