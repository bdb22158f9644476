//! PNG images and video-as-frame-directory I/O.
//!
//! A video is stored as a directory of equally sized PNG frames named
//! `frame_000.png`, `frame_001.png`, … — anything matching `*.png` is read
//! in lexicographic filename order, so zero-padded counters play back in
//! sequence.

use crate::error::{Error, Result};
use crate::numeric::Matrix;
use crate::signals::{pixel_to_unit, samples_to_image, Rgb8Image};
use std::path::Path;

/// Loads a PNG as 8-bit RGB (alpha and palettes are converted, other bit
/// depths are an error upstream in the decoder).
pub fn load_png(path: &Path) -> Result<Rgb8Image> {
    let reader = image::ImageReader::open(path).map_err(|e| Error::io(path, e))?;
    let decoded = reader.decode()?;
    let rgb = decoded.to_rgb8();
    Rgb8Image::from_raw(rgb.width() as usize, rgb.height() as usize, rgb.into_raw())
}

/// Writes an image as PNG.
pub fn save_png(img: &Rgb8Image, path: &Path) -> Result<()> {
    let buffer: image::RgbImage = image::ImageBuffer::from_raw(
        img.width() as u32,
        img.height() as u32,
        img.pixels().to_vec(),
    )
    .expect("buffer length matches dimensions by construction");
    buffer.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

/// Loads every `*.png` in `dir` (sorted by filename) as the frames of one
/// video. All frames must share the same dimensions.
pub fn load_frame_dir(dir: &Path) -> Result<Vec<Rgb8Image>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("png")))
        .collect();
    if paths.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no .png frames found in {}",
            dir.display()
        )));
    }
    paths.sort();
    let mut frames = Vec::with_capacity(paths.len());
    for path in &paths {
        let frame = load_png(path)?;
        if let Some(first) = frames.first() {
            let first: &Rgb8Image = first;
            if frame.width() != first.width() || frame.height() != first.height() {
                return Err(Error::InvalidArgument(format!(
                    "{}: frame is {}x{} but earlier frames are {}x{}",
                    path.display(),
                    frame.width(),
                    frame.height(),
                    first.width(),
                    first.height()
                )));
            }
        }
        frames.push(frame);
    }
    Ok(frames)
}

/// Writes frames as `frame_000.png`, `frame_001.png`, … into `dir`,
/// creating it if needed.
pub fn save_frame_dir(frames: &[Rgb8Image], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (i, frame) in frames.iter().enumerate() {
        save_png(frame, &dir.join(format!("frame_{i:03}.png")))?;
    }
    Ok(())
}

/// Stacks frames into one samples matrix: rows run frame-by-frame, each
/// frame in row-major pixel order, matching
/// `make_grid(&[frames, height, width])`.
pub fn frames_to_samples(frames: &[Rgb8Image]) -> Matrix {
    let per_frame = frames[0].width() * frames[0].height();
    let mut data = Vec::with_capacity(frames.len() * per_frame * 3);
    for frame in frames {
        data.extend(frame.pixels().iter().map(|&p| pixel_to_unit(p)));
    }
    Matrix::from_vec(frames.len() * per_frame, 3, data)
        .expect("frame dimensions validated at load time")
}

/// Splits an evaluation batch back into frames of the given size.
pub fn samples_to_frames(
    samples: &Matrix,
    frames: usize,
    width: usize,
    height: usize,
) -> Result<Vec<Rgb8Image>> {
    let per_frame = width * height;
    if samples.rows() != frames * per_frame || samples.cols() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected {}x3 samples for {frames} frames of {width}x{height}, got {}x{}",
            frames * per_frame,
            samples.rows(),
            samples.cols()
        )));
    }
    let mut out = Vec::with_capacity(frames);
    for f in 0..frames {
        let slice = Matrix::from_vec(
            per_frame,
            3,
            samples.data()[f * per_frame * 3..(f + 1) * per_frame * 3].to_vec(),
        )
        .expect("length arithmetic above");
        out.push(samples_to_image(&slice, width, height)?);
    }
    Ok(out)
}
