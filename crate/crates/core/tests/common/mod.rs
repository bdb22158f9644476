//! Deterministic test signals shared by the integration suites: a short
//! synthetic video, a landscape-like cover image, and a three-tone audio
//! clip. All of them are closed-form, so every run regenerates identical
//! data without fixture files.
#![allow(dead_code)]

use std::f64::consts::PI;

use inrstego::signals::Rgb8Image;

fn level(x: f64) -> u8 {
    (255.0 * x.clamp(0.0, 1.0)).round() as u8
}

/// A `t_len`-frame clip: a bright blob glides diagonally over a striped
/// background while a dark pocket stays put. `contrast` scales deviations
/// from mid-gray (1.0 keeps the full range).
pub fn video_frames(t_len: usize, h: usize, w: usize, contrast: f64) -> Vec<Rgb8Image> {
    let mut frames = Vec::with_capacity(t_len);
    for t in 0..t_len {
        let s = t as f64 / (t_len - 1).max(1) as f64;
        let cx = 0.30 + 0.40 * s;
        let cy = 0.35 + 0.30 * s;
        let mut img = Rgb8Image::new(w, h);
        for y in 0..h {
            let v = y as f64 / (h - 1).max(1) as f64;
            for x in 0..w {
                let u = x as f64 / (w - 1).max(1) as f64;
                let blob = (-((u - cx).powi(2) + (v - cy).powi(2)) / 0.045).exp();
                let dark = (-((u - 0.75).powi(2) + (v - 0.20).powi(2)) / 0.09).exp();
                let r = 0.52 + 0.46 * (2.0 * PI * (0.8 * u + 0.25 * s)).sin() - 0.50 * dark
                    + 0.55 * blob;
                let g =
                    0.48 + 0.42 * (PI * (v + 0.4 * s)).cos() - 0.45 * dark + 0.50 * blob;
                let b = 0.35 + 0.50 * u * (1.0 - v) + 0.40 * blob - 0.30 * dark;
                for (c, val) in [r, g, b].into_iter().enumerate() {
                    img.set_channel(x, y, c, level(0.5 + contrast * (val - 0.5)));
                }
            }
        }
        frames.push(img);
    }
    frames
}

/// A square cover image that reads as a landscape: sky gradient, a soft
/// hill, and a sinusoidal ridge line.
pub fn cover_image(side: usize) -> Rgb8Image {
    let mut img = Rgb8Image::new(side, side);
    for y in 0..side {
        let v = y as f64 / (side - 1).max(1) as f64;
        for x in 0..side {
            let u = x as f64 / (side - 1).max(1) as f64;
            let ridge = 0.55 + 0.25 * (2.0 * PI * (1.5 * u + 0.3)).sin() * (1.0 - v);
            let hill = (-((u - 0.62).powi(2) + (v - 0.55).powi(2)) / 0.08).exp();
            let sky = 1.0 - 0.8 * v;
            img.set_channel(x, y, 0, level(0.30 * sky + 0.45 * hill + 0.15 * ridge));
            img.set_channel(x, y, 1, level(0.45 * sky + 0.35 * hill + 0.20 * ridge));
            img.set_channel(x, y, 2, level(0.65 * sky + 0.15 * hill + 0.10 * ridge));
        }
    }
    img
}

/// A three-tone clip (two steady partials plus a decaying high tone),
/// snapped to the 16-bit sample grid.
pub fn audio_samples(n: usize) -> Vec<i16> {
    (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            let sig = 0.55 * (2.0 * PI * 6.0 * t).sin()
                + 0.30 * (2.0 * PI * 17.5 * t + 1.1).sin()
                + 0.10 * (2.0 * PI * 41.0 * t).sin() * (1.0 - t);
            (32768.0 * sig).round().clamp(-32768.0, 32767.0) as i16
        })
        .collect()
}

/// Interleaved bytes of a frame sequence, for whole-clip pixel metrics.
pub fn flat_pixels(frames: &[Rgb8Image]) -> Vec<u8> {
    frames.iter().flat_map(|f| f.pixels().iter().copied()).collect()
}
