//! Quality metrics for reconstructed signals and container images.
//!
//! Everything here accumulates in `f64` regardless of the input width, and
//! perfect reconstructions report `f64::INFINITY` on the logarithmic scales
//! rather than dividing by zero.

use crate::error::{Error, Result};
use crate::signals::Rgb8Image;

/// Mean absolute difference between two 8-bit buffers, in gray levels.
pub fn apd(a: &[u8], b: &[u8]) -> f64 {
    assert_eq!(a.len(), b.len(), "buffers must be the same length");
    assert!(!a.is_empty(), "buffers must not be empty");
    let sum: f64 = a.iter().zip(b).map(|(&x, &y)| (x as f64 - y as f64).abs()).sum();
    sum / a.len() as f64
}

/// Mean absolute difference between two 16-bit sample buffers, in sample
/// steps (one least-significant bit counts as 1.0).
pub fn ae(a: &[i16], b: &[i16]) -> f64 {
    assert_eq!(a.len(), b.len(), "buffers must be the same length");
    assert!(!a.is_empty(), "buffers must not be empty");
    let sum: f64 = a.iter().zip(b).map(|(&x, &y)| (x as f64 - y as f64).abs()).sum();
    sum / a.len() as f64
}

/// Peak signal-to-noise ratio between two 8-bit buffers, in dB against the
/// 255 peak. Identical buffers report infinity.
pub fn psnr(a: &[u8], b: &[u8]) -> f64 {
    assert_eq!(a.len(), b.len(), "buffers must be the same length");
    assert!(!a.is_empty(), "buffers must not be empty");
    let mse: f64 =
        a.iter().zip(b).map(|(&x, &y)| (x as f64 - y as f64).powi(2)).sum::<f64>() / a.len() as f64;
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0 * 255.0 / mse).log10()
    }
}

/// Signal-to-noise ratio of `estimate` against `reference`, in dB: the energy
/// of the reference over the energy of the error. An exact match reports
/// infinity.
pub fn snr(reference: &[f64], estimate: &[f64]) -> f64 {
    assert_eq!(reference.len(), estimate.len(), "buffers must be the same length");
    assert!(!reference.is_empty(), "buffers must not be empty");
    let signal: f64 = reference.iter().map(|&s| s * s).sum();
    let noise: f64 = reference.iter().zip(estimate).map(|(&s, &e)| (s - e).powi(2)).sum();
    if noise == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (signal / noise).log10()
    }
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
/// `(K1 * 255)^2` with the conventional K1 = 0.01.
const SSIM_C1: f64 = 6.5025;
/// `(K2 * 255)^2` with the conventional K2 = 0.03.
const SSIM_C2: f64 = 58.5225;

fn gaussian_taps() -> [f64; SSIM_WINDOW] {
    let mut taps = [0.0f64; SSIM_WINDOW];
    let center = (SSIM_WINDOW / 2) as f64;
    let mut sum = 0.0;
    for (i, t) in taps.iter_mut().enumerate() {
        let d = i as f64 - center;
        *t = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
        sum += *t;
    }
    for t in &mut taps {
        *t /= sum;
    }
    taps
}

/// Valid-region separable Gaussian blur of a `w`x`h` plane; the result is
/// `(w - 10)` by `(h - 10)`.
fn blur_valid(src: &[f64], w: usize, h: usize, taps: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut rows = vec![0.0f64; ow * h];
    for y in 0..h {
        for x in 0..ow {
            let mut acc = 0.0;
            for (k, t) in taps.iter().enumerate() {
                acc += t * src[y * w + x + k];
            }
            rows[y * ow + x] = acc;
        }
    }
    let mut out = vec![0.0f64; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            let mut acc = 0.0;
            for (k, t) in taps.iter().enumerate() {
                acc += t * rows[(y + k) * ow + x];
            }
            out[y * ow + x] = acc;
        }
    }
    out
}

/// Mean structural similarity of one channel plane over all fully interior
/// 11x11 windows.
fn ssim_plane(x: &[f64], y: &[f64], w: usize, h: usize) -> f64 {
    let taps = gaussian_taps();
    let xx: Vec<f64> = x.iter().map(|&v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|&v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(y).map(|(&a, &b)| a * b).collect();
    let mu_x = blur_valid(x, w, h, &taps);
    let mu_y = blur_valid(y, w, h, &taps);
    let m_xx = blur_valid(&xx, w, h, &taps);
    let m_yy = blur_valid(&yy, w, h, &taps);
    let m_xy = blur_valid(&xy, w, h, &taps);

    let mut sum = 0.0;
    for i in 0..mu_x.len() {
        let var_x = m_xx[i] - mu_x[i] * mu_x[i];
        let var_y = m_yy[i] - mu_y[i] * mu_y[i];
        let cov = m_xy[i] - mu_x[i] * mu_y[i];
        let num = (2.0 * mu_x[i] * mu_y[i] + SSIM_C1) * (2.0 * cov + SSIM_C2);
        let den = (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + SSIM_C1) * (var_x + var_y + SSIM_C2);
        sum += num / den;
    }
    sum / mu_x.len() as f64
}

fn channel_plane(img: &Rgb8Image, c: usize) -> Vec<f64> {
    img.pixels().iter().skip(c).step_by(3).map(|&p| p as f64).collect()
}

/// Mean structural similarity between two images: Gaussian-weighted 11x11
/// windows over the fully interior positions, averaged across the three
/// channels. Both images must share dimensions of at least 11x11.
pub fn ssim(a: &Rgb8Image, b: &Rgb8Image) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::InvalidArgument(format!(
            "cannot compare a {}x{} image with a {}x{} image",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    if a.width() < SSIM_WINDOW || a.height() < SSIM_WINDOW {
        return Err(Error::InvalidArgument(format!(
            "structural similarity needs at least {SSIM_WINDOW}x{SSIM_WINDOW} pixels, got {}x{}",
            a.width(),
            a.height()
        )));
    }
    let mut total = 0.0;
    for c in 0..3 {
        let pa = channel_plane(a, c);
        let pb = channel_plane(b, c);
        total += ssim_plane(&pa, &pb, a.width(), a.height());
    }
    Ok(total / 3.0)
}

/// Mean structural similarity across paired frame sequences.
pub fn ssim_frames(a: &[Rgb8Image], b: &[Rgb8Image]) -> Result<f64> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "frame sequences must pair up and be non-empty, got {} and {} frames",
            a.len(),
            b.len()
        )));
    }
    let mut total = 0.0;
    for (fa, fb) in a.iter().zip(b) {
        total += ssim(fa, fb)?;
    }
    Ok(total / a.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::SeededRng;

    fn noise_image(side: usize, seed: u64) -> Rgb8Image {
        let mut rng = SeededRng::new(seed);
        let mut img = Rgb8Image::new(side, side);
        for y in 0..side {
            for x in 0..side {
                for c in 0..3 {
                    img.set_channel(x, y, c, rng.below(256) as u8);
                }
            }
        }
        img
    }

    fn textured_image(side: usize) -> Rgb8Image {
        let mut img = Rgb8Image::new(side, side);
        for y in 0..side {
            for x in 0..side {
                img.set_channel(x, y, 0, ((x * 13 + y * 7) % 256) as u8);
                img.set_channel(x, y, 1, ((x * x + 3 * y) % 256) as u8);
                img.set_channel(x, y, 2, ((x * y + 19) % 256) as u8);
            }
        }
        img
    }

    #[test]
    fn apd_of_constant_offset_is_the_offset() {
        let a = [100u8; 48];
        let b = [116u8; 48];
        assert_eq!(apd(&a, &b), 16.0);
        assert_eq!(apd(&[10, 30], &[20, 20]), 10.0, "signs of the differences must not cancel");
    }

    #[test]
    fn ae_counts_sixteen_bit_steps() {
        assert_eq!(ae(&[0, 100, -5], &[1, 100, -8]), 4.0 / 3.0);
        assert_eq!(ae(&[i16::MIN], &[i16::MAX]), 65535.0);
    }

    #[test]
    fn psnr_of_constant_offset_matches_closed_form() {
        let a = [50u8; 100];
        let b = [66u8; 100];
        let got = psnr(&a, &b);
        assert!(
            (got - 24.048403955561).abs() < 1e-6,
            "a uniform 16-level error is 10*log10(255^2/16^2) dB, got {got}"
        );
    }

    #[test]
    fn psnr_of_identical_buffers_is_infinite() {
        let a = [7u8, 200, 13];
        assert!(psnr(&a, &a).is_infinite());
    }

    #[test]
    fn snr_of_ten_percent_amplitude_error_is_twenty_db() {
        let reference: Vec<f64> = (0..500).map(|i| (i as f64 * 0.37).sin() * 900.0).collect();
        let estimate: Vec<f64> = reference.iter().map(|&s| 1.1 * s).collect();
        let got = snr(&reference, &estimate);
        assert!((got - 20.0).abs() < 1e-9, "10% amplitude error is exactly 20 dB, got {got}");
        assert!(snr(&reference, &reference).is_infinite());
    }

    #[test]
    fn ssim_of_identical_images_is_exactly_one() {
        let img = noise_image(16, 5);
        assert_eq!(ssim(&img, &img).unwrap(), 1.0);
        let frames = vec![noise_image(16, 6), noise_image(16, 7)];
        assert_eq!(ssim_frames(&frames, &frames).unwrap(), 1.0);
    }

    /// Direct-summation structural similarity: its own kernel, its own window
    /// walk, no shared code with the separable implementation above.
    fn ssim_oracle(a: &Rgb8Image, b: &Rgb8Image) -> f64 {
        let (w, h) = (a.width(), a.height());
        let mut kernel = [[0.0f64; 11]; 11];
        let mut ksum = 0.0;
        for (i, row) in kernel.iter_mut().enumerate() {
            for (j, k) in row.iter_mut().enumerate() {
                let dy = i as f64 - 5.0;
                let dx = j as f64 - 5.0;
                *k = (-(dx * dx + dy * dy) / 4.5).exp();
                ksum += *k;
            }
        }
        for row in &mut kernel {
            for k in row {
                *k /= ksum;
            }
        }
        let mut channel_means = 0.0;
        for c in 0..3 {
            let mut sum = 0.0;
            let mut windows = 0usize;
            for top in 0..=(h - 11) {
                for left in 0..=(w - 11) {
                    let (mut mx, mut my, mut mxx, mut myy, mut mxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
                    for (i, row) in kernel.iter().enumerate() {
                        for (j, &k) in row.iter().enumerate() {
                            let x = a.channel(left + j, top + i, c) as f64;
                            let y = b.channel(left + j, top + i, c) as f64;
                            mx += k * x;
                            my += k * y;
                            mxx += k * x * x;
                            myy += k * y * y;
                            mxy += k * x * y;
                        }
                    }
                    let (vx, vy, cov) = (mxx - mx * mx, myy - my * my, mxy - mx * my);
                    sum += ((2.0 * mx * my + 6.5025) * (2.0 * cov + 58.5225))
                        / ((mx * mx + my * my + 6.5025) * (vx + vy + 58.5225));
                    windows += 1;
                }
            }
            channel_means += sum / windows as f64;
        }
        channel_means / 3.0
    }

    #[test]
    fn ssim_matches_direct_window_computation() {
        let a = textured_image(16);
        let mut b = textured_image(16);
        let mut rng = SeededRng::new(11);
        for y in 0..16 {
            for x in 0..16 {
                for c in 0..3 {
                    let bump = rng.below(25) as i32 - 12;
                    let v = (b.channel(x, y, c) as i32 + bump).clamp(0, 255) as u8;
                    b.set_channel(x, y, c, v);
                }
            }
        }
        let fast = ssim(&a, &b).unwrap();
        let slow = ssim_oracle(&a, &b);
        assert!(
            (fast - slow).abs() < 1e-6,
            "separable implementation {fast} disagrees with direct sums {slow}"
        );
        assert!(fast < 1.0);
    }

    #[test]
    fn ssim_orders_degradations_by_severity() {
        let base = textured_image(24);
        let mut rng = SeededRng::new(3);
        let mut jitter = |img: &Rgb8Image, amp: i32| {
            let mut out = img.clone();
            for y in 0..img.height() {
                for x in 0..img.width() {
                    for c in 0..3 {
                        let bump = rng.below(2 * amp as u32 + 1) as i32 - amp;
                        let v = (img.channel(x, y, c) as i32 + bump).clamp(0, 255) as u8;
                        out.set_channel(x, y, c, v);
                    }
                }
            }
            out
        };
        let light = jitter(&base, 4);
        let heavy = jitter(&base, 40);
        let s_light = ssim(&base, &light).unwrap();
        let s_heavy = ssim(&base, &heavy).unwrap();
        assert!(s_light < 1.0);
        assert!(
            s_heavy < s_light,
            "heavier noise must score lower: light {s_light}, heavy {s_heavy}"
        );
    }

    #[test]
    fn ssim_rejects_mismatched_or_undersized_input() {
        let a = noise_image(16, 1);
        let b = noise_image(12, 1);
        assert!(ssim(&a, &b).is_err(), "different sizes");
        let tiny = noise_image(8, 1);
        assert!(ssim(&tiny, &tiny).is_err(), "smaller than the analysis window");
        assert!(ssim_frames(std::slice::from_ref(&a), &[]).is_err(), "unpaired frames");
        assert!(ssim_frames(&[], &[]).is_err(), "empty sequences");
    }
}
