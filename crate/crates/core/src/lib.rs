//! Hide a video, audio clip, or image inside an ordinary-looking RGB image.
//!
//! The carrier is a small sine-activated network ("implicit representation")
//! that maps coordinates to signal samples. Three of its hidden weight
//! matrices are trainable; everything else — remaining weights, bias phases,
//! layer shapes — is derived from a shared secret seed. After quantization-
//! aware training, the three trainable matrices are quantized to 8 bits and
//! written out as the red, green, and blue channels of a PNG. Whoever holds
//! the key file rebuilds the frozen parts from the seed, reads the trainable
//! ones back out of the PNG, and evaluates the network over a coordinate grid
//! to recover the hidden signal. Without the seed the container decodes to
//! noise.
//!
//! Module map:
//! - [`numeric`]: row-major matrices, deterministic matmul kernels, the
//!   seeded generator, and an Adam optimizer.
//! - [`inr`]: network shape, seeded initialization, forward and backward
//!   passes.
//! - [`stego`]: weight quantization, the weights-as-image codec, training
//!   losses, and the hide/reveal entry points.
//! - [`signals`]: coordinate grids, PNG / WAV / frame-directory I/O, and
//!   sample emission back to 8- and 16-bit formats.
//! - [`metrics`]: distortion measures (APD, AE, PSNR, SNR, SSIM).
//! - [`key`]: the JSON key file, its validation rules, and fingerprints.
//! - [`report`]: training history and summary reports.
//! - [`cli`]: implementations of the `inrstego` subcommands.

pub mod cli;
pub mod error;
pub mod inr;
pub mod key;
pub mod metrics;
pub mod numeric;
pub mod report;
pub mod signals;
pub mod stego;

pub use error::{Error, Result};
