//! Quantization-aware training of the carried layers, and container decoding.
//!
//! Each step snaps the carried float weights to the 8-bit grid, runs the
//! network with the snapped values, and backpropagates both losses to them.
//! The straight-through gate then forwards those gradients to the float
//! weights wherever they still sit inside the quantization range, and Adam
//! updates the floats. Disabling quantization-aware training turns the snap
//! into a no-op during the run; export always quantizes.
//!
//! The carried layers start at the dequantized cover rather than at random:
//! the appearance loss then starts at zero, training only spends appearance
//! budget where reconstruction demands it, and a zero-step run exports a
//! container that is bit-identical to the cover.

use crate::error::{Error, Result};
use crate::inr::Network;
use crate::key::KeyFile;
use crate::numeric::{Adam, Matrix, SeededRng};
use crate::report::{TrainReport, TrainRow};
use crate::signals::Rgb8Image;
use crate::stego::codec::{cover_targets, image_to_network, network_to_image};
use crate::stego::loss::{cover_loss_and_grad, secret_loss_and_grad, ste_gate};
use crate::stego::quant::quantize_matrix;

/// Hyperparameters of a hide run.
#[derive(Clone, Debug)]
pub struct TrainConfig {
    /// Optimizer steps.
    pub steps: u64,
    /// Coordinates per minibatch; capped by the signal size.
    pub batch_size: usize,
    pub learning_rate: f32,
    /// Weight of the container-appearance loss.
    pub beta: f32,
    /// Seed for the minibatch shuffle (independent of the key seed).
    pub shuffle_seed: u64,
    /// Snap carried weights to the grid inside the training loop. When off,
    /// training runs in float and only the export quantizes.
    pub qat: bool,
    /// History cadence in steps; 0 records only the final step.
    pub log_every: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            steps: 5000,
            batch_size: 4096,
            learning_rate: 1e-3,
            beta: 1.0,
            shuffle_seed: 1,
            qat: true,
            log_every: 100,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument("batch size must be at least 1".into()));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "learning rate must be positive and finite, got {}",
                self.learning_rate
            )));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "appearance weight must be finite and non-negative, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// Copies the listed rows into a new matrix.
fn gather_rows(m: &Matrix, idx: &[u32]) -> Matrix {
    let mut data = Vec::with_capacity(idx.len() * m.cols());
    for &i in idx {
        data.extend_from_slice(m.row(i as usize));
    }
    Matrix::from_vec(idx.len(), m.cols(), data).expect("gathered size is consistent")
}

/// Evaluates `net` over `coords` in bounded-memory chunks.
pub(crate) fn forward_in_chunks(net: &Network, coords: &Matrix, chunk_rows: usize) -> Matrix {
    let k = coords.cols();
    let m = net.shape().output_dim;
    let mut out = Vec::with_capacity(coords.rows() * m);
    let mut start = 0usize;
    while start < coords.rows() {
        let end = (start + chunk_rows).min(coords.rows());
        let chunk =
            Matrix::from_vec(end - start, k, coords.data()[start * k..end * k].to_vec())
                .expect("chunk bounds are in range");
        out.extend_from_slice(net.forward(&chunk).data());
        start = end;
    }
    Matrix::from_vec(coords.rows(), m, out).expect("output accumulates one row per coordinate")
}

/// Trains the carried layers so the network reproduces `samples` at `coords`
/// while the exported container stays close to `cover`, then encodes the
/// container image.
///
/// `coords` must be the full evaluation grid of the secret (one row per
/// sample); `samples` holds the normalized target values row for row.
pub fn hide(
    key: &KeyFile,
    cover: &Rgb8Image,
    coords: &Matrix,
    samples: &Matrix,
    cfg: &TrainConfig,
) -> Result<(Rgb8Image, TrainReport)> {
    key.validate()?;
    cfg.validate()?;
    let expected: usize = key.secret_dims.iter().product();
    if coords.rows() != expected || coords.cols() != key.input_dim {
        return Err(Error::InvalidArgument(format!(
            "coordinate grid is {}x{} but the key's secret needs {}x{}",
            coords.rows(),
            coords.cols(),
            expected,
            key.input_dim
        )));
    }
    if samples.rows() != expected || samples.cols() != key.output_dim {
        return Err(Error::InvalidArgument(format!(
            "sample matrix is {}x{} but the key's secret needs {}x{}",
            samples.rows(),
            samples.cols(),
            expected,
            key.output_dim
        )));
    }

    let targets = cover_targets(cover, key)?;
    let mut work = Network::init(&key.network_shape(), key.seed)?;

    // Carried layers in ascending order for backprop, remembering which
    // channel each one serves.
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by_key(|&c| key.variable_layers[c]);
    let sorted_layers: Vec<usize> = order.iter().map(|&c| key.variable_layers[c]).collect();

    // Float weights start at the dequantized cover.
    let mut floats: Vec<Matrix> = targets.to_vec();
    let mut adams: Vec<Adam> = floats
        .iter()
        .map(|m| Adam::new(cfg.learning_rate, m.data().len()))
        .collect();

    let n = coords.rows();
    let mut rng = SeededRng::new(cfg.shuffle_seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut pos = n; // forces a shuffle before the first batch

    let mut history: Vec<TrainRow> = Vec::new();
    let mut last_good_step = 0u64;

    for step in 1..=cfg.steps {
        if pos >= n {
            rng.shuffle(&mut perm);
            pos = 0;
        }
        let take = cfg.batch_size.min(n - pos);
        let idx = &perm[pos..pos + take];
        pos += take;
        let xb = gather_rows(coords, idx);
        let db = gather_rows(samples, idx);

        // Snap to the grid (or pass floats through when QAT is off) and run.
        let snapped: Vec<Matrix> = floats
            .iter()
            .map(|w| if cfg.qat { quantize_matrix(w, key.w_min, key.w_max) } else { w.clone() })
            .collect();
        for (c, q) in snapped.iter().enumerate() {
            work.set_weights(key.variable_layers[c], q.clone())?;
        }
        let (y, trace) = work.forward_traced(&xb);
        let (secret_loss, gy) = secret_loss_and_grad(&y, &db);
        let layer_grads = work.backward(&trace, &gy, &sorted_layers);

        let (cover_loss, cover_grads) =
            cover_loss_and_grad(&[&snapped[0], &snapped[1], &snapped[2]], &targets);

        let total_loss = secret_loss + cfg.beta as f64 * cover_loss;
        if !total_loss.is_finite() {
            return Err(Error::Diverged { step, last_good_step });
        }
        last_good_step = step;

        for (slot, &channel) in order.iter().enumerate() {
            let secret_grad = &layer_grads[slot];
            let cover_grad = &cover_grads[channel];
            let w = &mut floats[channel];
            let mut grad = vec![0.0f32; w.data().len()];
            for (((g, &gs), &gc), &wv) in grad
                .iter_mut()
                .zip(secret_grad.data())
                .zip(cover_grad.data())
                .zip(w.data())
            {
                let combined = gs + cfg.beta * gc;
                *g = if cfg.qat { ste_gate(combined, wv, key.w_min, key.w_max) } else { combined };
            }
            adams[channel].step(w.data_mut(), &grad);
        }

        let log_now = (cfg.log_every > 0 && step % cfg.log_every == 0) || step == cfg.steps;
        if log_now {
            history.push(TrainRow { step, secret_loss, cover_loss, total_loss });
        }
    }

    // Export: quantize whatever the floats ended at and measure the result.
    for (c, w) in floats.iter().enumerate() {
        work.set_weights(key.variable_layers[c], quantize_matrix(w, key.w_min, key.w_max))?;
    }
    let container = network_to_image(&work, &key.variable_layers, key.w_min, key.w_max)?;

    let y = forward_in_chunks(&work, coords, cfg.batch_size.max(4096));
    let (final_secret_loss, _) = secret_loss_and_grad(&y, samples);
    let mse_per_value = {
        let mut acc = 0.0f64;
        for (yv, dv) in y.data().iter().zip(samples.data()) {
            let d = *yv as f64 - *dv as f64;
            acc += d * d;
        }
        acc / y.data().len() as f64
    };
    let secret_psnr_db = if mse_per_value == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (4.0 / mse_per_value).log10()
    };

    let snapped: Vec<Matrix> = key
        .variable_layers
        .iter()
        .map(|&l| work.weights(l).clone())
        .collect();
    let (final_cover_loss, _) =
        cover_loss_and_grad(&[&snapped[0], &snapped[1], &snapped[2]], &targets);

    let (cover_psnr_db, cover_apd) = {
        let a = container.pixels();
        let b = cover.pixels();
        let mut sq = 0.0f64;
        let mut abs = 0.0f64;
        for (&x, &y) in a.iter().zip(b) {
            let d = x as f64 - y as f64;
            sq += d * d;
            abs += d.abs();
        }
        let mse = sq / a.len() as f64;
        let psnr =
            if mse == 0.0 { f64::INFINITY } else { 10.0 * (255.0f64 * 255.0 / mse).log10() };
        (psnr, abs / a.len() as f64)
    };

    let report = TrainReport {
        key_fingerprint: key.fingerprint(),
        steps: cfg.steps,
        qat: cfg.qat,
        beta: cfg.beta,
        learning_rate: cfg.learning_rate,
        batch_size: cfg.batch_size,
        history,
        final_secret_loss,
        final_cover_loss,
        secret_psnr_db,
        cover_psnr_db,
        cover_apd,
    };
    Ok((container, report))
}

/// Decodes a container: rebuilds the network it carries and evaluates it
/// over the secret's full coordinate grid. Returns normalized samples, one
/// row per grid point.
pub fn reveal(key: &KeyFile, container: &Rgb8Image) -> Result<Matrix> {
    key.validate()?;
    let net = image_to_network(container, key)?;
    let coords = crate::signals::make_grid(&key.secret_dims);
    Ok(forward_in_chunks(&net, &coords, 16_384))
}
