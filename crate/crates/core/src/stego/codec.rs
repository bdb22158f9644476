//! Weights-as-image codec.
//!
//! The container is an ordinary RGB PNG whose three channels are the three
//! carried weight matrices, quantized to 8 bits. Channel `c` of the pixel at
//! column `x`, row `r` is the level of entry `(r, x)` of carried matrix `c`.
//! Decoding rebuilds the frozen network from the seed and overwrites the
//! carried layers with dequantized pixel values, so encode → decode lands
//! every carried weight exactly on its quantization grid value.

use crate::error::{Error, Result};
use crate::inr::Network;
use crate::key::KeyFile;
use crate::numeric::Matrix;
use crate::signals::Rgb8Image;
use crate::stego::quant::{dequantize_level, quantize_level};

/// Encodes the carried layers of a trained network as an RGB image.
///
/// `carried` lists the three hidden-layer indexes in channel order (red,
/// green, blue); each must be a square hidden matrix of the network.
pub fn network_to_image(
    net: &Network,
    carried: &[usize; 3],
    w_min: f32,
    w_max: f32,
) -> Result<Rgb8Image> {
    let side = net.shape().hidden_width;
    for &layer in carried {
        if !net.shape().is_hidden_square(layer) {
            return Err(Error::InvalidArgument(format!(
                "layer {layer} is not a hidden square matrix and cannot be carried"
            )));
        }
    }
    let mut img = Rgb8Image::new(side, side);
    for (c, &layer) in carried.iter().enumerate() {
        let w = net.weights(layer);
        for r in 0..side {
            for x in 0..side {
                img.set_channel(x, r, c, quantize_level(w.at(r, x), w_min, w_max));
            }
        }
    }
    Ok(img)
}

/// Rebuilds the full network a container image carries, using the key for
/// the seed, shape, carried-layer list, and quantization range.
///
/// The image must be square with side equal to the key's hidden width.
pub fn image_to_network(img: &Rgb8Image, key: &KeyFile) -> Result<Network> {
    let side = key.hidden_width;
    if img.width() != side || img.height() != side {
        return Err(Error::InvalidArgument(format!(
            "container is {}x{} but the key calls for {side}x{side}",
            img.width(),
            img.height()
        )));
    }
    let mut net = Network::init(&key.network_shape(), key.seed)?;
    for (c, &layer) in key.variable_layers.iter().enumerate() {
        let mut w = Matrix::zeros(side, side);
        for r in 0..side {
            for x in 0..side {
                w.set(r, x, dequantize_level(img.channel(x, r, c), key.w_min, key.w_max));
            }
        }
        net.set_weights(layer, w)?;
    }
    Ok(net)
}

/// Dequantized cover image, one matrix per carried layer in channel order:
/// the weight values each carried entry is pulled toward, and the values
/// training starts from.
pub fn cover_targets(cover: &Rgb8Image, key: &KeyFile) -> Result<[Matrix; 3]> {
    let side = key.hidden_width;
    if cover.width() != side || cover.height() != side {
        return Err(Error::InvalidArgument(format!(
            "cover is {}x{} but the key calls for {side}x{side}",
            cover.width(),
            cover.height()
        )));
    }
    let mut out = [Matrix::zeros(side, side), Matrix::zeros(side, side), Matrix::zeros(side, side)];
    for (c, target) in out.iter_mut().enumerate() {
        for r in 0..side {
            for x in 0..side {
                target.set(r, x, dequantize_level(cover.channel(x, r, c), key.w_min, key.w_max));
            }
        }
    }
    Ok(out)
}
