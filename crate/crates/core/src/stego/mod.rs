//! The hiding machinery: weight quantization, the weights-as-image codec,
//! training losses, and the hide/reveal entry points.

mod codec;
mod loss;
mod quant;
mod train;

pub use codec::{cover_targets, image_to_network, network_to_image};
pub use loss::{cover_loss_and_grad, secret_loss_and_grad, ste_gate};
pub use quant::{dequantize_level, quantize_dequantize, quantize_level, quantize_matrix};
pub use train::{hide, reveal, TrainConfig};
