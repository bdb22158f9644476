//! Training losses, their gradients, and the straight-through gate.

use crate::numeric::Matrix;

/// Reconstruction loss on a minibatch: squared error summed over sample
/// channels, averaged over the batch. Returns the loss and its gradient
/// with respect to the prediction, `2 (y - d) / batch`.
pub fn secret_loss_and_grad(y: &Matrix, d: &Matrix) -> (f64, Matrix) {
    assert_eq!(y.rows(), d.rows(), "prediction and target batches differ in size");
    assert_eq!(y.cols(), d.cols(), "prediction and target widths differ");
    let batch = y.rows() as f64;
    let mut grad = Matrix::zeros(y.rows(), y.cols());
    let mut loss = 0.0f64;
    for ((g, &yv), &dv) in grad.data_mut().iter_mut().zip(y.data()).zip(d.data()) {
        let diff = yv - dv;
        loss += diff as f64 * diff as f64;
        *g = 2.0 * diff / batch as f32;
    }
    (loss / batch, grad)
}

/// Container-appearance loss: mean squared difference between the quantized
/// carried weights and the dequantized cover, over all carried entries
/// together. Returns the loss and one gradient per carried matrix,
/// `2 (q - t) / total_entries`.
pub fn cover_loss_and_grad(quantized: &[&Matrix; 3], targets: &[Matrix; 3]) -> (f64, Vec<Matrix>) {
    let total: usize = quantized.iter().map(|m| m.data().len()).sum();
    let mut grads = Vec::with_capacity(3);
    let mut loss = 0.0f64;
    for (q, t) in quantized.iter().zip(targets) {
        assert_eq!(
            (q.rows(), q.cols()),
            (t.rows(), t.cols()),
            "carried matrix and cover target differ in shape"
        );
        let mut grad = Matrix::zeros(q.rows(), q.cols());
        for ((g, &qv), &tv) in grad.data_mut().iter_mut().zip(q.data()).zip(t.data()) {
            let diff = qv - tv;
            loss += diff as f64 * diff as f64;
            *g = 2.0 * diff / total as f32;
        }
        grads.push(grad);
    }
    (loss / total as f64, grads)
}

/// Straight-through gate: the gradient that arrived at a quantized weight
/// passes to the underlying float weight while that weight sits inside the
/// quantization range (inclusive), and is dropped once it has escaped.
/// Out-of-range weights can therefore only be moved back by other forces —
/// in practice that freezes runaways instead of letting them drift further.
#[inline]
pub fn ste_gate(grad_q: f32, w: f32, w_min: f32, w_max: f32) -> f32 {
    if w >= w_min && w <= w_max {
        grad_q
    } else {
        0.0
    }
}
