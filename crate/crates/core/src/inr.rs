//! The sine-activated coordinate network and its seeded initialization.
//!
//! The network maps a coordinate vector (time, row, column — whatever the
//! modality uses) to a sample vector. Layer zero applies a frequency
//! multiplier inside the sine, the hidden layers apply plain sines, and the
//! last layer is linear:
//!
//! ```text
//! a0 = sin(omega0 * (W0 x + b0))
//! al = sin(Wl a(l-1) + bl)          1 <= l <= L-2
//! y  = W(L-1) a(L-2) + b(L-1)
//! ```
//!
//! Biases are never trained. They are drawn from the seeded generator as
//! random phases and then frozen: a sine layer with all-zero biases is an odd
//! function of its input, and a stack of odd layers stays odd end to end, so
//! a zero-bias network can only ever fit the odd part of a signal over the
//! symmetric coordinate grid. Random phases break that symmetry and restore
//! full expressivity while remaining reproducible from the seed alone.
//!
//! Initialization draws, in pinned order (layer 0, 1, …, each matrix
//! row-major and then its bias):
//!
//! - layer 0 weights uniform on `±1/input_dim`, bias phases on
//!   `±pi/omega0` (the multiplier turns them into `±pi` inside the sine);
//! - hidden and final weights uniform on `±sqrt(6/hidden_width)`;
//! - hidden bias phases uniform on `±pi`; the final bias is zero and draws
//!   nothing from the stream.

use crate::error::{Error, Result};
use crate::numeric::{grad_inputs, grad_weights, linear_forward, Matrix, SeededRng};

/// Architecture of a coordinate network. All dimensions are counts of
/// scalars, `num_layers` counts weight matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkShape {
    /// Coordinate dimensionality (1 audio, 2 image, 3 video).
    pub input_dim: usize,
    /// Sample dimensionality (1 mono audio, 3 RGB).
    pub output_dim: usize,
    /// Width of every hidden activation vector.
    pub hidden_width: usize,
    /// Total number of weight matrices; at least 3 (first, one hidden, final).
    pub num_layers: usize,
    /// Frequency multiplier applied inside the first sine.
    pub omega0: f32,
}

impl NetworkShape {
    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 || self.output_dim == 0 {
            return Err(Error::InvalidArgument(
                "network input and output dimensions must be at least 1".into(),
            ));
        }
        if self.hidden_width == 0 {
            return Err(Error::InvalidArgument("hidden width must be at least 1".into()));
        }
        if self.num_layers < 3 {
            return Err(Error::InvalidArgument(format!(
                "network needs at least 3 layers (first, hidden, final), got {}",
                self.num_layers
            )));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "frequency multiplier must be positive and finite, got {}",
                self.omega0
            )));
        }
        Ok(())
    }

    /// Rows and columns of weight matrix `layer`.
    pub fn layer_dims(&self, layer: usize) -> (usize, usize) {
        let last = self.num_layers - 1;
        let rows = if layer == last { self.output_dim } else { self.hidden_width };
        let cols = if layer == 0 { self.input_dim } else { self.hidden_width };
        (rows, cols)
    }

    /// Half-width of the uniform init range for weight matrix `layer`; the
    /// same bound is used as the default quantization range for carried
    /// layers (scaled by the key's range factor).
    pub fn init_bound(&self, layer: usize) -> f32 {
        if layer == 0 {
            1.0 / self.input_dim as f32
        } else {
            (6.0 / self.hidden_width as f32).sqrt()
        }
    }

    /// True if `layer` is a hidden (square, sine-activated, non-first)
    /// matrix — the only kind the container image may carry.
    pub fn is_hidden_square(&self, layer: usize) -> bool {
        layer >= 1 && layer + 1 < self.num_layers
    }
}

/// A fully materialized network: shape plus every weight matrix and frozen
/// bias vector.
#[derive(Clone, Debug)]
pub struct Network {
    shape: NetworkShape,
    weights: Vec<Matrix>,
    biases: Vec<Vec<f32>>,
}

/// Pre-activations and layer inputs captured during a forward pass, enough
/// to run the backward pass without recomputing anything.
pub struct ForwardTrace {
    /// `inputs[l]` is the batch fed to layer `l` (row per sample).
    inputs: Vec<Matrix>,
    /// `preacts[l]` is `W_l * inputs[l] + b_l` before the activation.
    preacts: Vec<Matrix>,
}

impl Network {
    /// Draws every weight and bias phase for `shape` from the generator
    /// seeded with `seed`. The draw order is part of the container format:
    /// changing it would desynchronize hiding and revealing.
    pub fn init(shape: &NetworkShape, seed: u64) -> Result<Self> {
        shape.validate()?;
        let mut rng = SeededRng::new(seed);
        let mut weights = Vec::with_capacity(shape.num_layers);
        let mut biases = Vec::with_capacity(shape.num_layers);
        let last = shape.num_layers - 1;
        for layer in 0..shape.num_layers {
            let (rows, cols) = shape.layer_dims(layer);
            let bound = shape.init_bound(layer);
            let mut w = Matrix::zeros(rows, cols);
            rng.uniform_fill(w.data_mut(), -bound, bound);
            let mut b = vec![0.0f32; rows];
            if layer == 0 {
                let phase = std::f32::consts::PI / shape.omega0;
                rng.uniform_fill(&mut b, -phase, phase);
            } else if layer < last {
                rng.uniform_fill(&mut b, -std::f32::consts::PI, std::f32::consts::PI);
            }
            weights.push(w);
            biases.push(b);
        }
        Ok(Network { shape: shape.clone(), weights, biases })
    }

    pub fn shape(&self) -> &NetworkShape {
        &self.shape
    }

    /// Weight matrix of `layer`.
    pub fn weights(&self, layer: usize) -> &Matrix {
        &self.weights[layer]
    }

    /// Replaces the weight matrix of `layer`. The replacement must keep the
    /// layer's dimensions.
    pub fn set_weights(&mut self, layer: usize, w: Matrix) -> Result<()> {
        let (rows, cols) = self.shape.layer_dims(layer);
        if w.rows() != rows || w.cols() != cols {
            return Err(Error::InvalidArgument(format!(
                "layer {layer} expects {rows}x{cols} weights, got {}x{}",
                w.rows(),
                w.cols()
            )));
        }
        self.weights[layer] = w;
        Ok(())
    }

    /// Frozen bias vector of `layer`.
    pub fn biases(&self, layer: usize) -> &[f32] {
        &self.biases[layer]
    }

    /// Activation derivative factor for the output of `layer` evaluated at
    /// pre-activation `z`: `omega0 * cos(omega0 z)` for layer 0, `cos(z)` for
    /// hidden layers. The final layer is linear and never queried.
    fn activation_derivative(&self, layer: usize, z: f32) -> f32 {
        if layer == 0 {
            self.shape.omega0 * (self.shape.omega0 * z).cos()
        } else {
            z.cos()
        }
    }

    fn apply_activation(&self, layer: usize, z: &mut Matrix) {
        let last = self.shape.num_layers - 1;
        if layer == last {
            return;
        }
        let scale = if layer == 0 { self.shape.omega0 } else { 1.0 };
        for v in z.data_mut().iter_mut() {
            *v = (scale * *v).sin();
        }
    }

    /// Evaluates the network on a batch of coordinates (one per row)
    /// without keeping intermediate state.
    pub fn forward(&self, coords: &Matrix) -> Matrix {
        assert_eq!(
            coords.cols(),
            self.shape.input_dim,
            "coordinate batch width must match the network input dimension"
        );
        let mut a = linear_forward(coords, &self.weights[0], &self.biases[0]);
        self.apply_activation(0, &mut a);
        for layer in 1..self.shape.num_layers {
            let mut z = linear_forward(&a, &self.weights[layer], &self.biases[layer]);
            self.apply_activation(layer, &mut z);
            a = z;
        }
        a
    }

    /// Forward pass that also captures the intermediate state needed by
    /// [`Network::backward`].
    pub fn forward_traced(&self, coords: &Matrix) -> (Matrix, ForwardTrace) {
        assert_eq!(
            coords.cols(),
            self.shape.input_dim,
            "coordinate batch width must match the network input dimension"
        );
        let mut inputs = Vec::with_capacity(self.shape.num_layers);
        let mut preacts = Vec::with_capacity(self.shape.num_layers);
        let mut a = coords.clone();
        for layer in 0..self.shape.num_layers {
            let z = linear_forward(&a, &self.weights[layer], &self.biases[layer]);
            inputs.push(a);
            preacts.push(z.clone());
            let mut act = z;
            self.apply_activation(layer, &mut act);
            a = act;
        }
        (a, ForwardTrace { inputs, preacts })
    }

    /// Backpropagates `grad_output` (gradient of a scalar loss with respect
    /// to the network output, one row per sample) down to the weight
    /// matrices listed in `layers`, which must be sorted ascending.
    ///
    /// Returns one gradient matrix per requested layer, in the same order.
    /// Propagation stops below the smallest requested layer.
    pub fn backward(
        &self,
        trace: &ForwardTrace,
        grad_output: &Matrix,
        layers: &[usize],
    ) -> Vec<Matrix> {
        assert!(!layers.is_empty(), "backward needs at least one target layer");
        assert!(layers.windows(2).all(|w| w[0] < w[1]), "target layers must be sorted");
        let lowest = layers[0];
        let mut grads: Vec<Option<Matrix>> = vec![None; layers.len()];
        let mut g = grad_output.clone();
        for layer in (lowest..self.shape.num_layers).rev() {
            if let Some(slot) = layers.iter().position(|&l| l == layer) {
                grads[slot] = Some(grad_weights(&g, &trace.inputs[layer]));
            }
            if layer == lowest {
                break;
            }
            // Push the gradient through this layer's weights, then through
            // the activation of the layer below.
            let mut gx = grad_inputs(&g, &self.weights[layer]);
            let below = layer - 1;
            let z = &trace.preacts[below];
            for (slot, &zv) in gx.data_mut().iter_mut().zip(z.data()) {
                *slot *= self.activation_derivative(below, zv);
            }
            g = gx;
        }
        grads.into_iter().map(|g| g.expect("every requested layer was visited")).collect()
    }
}
