//! Adam optimizer over flat `f32` parameter buffers.

/// Adam state for one parameter buffer.
///
/// Classic configuration: decay rates 0.9 / 0.999, epsilon 1e-8, moment
/// estimates bias-corrected by `1 − β^t`. One instance per trainable matrix;
/// `step` consumes one gradient of the same length the optimizer was built
/// for.
pub struct Adam {
    alpha: f32,
    beta1: f32,
    beta2: f32,
    epsilon: f32,
    t: u64,
    m: Vec<f32>,
    v: Vec<f32>,
}

impl Adam {
    /// Optimizer with the classic defaults and learning rate `alpha` for a
    /// buffer of `len` parameters.
    pub fn new(alpha: f32, len: usize) -> Self {
        Adam {
            alpha,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            t: 0,
            m: vec![0.0; len],
            v: vec![0.0; len],
        }
    }

    /// Number of steps taken so far.
    pub fn steps_taken(&self) -> u64 {
        self.t
    }

    /// Applies one update to `params` given gradient `grad`.
    pub fn step(&mut self, params: &mut [f32], grad: &[f32]) {
        assert_eq!(params.len(), self.m.len(), "parameter buffer length changed");
        assert_eq!(grad.len(), self.m.len(), "gradient length mismatch");
        self.t += 1;
        let correction1 = 1.0 - self.beta1.powi(self.t as i32);
        let correction2 = 1.0 - self.beta2.powi(self.t as i32);
        for i in 0..params.len() {
            let g = grad[i];
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * g;
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * g * g;
            let m_hat = self.m[i] / correction1;
            let v_hat = self.v[i] / correction2;
            params[i] -= self.alpha * m_hat / (v_hat.sqrt() + self.epsilon);
        }
    }
}
