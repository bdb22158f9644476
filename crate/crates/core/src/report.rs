//! Training reports: a loss history plus an end-of-run summary, serialized
//! as grep-friendly `key=value` lines.

/// One logged step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrainRow {
    pub step: u64,
    pub secret_loss: f64,
    pub cover_loss: f64,
    pub total_loss: f64,
}

/// Everything a hide run reports back.
#[derive(Clone, Debug)]
pub struct TrainReport {
    /// Fingerprint of the key the run used.
    pub key_fingerprint: String,
    /// Steps actually executed.
    pub steps: u64,
    /// Whether quantization-aware training was on.
    pub qat: bool,
    pub beta: f32,
    pub learning_rate: f32,
    pub batch_size: usize,
    /// Loss snapshots at the configured cadence plus the final step.
    pub history: Vec<TrainRow>,
    /// Reconstruction loss of the exported (quantized) network over the
    /// whole signal.
    pub final_secret_loss: f64,
    /// Appearance loss of the exported container against the cover.
    pub final_cover_loss: f64,
    /// Reconstruction fidelity in dB over the normalized sample domain
    /// (peak 2.0); emission rounding is not included.
    pub secret_psnr_db: f64,
    /// Container-vs-cover fidelity in dB over 8-bit pixels.
    pub cover_psnr_db: f64,
    /// Container-vs-cover mean absolute pixel difference, 8-bit units.
    pub cover_apd: f64,
}

impl TrainReport {
    /// Renders the report as `key=value` lines. History rows repeat the
    /// `history` key with comma-separated `step,secret,cover,total` values.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        push("key_fingerprint", self.key_fingerprint.clone());
        push("steps", self.steps.to_string());
        push("qat", self.qat.to_string());
        push("beta", format!("{}", self.beta));
        push("learning_rate", format!("{}", self.learning_rate));
        push("batch_size", self.batch_size.to_string());
        push("final_secret_loss", format!("{:.9e}", self.final_secret_loss));
        push("final_cover_loss", format!("{:.9e}", self.final_cover_loss));
        push("secret_psnr_db", format!("{:.4}", self.secret_psnr_db));
        push("cover_psnr_db", format!("{:.4}", self.cover_psnr_db));
        push("cover_apd", format!("{:.4}", self.cover_apd));
        for row in &self.history {
            push(
                "history",
                format!(
                    "{},{:.9e},{:.9e},{:.9e}",
                    row.step, row.secret_loss, row.cover_loss, row.total_loss
                ),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_renders_parseable_key_value_lines() {
        let report = TrainReport {
            key_fingerprint: "abc123".into(),
            steps: 100,
            qat: true,
            beta: 1.0,
            learning_rate: 1e-3,
            batch_size: 4096,
            history: vec![TrainRow { step: 50, secret_loss: 0.5, cover_loss: 0.25, total_loss: 0.75 }],
            final_secret_loss: 1e-4,
            final_cover_loss: 2e-3,
            secret_psnr_db: 40.1234,
            cover_psnr_db: 19.5,
            cover_apd: 18.25,
        };
        let text = report.to_key_values();
        for line in text.lines() {
            let (k, v) = line.split_once('=').expect("every line must be key=value");
            assert!(!k.is_empty() && !v.is_empty(), "empty side in line {line:?}");
        }
        assert!(text.contains("steps=100\n"));
        assert!(text.contains("qat=true\n"));
        assert!(text.contains("secret_psnr_db=40.1234\n"));
        assert!(text.contains("history=50,"));
    }
}
