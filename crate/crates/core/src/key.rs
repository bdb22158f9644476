//! The key file: everything the recipient needs to rebuild the frozen
//! network and decode a container, serialized as JSON.
//!
//! A key names the exact random-number pipeline it was generated for; a key
//! naming any other pipeline is rejected outright, because a mismatched
//! generator would silently decode noise. Keys also refuse unknown fields —
//! a key that says more than this version understands is not a key this
//! version can honor.

use crate::error::{Error, Result};
use crate::inr::NetworkShape;
use crate::numeric::PRNG_ALGORITHM_ID;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Key format revision understood by this crate.
pub const KEY_FORMAT_VERSION: u32 = 1;

/// Default layer count for generated keys.
pub const DEFAULT_NUM_LAYERS: usize = 6;

/// Default first-layer frequency multiplier.
pub const DEFAULT_OMEGA0: f32 = 30.0;

/// Default quantization range as a fraction of the hidden init bound
/// `sqrt(6/hidden_width)`.
///
/// Narrower than the init envelope on purpose: trained weights that wander
/// past the range get clamped at export, which is exactly the pressure that
/// makes quantization-aware training matter. 0.75 leaves enough headroom to
/// reach high secret fidelity while keeping naive post-training quantization
/// measurably worse.
pub const DEFAULT_RANGE_FACTOR: f32 = 0.75;

/// Hidden layers carried by the container image, in channel order
/// (red, green, blue).
pub const DEFAULT_VARIABLE_LAYERS: [usize; 3] = [1, 2, 3];

/// What kind of signal is hidden in the container.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    /// RGB frames over time; coordinates (t, y, x), samples (r, g, b).
    Video,
    /// Mono 16-bit samples; coordinate (t), sample (s).
    Audio,
    /// One RGB image; coordinates (y, x), samples (r, g, b).
    Image,
}

impl Modality {
    /// Coordinate dimensionality for this modality.
    pub fn input_dim(self) -> usize {
        match self {
            Modality::Video => 3,
            Modality::Audio => 1,
            Modality::Image => 2,
        }
    }

    /// Sample dimensionality for this modality.
    pub fn output_dim(self) -> usize {
        match self {
            Modality::Video | Modality::Image => 3,
            Modality::Audio => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Modality::Video => "video",
            Modality::Audio => "audio",
            Modality::Image => "image",
        }
    }
}

/// The shared secret. Field order is the canonical serialization order; the
/// fingerprint hashes the compact JSON in exactly this order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    /// Must equal [`KEY_FORMAT_VERSION`].
    pub format_version: u32,
    /// Must equal [`PRNG_ALGORITHM_ID`].
    pub prng_algorithm_id: String,
    /// Seed for every frozen weight and bias phase.
    pub seed: u64,
    pub modality: Modality,
    /// Axis lengths of the hidden signal: `[frames, height, width]` for
    /// video, `[height, width]` for image, `[samples]` for audio.
    pub secret_dims: Vec<usize>,
    pub input_dim: usize,
    pub output_dim: usize,
    /// Hidden layer width; also the container image side.
    pub hidden_width: usize,
    pub num_layers: usize,
    /// Hidden layers carried by the container, in channel order.
    pub variable_layers: [usize; 3],
    pub omega0: f32,
    /// Lower edge of the carried-weight quantization grid.
    pub w_min: f32,
    /// Upper edge of the carried-weight quantization grid.
    pub w_max: f32,
}

impl KeyFile {
    /// Builds a key with the default architecture for a signal of
    /// `secret_dims` behind a `hidden_width`-sided container.
    pub fn for_modality(
        modality: Modality,
        secret_dims: &[usize],
        hidden_width: usize,
        seed: u64,
    ) -> KeyFile {
        let bound = DEFAULT_RANGE_FACTOR * (6.0 / hidden_width as f32).sqrt();
        KeyFile {
            format_version: KEY_FORMAT_VERSION,
            prng_algorithm_id: PRNG_ALGORITHM_ID.to_string(),
            seed,
            modality,
            secret_dims: secret_dims.to_vec(),
            input_dim: modality.input_dim(),
            output_dim: modality.output_dim(),
            hidden_width,
            num_layers: DEFAULT_NUM_LAYERS,
            variable_layers: DEFAULT_VARIABLE_LAYERS,
            omega0: DEFAULT_OMEGA0,
            w_min: -bound,
            w_max: bound,
        }
    }

    /// The architecture this key describes.
    pub fn network_shape(&self) -> NetworkShape {
        NetworkShape {
            input_dim: self.input_dim,
            output_dim: self.output_dim,
            hidden_width: self.hidden_width,
            num_layers: self.num_layers,
            omega0: self.omega0,
        }
    }

    /// Full consistency check. Called on every load; generation paths call
    /// it too so an invalid key can never be written in the first place.
    pub fn validate(&self) -> Result<()> {
        let reject = |msg: String| Err(Error::KeyRejected(msg));
        if self.format_version != KEY_FORMAT_VERSION {
            return reject(format!(
                "format version {} (this build reads {KEY_FORMAT_VERSION})",
                self.format_version
            ));
        }
        if self.prng_algorithm_id != PRNG_ALGORITHM_ID {
            return reject(format!(
                "key was generated for random pipeline '{}' but this build implements '{}'",
                self.prng_algorithm_id, PRNG_ALGORITHM_ID
            ));
        }
        if self.secret_dims.is_empty() || self.secret_dims.contains(&0) {
            return reject(format!("secret dimensions {:?} are degenerate", self.secret_dims));
        }
        if self.secret_dims.len() != self.modality.input_dim() {
            return reject(format!(
                "{} signals have {} axes, key lists {:?}",
                self.modality.name(),
                self.modality.input_dim(),
                self.secret_dims
            ));
        }
        if self.input_dim != self.modality.input_dim()
            || self.output_dim != self.modality.output_dim()
        {
            return reject(format!(
                "network dimensions {}->{} do not match {} signals",
                self.input_dim,
                self.output_dim,
                self.modality.name()
            ));
        }
        self.network_shape().validate().map_err(|e| Error::KeyRejected(e.to_string()))?;
        let last_hidden = self.num_layers - 2;
        for &layer in &self.variable_layers {
            if layer < 1 || layer > last_hidden {
                return reject(format!(
                    "carried layer {layer} is outside the hidden range 1..={last_hidden}"
                ));
            }
        }
        if self.variable_layers[0] == self.variable_layers[1]
            || self.variable_layers[0] == self.variable_layers[2]
            || self.variable_layers[1] == self.variable_layers[2]
        {
            return reject(format!(
                "carried layers {:?} must be three distinct layers",
                self.variable_layers
            ));
        }
        if !(self.w_min.is_finite() && self.w_max.is_finite() && self.w_min < self.w_max) {
            return reject(format!(
                "quantization range [{}, {}] is empty or not finite",
                self.w_min, self.w_max
            ));
        }
        Ok(())
    }

    /// Parses and validates a key from JSON text.
    pub fn from_json(text: &str) -> Result<KeyFile> {
        let key: KeyFile = serde_json::from_str(text)
            .map_err(|e| Error::KeyRejected(format!("unreadable key file: {e}")))?;
        key.validate()?;
        Ok(key)
    }

    /// Reads and validates a key file from disk.
    pub fn load(path: &Path) -> Result<KeyFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        KeyFile::from_json(&text)
    }

    /// Validates the key and renders it as pretty JSON.
    pub fn to_json_pretty(&self) -> Result<String> {
        self.validate()?;
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Validates and writes the key as pretty JSON.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = self.to_json_pretty()?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    /// SHA-256 over the canonical (compact, declaration-ordered) JSON form,
    /// as lowercase hex. Stable across pretty-printing differences.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("key serialization cannot fail");
        let digest = Sha256::digest(&canonical);
        let mut hex = String::with_capacity(64);
        for byte in digest {
            use std::fmt::Write;
            write!(hex, "{byte:02x}").expect("writing to a string cannot fail");
        }
        hex
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn video_key() -> KeyFile {
        KeyFile::for_modality(Modality::Video, &[4, 32, 32], 64, 99)
    }

    #[test]
    fn generated_keys_validate_and_expose_expected_defaults() {
        let key = video_key();
        key.validate().unwrap();
        assert_eq!(key.num_layers, 6);
        assert_eq!(key.variable_layers, [1, 2, 3]);
        assert_eq!(key.input_dim, 3);
        assert_eq!(key.output_dim, 3);
        let bound = 0.75 * (6.0f32 / 64.0).sqrt();
        assert_eq!(key.w_max, bound);
        assert_eq!(key.w_min, -bound);

        let audio = KeyFile::for_modality(Modality::Audio, &[2048], 64, 1);
        audio.validate().unwrap();
        assert_eq!((audio.input_dim, audio.output_dim), (1, 1));

        let image = KeyFile::for_modality(Modality::Image, &[32, 32], 64, 1);
        image.validate().unwrap();
        assert_eq!((image.input_dim, image.output_dim), (2, 3));
    }

    #[test]
    fn json_round_trip_preserves_the_key() {
        let key = video_key();
        let text = serde_json::to_string_pretty(&key).unwrap();
        let back = KeyFile::from_json(&text).unwrap();
        assert_eq!(back, key);
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k.json");
        let key = video_key();
        key.save(&path).unwrap();
        assert_eq!(KeyFile::load(&path).unwrap(), key);
    }

    #[test]
    fn foreign_random_pipeline_is_rejected() {
        let mut key = video_key();
        key.prng_algorithm_id = "mt19937/float53-v1".into();
        let err = key.validate().unwrap_err();
        assert!(matches!(err, Error::KeyRejected(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn structural_violations_are_rejected() {
        let mut k = video_key();
        k.format_version = 2;
        assert!(k.validate().is_err(), "unknown format version");

        let mut k = video_key();
        k.variable_layers = [1, 2, 2];
        assert!(k.validate().is_err(), "duplicate carried layer");

        let mut k = video_key();
        k.variable_layers = [1, 2, 5];
        assert!(k.validate().is_err(), "carried layer reaching into the final matrix");

        let mut k = video_key();
        k.variable_layers = [0, 1, 2];
        assert!(k.validate().is_err(), "first layer is not carriable");

        let mut k = video_key();
        k.w_min = k.w_max;
        assert!(k.validate().is_err(), "empty quantization range");

        let mut k = video_key();
        k.secret_dims = vec![4, 32];
        assert!(k.validate().is_err(), "video needs three axes");

        let mut k = video_key();
        k.secret_dims = vec![4, 0, 32];
        assert!(k.validate().is_err(), "zero-length axis");

        let mut k = video_key();
        k.num_layers = 4;
        assert!(k.validate().is_err(), "three carried layers cannot fit in 4 layers");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut text = serde_json::to_string(&video_key()).unwrap();
        text.insert_str(text.len() - 1, ",\"surprise\":true");
        assert!(KeyFile::from_json(&text).is_err());
    }

    #[test]
    fn fingerprint_is_stable_and_sensitive() {
        let key = video_key();
        assert_eq!(key.fingerprint(), key.fingerprint());
        assert_eq!(key.fingerprint().len(), 64);
        let mut other = video_key();
        other.seed ^= 1;
        assert_ne!(key.fingerprint(), other.fingerprint());
    }
}
