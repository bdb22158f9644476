//! One error type shared across the crate, with a stable mapping to process
//! exit codes for the command-line tool.

use std::path::PathBuf;

/// Everything that can go wrong across the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller supplied an argument that fails validation (bad dimensions,
    /// inverted ranges, out-of-bounds layer indexes, and so on).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A key file was structurally readable but violates the key contract.
    #[error("key rejected: {0}")]
    KeyRejected(String),

    /// Malformed input data. `offset` is the byte position at which the
    /// parser gave up, counted from the start of the input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Training produced a non-finite loss and could not continue.
    /// `last_good_step` is the last step whose loss was still finite.
    #[error("training diverged at step {step} (last finite loss at step {last_good_step})")]
    Diverged { step: u64, last_good_step: u64 },

    /// Filesystem-level failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// PNG encode/decode failure from the image backend.
    #[error("image error: {0}")]
    Image(#[from] image::ImageError),

    /// Key or report (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Convenience constructor for [`Error::Io`].
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Convenience constructor for [`Error::Parse`].
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    /// Exit code the command-line tool reports for this error.
    ///
    /// 2 — rejected arguments or key files (usage errors);
    /// 3 — training failures;
    /// 4 — I/O and data-format failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::KeyRejected(_) => 2,
            Error::Diverged { .. } => 3,
            Error::Parse { .. } | Error::Io { .. } | Error::Image(_) | Error::Json(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
