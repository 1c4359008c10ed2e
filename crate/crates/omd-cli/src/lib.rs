//! Shared plumbing for the `omd` binary: file formats, run manifests, and
//! SVG plotting.  The analysis itself lives in `omd-core`; everything here
//! is serialization and dispatch.

pub mod io;
pub mod manifest;
pub mod plot;

use omd_core::OmdError;

/// Errors surfaced by the command-line layer, split by exit code: usage,
/// I/O, and format problems exit 2; analysis refusals exit 3.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("{0}")]
    Domain(#[from] OmdError),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn format(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Format { path: path.into(), message: message.into() }
    }

    /// Process exit code: 2 for input/format/usage problems (including
    /// out-of-domain flag values), 3 for analysis errors on valid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } => 2,
            CliError::Domain(e) => match e {
                OmdError::InvalidSignal(_)
                | OmdError::InvalidBand { .. }
                | OmdError::InvalidConfig(_)
                | OmdError::InadmissibleCutoff(_) => 2,
                _ => 3,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// User-facing frequencies are Hz; the library works in rad/s.
pub fn hz_to_rad(f: f64) -> f64 {
    2.0 * std::f64::consts::PI * f
}

pub fn rad_to_hz(w: f64) -> f64 {
    w / (2.0 * std::f64::consts::PI)
}
