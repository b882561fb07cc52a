use std::path::PathBuf;

use crate::scenario::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("staying time must be a whole number of hours in 1..=24, got {0}")]
    InvalidHours(u32),

    #[error("event volume requires an event-based sensor model")]
    FrameModelForEvents,

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("the paper fixture allocation only applies to the built-in paper scenario: {0}")]
    FixtureNotApplicable(String),

    #[error("transfer rate must be positive and finite, got {0}")]
    NonPositiveRate(f64),

    #[error("no edge device is assigned to location `{0}`")]
    MissingDevice(String),

    #[error("location `{0}` has no demand entry")]
    MissingDemand(String),

    #[error("rate calibration is degenerate: {0}")]
    DegenerateCalibration(String),

    #[error("scenario failed validation:\n{}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("could not parse {path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("could not parse timeline: {0}")]
    Timeline(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the filesystem rather than by bad input.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  - {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}
