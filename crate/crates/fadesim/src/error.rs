use std::path::PathBuf;

/// Errors produced by the simulator and its analytic routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The per-link rate divides by `eta + P * I_i`; with zero noise and no
    /// interfering transmitter that denominator vanishes while the signal
    /// does not.
    #[error(
        "link {link}: positive signal over zero denominator (noise and interference both zero)"
    )]
    ZeroDenominator { link: usize },

    #[error("graph has {vertices} vertices, above the exact clique solver cap of {cap}")]
    ExactSolverCap { vertices: usize, cap: usize },

    #[error("no interior maximum bracketed: {0}")]
    NoInteriorMaximum(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unknown config key `{key}`")]
    UnknownConfigKey { key: String },

    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("failed to write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn at_trial(self, trial: u64) -> Self {
        Error::Trial {
            trial,
            source: Box::new(self),
        }
    }
}
