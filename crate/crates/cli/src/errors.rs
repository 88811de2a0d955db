//! Error classification for process exit codes.
//!
//! The binary distinguishes three failure classes so scripts can branch on
//! the exit status: 2 for configuration problems (bad flags, invalid config
//! values, malformed scenario), 3 for I/O problems (missing or unreadable
//! files, malformed data files), and 4 for numerical failures inside the
//! analysis itself.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Config,
    Io,
    Numerical,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub source: anyhow::Error,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self.kind {
            Kind::Config => 2,
            Kind::Io => 3,
            Kind::Numerical => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn config_error(msg: impl Into<String>) -> CliError {
    CliError { kind: Kind::Config, source: anyhow::anyhow!(msg.into()) }
}

pub fn io_error(msg: impl Into<String>) -> CliError {
    CliError { kind: Kind::Io, source: anyhow::anyhow!(msg.into()) }
}

/// Maps library errors onto exit classes: failures of the numerics get
/// class 4, everything else is treated as a configuration/usage problem.
pub fn from_core(err: specad_core::Error) -> CliError {
    use specad_core::Error as E;
    let kind = match &err {
        E::Numerical { .. } | E::DegenerateRow { .. } | E::DegenerateCoefficients { .. } => {
            Kind::Numerical
        }
        _ => Kind::Config,
    };
    CliError { kind, source: err.into() }
}

/// Adds a path/context message to an underlying error and tags it with a
/// failure class.
pub trait Classify<T> {
    fn classify(self, kind: Kind, context: impl Into<String>) -> CliResult<T>;
}

impl<T, E> Classify<T> for Result<T, E>
where
    E: std::error::Error + Send + Sync + 'static,
{
    fn classify(self, kind: Kind, context: impl Into<String>) -> CliResult<T> {
        self.map_err(|e| CliError {
            kind,
            source: anyhow::Error::new(e).context(context.into()),
        })
    }
}
