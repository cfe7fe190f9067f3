use thiserror::Error;

/// Error taxonomy shared by every module.
///
/// `Domain` marks mathematically invalid input (a weight outside the dominant
/// cone, a non-Lie-algebra matrix), `Config` marks structurally invalid input
/// (mismatched dimensions, empty weight lists), `Capability` marks input that
/// is well-formed but outside the supported range (series ≠ A, rank too
/// large), and `Degenerate` marks input on which the requested computation is
/// not defined (zero vector where a direction is needed, ε on the cone
/// boundary).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub(crate) fn capability(msg: impl Into<String>) -> Error {
    Error::Capability(msg.into())
}

pub(crate) fn degenerate(msg: impl Into<String>) -> Error {
    Error::Degenerate(msg.into())
}
