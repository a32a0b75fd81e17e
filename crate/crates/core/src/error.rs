//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong while configuring or driving a run.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the range its owning component accepts.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An objective evaluation produced NaN or an infinity. The message
    /// names the objective and the offending coordinates; runs abort on it.
    #[error("non-finite energy: {0}")]
    NonFiniteEnergy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
