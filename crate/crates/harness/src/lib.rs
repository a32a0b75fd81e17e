//! Campaign execution, aggregation, and persistence for the annealing
//! toolkit: seeded multi-run campaigns, the best-of-seven temperature sweep,
//! CSV summaries/traces, and machine-readable manifests that regenerate
//! every run.

pub mod campaign;
pub mod config;
pub mod report;
pub mod stats;

pub use campaign::{run_campaign, sweep_tgen, CampaignRecord, Manifest, SweepRecord};
pub use config::{Algorithm, CampaignConfig};
pub use report::write_report;
pub use stats::{sci3, summary_stats, SummaryStats};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// One line per configuration violation.
    #[error("{}", .0.join("\n"))]
    InvalidConfig(Vec<String>),

    #[error(transparent)]
    Core(#[from] pocsa_core::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub(crate) fn io_err(path: &std::path::Path, source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: path.display().to_string(),
        source,
    }
}
