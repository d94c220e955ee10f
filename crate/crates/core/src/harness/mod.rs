//! Formula generators, seeded trial runs against the closed-form bounds,
//! absorption tracking across restarts, and model extraction.

mod extract;
mod families;
mod tracking;
mod trials;

pub use extract::{extract_model, ExtractionOutcome, ExtractionReport};
pub use families::{generate_formula, FormulaFamily};
pub use tracking::{track_absorption, TrackOutcome};
pub use trials::{
    certify_bound, run_trials, write_summary_csv, write_trials_csv, BoundPolicy, CertifiedBound,
    ExperimentSummary, TrialRecord, TrialSet, SUMMARY_CSV_HEADER, TRIALS_CSV_HEADER,
};

use thiserror::Error;

use crate::resolution::BoundError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no refutation of width at most {max_width} was found")]
    BoundUnavailable { max_width: usize },
    #[error("the trial count must be positive")]
    InvalidTrialCount,
    #[error("formula has a clause of width {width}, above the stated width {k}")]
    WidthPrecondition { width: usize, k: usize },
    #[error(transparent)]
    Bound(#[from] BoundError),
}
