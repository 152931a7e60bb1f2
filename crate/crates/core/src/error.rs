use std::fmt;

use thiserror::Error;

/// Pipeline stages of [`crate::lemma::theorem_pipeline`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Growth,
    Fill,
    Doubling,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Growth => "growth",
            Stage::Fill => "fill",
            Stage::Doubling => "doubling",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("cannot parse family spec `{0}`: expected name:key=val[,key=val]*")]
    FamilyParse(String),

    #[error("group element does not belong to family `{expected}`")]
    FamilyMismatch { expected: String },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u64, degree: usize },

    /// `required` saturates at `u64::MAX` when the true size does not fit.
    #[error("work of {required} exceeds budget {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("exact group order is unknown (too large for a machine word)")]
    OrderUnknown,

    #[error("generator multiset is empty")]
    EmptyGeneratorSet,

    #[error("could not draw {k} distinct elements after {attempts} attempts")]
    RetryExhausted { k: usize, attempts: usize },

    #[error("split sizes sum to {total} but the multiset has {k} elements")]
    SizesExceedK { total: usize, k: usize },

    #[error("graph is not strongly connected")]
    Disconnected,

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("degenerate schedule: D = {d}, h = {h}")]
    DegenerateSchedule { d: u64, h: u64 },

    #[error("schedule infeasible: {0}")]
    ScheduleInfeasible(String),

    #[error("pipeline stage `{stage}` failed: {reason}")]
    PipelineStageFailed { stage: Stage, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
