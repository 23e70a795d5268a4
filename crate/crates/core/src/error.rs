use thiserror::Error;

use crate::model::{GameInstance, Party};
use crate::payoff::GameState;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("utility bound b must be a finite number >= 1, got {0}")]
    InvalidBound(f64),

    #[error("party {party} candidate {index}: utilities must be finite and nonnegative (own={own}, rival={rival})")]
    InvalidUtility {
        party: Party,
        index: usize,
        own: f64,
        rival: f64,
    },

    #[error("party {party} candidate {index}: total utility {total} outside [0, {bound}]")]
    BoundViolation {
        party: Party,
        index: usize,
        total: f64,
        bound: f64,
    },

    #[error("party {party} candidates not sorted by own-party utility at position {index}")]
    NotSorted { party: Party, index: usize },

    #[error("party {party} has {count} candidates, at least 2 required")]
    TooFewCandidates { party: Party, count: usize },

    #[error("symmetry convention violated: u_A(A_1)={a_top} < u_B(B_1)={b_top}")]
    SymmetryViolation { a_top: f64, b_top: f64 },

    #[error("index {index} out of range for party {party} with {len} candidates")]
    IndexOutOfRange {
        party: Party,
        index: usize,
        len: usize,
    },

    #[error("deviation gains need a 2x2 game, got {m}x{n}")]
    NotTwoByTwo { m: usize, n: usize },

    #[error("worst equilibrium {worst} has zero social welfare; price of anarchy is unbounded")]
    DivisionByZeroSocialWelfare {
        worst: GameState,
        optimal: GameState,
    },

    #[error("sampler gave up after {attempts} attempts on trial {trial_index}")]
    RejectionBudgetExhausted { trial_index: u64, attempts: u64 },

    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),

    #[error("theorem violated on trial {trial_index}: {what}")]
    TheoremViolation {
        trial_index: u64,
        what: String,
        instance: Box<GameInstance>,
    },

    #[error("unknown case id {0:?}")]
    UnknownCase(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
