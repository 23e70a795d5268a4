//! Two-party election game analysis.
//!
//! Each of two parties nominates one of its candidates. A candidate carries a
//! utility for its own party's supporters and one for the rival party's
//! supporters; the chance that a nominee wins depends on the total (social)
//! utilities of the two nominees through one of three odds models. A party's
//! payoff is the expected utility of its supporters.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: candidate utilities, validated game instances, egoism.
//! - [`odds`]: linear-link, Bradley-Terry and softmax winning probabilities.
//! - [`payoff`]: per-state payoffs, the payoff matrix, social welfare.
//! - [`analysis`]: dominance, best responses, pure Nash equilibria,
//!   best-response walks, deviation gains, optimal state, price of anarchy.
//! - [`explorer`]: seeded instance sampling and Monte-Carlo campaigns.
//! - [`fixtures`]: the worked instances from the literature with their
//!   expected outcomes.

pub mod analysis;
mod error;
pub mod explorer;
pub mod fixtures;
pub mod model;
pub mod odds;
pub mod payoff;

pub use analysis::{
    analyze, analyze_matrix, best_response_walk, best_response_walk_with, best_responses,
    deviation_gains, enumerate_pne, optimal_state, price_of_anarchy, AnalysisResult,
    DeviationGains, PneSet, PoaResult, PoaValue, Walk, WalkOptions, WalkOutcome,
};
pub use error::{Error, Result};
pub use explorer::{run_campaign, sample_instance, CampaignReport, SamplerConfig, TrialRecord};
pub use fixtures::{
    paper_case, paper_case_with, verify_all, verify_case, CaseOutcome, CaseParams, PaperCase,
    CASE_IDS,
};
pub use model::{
    canonicalize, is_egoistic, validate_instance, CandidateUtilities, EgoismMode, GameInstance,
    Party, RawInstance, WinModel,
};
pub use odds::{win_probability, Probability};
pub use payoff::{
    payoff_matrix, social_welfare, state_payoff, GameState, PayoffMatrix, StatePayoff,
};

/// Default absolute tolerance for comparisons on derived quantities.
pub const DEFAULT_TOL: f64 = 1e-9;
