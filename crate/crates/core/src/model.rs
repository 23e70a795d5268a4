//! Candidates, validated game instances, and the egoism predicate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two competing parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::A => Party::B,
            Party::B => Party::A,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::A => "A",
            Party::B => "B",
        })
    }
}

/// Utilities one candidate brings to the supporters of its own party and to
/// the supporters of the competing party.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateUtilities {
    pub own: f64,
    pub rival: f64,
}

impl CandidateUtilities {
    pub const fn new(own: f64, rival: f64) -> Self {
        Self { own, rival }
    }

    /// Social utility: what the candidate is worth to the whole electorate.
    pub fn total(&self) -> f64 {
        self.own + self.rival
    }
}

impl From<(f64, f64)> for CandidateUtilities {
    fn from((own, rival): (f64, f64)) -> Self {
        Self { own, rival }
    }
}

/// Unvalidated instance, exactly as read from an instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub b: f64,
    pub party_a: Vec<CandidateUtilities>,
    pub party_b: Vec<CandidateUtilities>,
}

impl RawInstance {
    pub fn new(
        b: f64,
        party_a: impl IntoIterator<Item = (f64, f64)>,
        party_b: impl IntoIterator<Item = (f64, f64)>,
    ) -> Self {
        Self {
            b,
            party_a: party_a.into_iter().map(Into::into).collect(),
            party_b: party_b.into_iter().map(Into::into).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The same electorate with the party labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            b: self.b,
            party_a: self.party_b.clone(),
            party_b: self.party_a.clone(),
        }
    }
}

/// A two-party game that satisfies every modelling assumption:
///
/// - each party has at least two candidates,
/// - every total utility lies in `[0, b]` with `b >= 1`,
/// - each party's candidates are sorted by own-party utility, nonincreasing,
/// - `u_A(A_1) >= u_B(B_1)` (symmetry breaking).
///
/// Instances are immutable once built. The only way to get one that breaks
/// the symmetry convention is [`GameInstance::swap_parties`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct GameInstance {
    b: f64,
    party_a: Vec<CandidateUtilities>,
    party_b: Vec<CandidateUtilities>,
}

impl GameInstance {
    pub fn bound(&self) -> f64 {
        self.b
    }

    pub fn party_a(&self) -> &[CandidateUtilities] {
        &self.party_a
    }

    pub fn party_b(&self) -> &[CandidateUtilities] {
        &self.party_b
    }

    pub fn candidates(&self, party: Party) -> &[CandidateUtilities] {
        match party {
            Party::A => &self.party_a,
            Party::B => &self.party_b,
        }
    }

    /// Number of candidates of party A.
    pub fn m(&self) -> usize {
        self.party_a.len()
    }

    /// Number of candidates of party B.
    pub fn n(&self) -> usize {
        self.party_b.len()
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            b: self.b,
            party_a: self.party_a.clone(),
            party_b: self.party_b.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("instance serialization is infallible")
    }

    /// Exchanges the party labels. Sorting and bounds are preserved but the
    /// result need not satisfy `u_A(A_1) >= u_B(B_1)`.
    pub fn swap_parties(&self) -> GameInstance {
        GameInstance {
            b: self.b,
            party_a: self.party_b.clone(),
            party_b: self.party_a.clone(),
        }
    }

    /// Multiplies every utility and the bound by `factor`.
    ///
    /// Panics if the scaled bound drops below 1 or `factor` is not positive.
    pub fn scaled(&self, factor: f64) -> GameInstance {
        assert!(
            factor > 0.0 && self.b * factor >= 1.0,
            "scale factor {factor} invalid"
        );
        let scale =
            |c: &CandidateUtilities| CandidateUtilities::new(c.own * factor, c.rival * factor);
        GameInstance {
            b: self.b * factor,
            party_a: self.party_a.iter().map(scale).collect(),
            party_b: self.party_b.iter().map(scale).collect(),
        }
    }
}

impl TryFrom<RawInstance> for GameInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        validate_instance(&raw)
    }
}

impl From<GameInstance> for RawInstance {
    fn from(inst: GameInstance) -> Self {
        RawInstance {
            b: inst.b,
            party_a: inst.party_a,
            party_b: inst.party_b,
        }
    }
}

/// Winning-odds model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WinModel {
    LinearLink,
    BradleyTerry,
    Softmax,
}

impl WinModel {
    pub const ALL: [WinModel; 3] = [
        WinModel::LinearLink,
        WinModel::BradleyTerry,
        WinModel::Softmax,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WinModel::LinearLink => "linear_link",
            WinModel::BradleyTerry => "bradley_terry",
            WinModel::Softmax => "softmax",
        }
    }
}

impl fmt::Display for WinModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WinModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "linear_link" | "linear" | "ll" => Ok(WinModel::LinearLink),
            "bradley_terry" | "bt" => Ok(WinModel::BradleyTerry),
            "softmax" | "sm" => Ok(WinModel::Softmax),
            other => Err(format!(
                "unknown model {other:?} (expected linear_link, bradley_terry or softmax)"
            )),
        }
    }
}

/// Strictness of the egoism comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EgoismMode {
    #[default]
    Strict,
    Weak,
}

impl fmt::Display for EgoismMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EgoismMode::Strict => "strict",
            EgoismMode::Weak => "weak",
        })
    }
}

impl FromStr for EgoismMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(EgoismMode::Strict),
            "weak" => Ok(EgoismMode::Weak),
            other => Err(format!(
                "unknown egoism mode {other:?} (expected strict or weak)"
            )),
        }
    }
}

fn check_common(raw: &RawInstance) -> Result<()> {
    if !raw.b.is_finite() || raw.b < 1.0 {
        return Err(Error::InvalidBound(raw.b));
    }
    for (party, cands) in [(Party::A, &raw.party_a), (Party::B, &raw.party_b)] {
        if cands.len() < 2 {
            return Err(Error::TooFewCandidates {
                party,
                count: cands.len(),
            });
        }
    }
    for (party, cands) in [(Party::A, &raw.party_a), (Party::B, &raw.party_b)] {
        for (index, c) in cands.iter().enumerate() {
            if !(c.own.is_finite() && c.rival.is_finite() && c.own >= 0.0 && c.rival >= 0.0) {
                return Err(Error::InvalidUtility {
                    party,
                    index,
                    own: c.own,
                    rival: c.rival,
                });
            }
            let total = c.total();
            if total > raw.b {
                return Err(Error::BoundViolation {
                    party,
                    index,
                    total,
                    bound: raw.b,
                });
            }
        }
    }
    Ok(())
}

/// Checks every instance invariant without reordering anything.
pub fn validate_instance(raw: &RawInstance) -> Result<GameInstance> {
    check_common(raw)?;
    for (party, cands) in [(Party::A, &raw.party_a), (Party::B, &raw.party_b)] {
        if let Some(index) = cands.windows(2).position(|w| w[0].own < w[1].own) {
            return Err(Error::NotSorted {
                party,
                index: index + 1,
            });
        }
    }
    let (a_top, b_top) = (raw.party_a[0].own, raw.party_b[0].own);
    if a_top < b_top {
        return Err(Error::SymmetryViolation { a_top, b_top });
    }
    Ok(GameInstance {
        b: raw.b,
        party_a: raw.party_a.clone(),
        party_b: raw.party_b.clone(),
    })
}

/// Sorts each party by own-party utility (stable, nonincreasing) and swaps
/// the party labels when `u_A(A_1) < u_B(B_1)`.
pub fn canonicalize(raw: &RawInstance) -> Result<GameInstance> {
    check_common(raw)?;
    let sort = |cands: &[CandidateUtilities]| {
        let mut v = cands.to_vec();
        v.sort_by(|x, y| y.own.total_cmp(&x.own));
        v
    };
    let mut party_a = sort(&raw.party_a);
    let mut party_b = sort(&raw.party_b);
    if party_a[0].own < party_b[0].own {
        std::mem::swap(&mut party_a, &mut party_b);
    }
    Ok(GameInstance {
        b: raw.b,
        party_a,
        party_b,
    })
}

/// Whether every candidate serves its own supporters better than any rival
/// candidate does: `u_A(A_i) > u_A(B_j)` and `u_B(B_j) > u_B(A_i)` for all
/// `i, j` (`>=` in weak mode).
pub fn is_egoistic(inst: &GameInstance, mode: EgoismMode) -> bool {
    let beats = |x: f64, y: f64| match mode {
        EgoismMode::Strict => x > y,
        EgoismMode::Weak => x >= y,
    };
    inst.party_a.iter().all(|a| {
        inst.party_b
            .iter()
            .all(|b| beats(a.own, b.rival) && beats(b.own, a.rival))
    })
}
