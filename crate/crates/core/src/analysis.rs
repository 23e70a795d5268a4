//! Equilibrium and efficiency analysis on a payoff matrix.
//!
//! A state `(i,j)` is a pure Nash equilibrium when no unilateral deviation
//! gains more than `tol`: `a_{i',j} <= a_{i,j} + tol` for every `i'` and
//! `b_{i,j'} <= b_{i,j} + tol` for every `j'`. Ties everywhere resolve to the
//! lowest index.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{is_egoistic, EgoismMode, GameInstance, Party, WinModel};
use crate::payoff::{payoff_matrix, GameState, PayoffMatrix};

fn check_index(inst: &GameInstance, party: Party, index: usize) -> Result<()> {
    let len = inst.candidates(party).len();
    if index >= len {
        return Err(Error::IndexOutOfRange { party, index, len });
    }
    Ok(())
}

/// Strategy `i` weakly dominates `i2` when `i < i2` and `u(X_i) >= u(X_{i2})`.
pub fn weakly_dominates(inst: &GameInstance, party: Party, i: usize, i2: usize) -> Result<bool> {
    check_index(inst, party, i)?;
    check_index(inst, party, i2)?;
    let c = inst.candidates(party);
    Ok(i < i2 && c[i].total() >= c[i2].total())
}

/// Strict dominance: weak dominance plus `u(X_i) > u(X_{i2})`.
pub fn dominates(inst: &GameInstance, party: Party, i: usize, i2: usize) -> Result<bool> {
    check_index(inst, party, i)?;
    check_index(inst, party, i2)?;
    let c = inst.candidates(party);
    Ok(i < i2 && c[i].total() > c[i2].total())
}

fn response_payoffs(mat: &PayoffMatrix, party: Party, opp: usize) -> Vec<f64> {
    match party {
        Party::A => (0..mat.m()).map(|i| mat.at(i, opp).a).collect(),
        Party::B => (0..mat.n()).map(|j| mat.at(opp, j).b).collect(),
    }
}

/// Strategies of `party` whose payoff against the opponent's fixed strategy
/// `opp` is within `tol` of the best.
pub fn best_responses(
    mat: &PayoffMatrix,
    party: Party,
    opp: usize,
    tol: f64,
) -> Result<Vec<usize>> {
    check_index(mat.instance(), party.other(), opp)?;
    let payoffs = response_payoffs(mat, party, opp);
    let best = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(payoffs
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= best - tol)
        .map(|(k, _)| k)
        .collect())
}

/// The pure Nash equilibria of a game, in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PneSet {
    states: Vec<GameState>,
    tol: f64,
}

impl PneSet {
    pub fn states(&self) -> &[GameState] {
        &self.states
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn contains(&self, s: GameState) -> bool {
        self.states.contains(&s)
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }
}

impl fmt::Display for PneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.states.is_empty() {
            return f.write_str("none");
        }
        f.write_str("{")?;
        for (k, s) in self.states.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// Largest gain `party` can get by deviating from `s`, with the lowest-index
/// strategy achieving it.
fn best_deviation(mat: &PayoffMatrix, s: GameState, party: Party) -> (usize, f64) {
    let current = mat.at(s.i, s.j).payoff(party);
    let mut best = (s.strategy(party), 0.0);
    for k in 0..mat.strategies(party) {
        let gain = mat
            .cell(s.with_strategy(party, k))
            .expect("in range")
            .payoff(party)
            - current;
        if gain > best.1 {
            best = (k, gain);
        }
    }
    best
}

pub fn is_pne(mat: &PayoffMatrix, s: GameState, tol: f64) -> bool {
    best_deviation(mat, s, Party::A).1 <= tol && best_deviation(mat, s, Party::B).1 <= tol
}

/// Every pure Nash equilibrium, by exhaustive scan.
pub fn enumerate_pne(mat: &PayoffMatrix, tol: f64) -> PneSet {
    PneSet {
        states: mat.states().filter(|&s| is_pne(mat, s, tol)).collect(),
        tol,
    }
}

/// Unilateral deviation gains of a 2x2 game.
///
/// `D1`: A moves 1→2 against B's 1; `D2`: B moves 1→2 against A's 2;
/// `D3`: A moves 2→1 against B's 2; `D4`: B moves 2→1 against A's 1.
/// The primed deviations run the same arcs backwards, so `Δ(D'_k) = -Δ(D_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviationGains {
    gains: [f64; 4],
}

impl DeviationGains {
    /// `Δ(D_k)` for `k` in `1..=4`.
    pub fn d(&self, k: usize) -> f64 {
        assert!((1..=4).contains(&k), "deviation index {k} not in 1..=4");
        self.gains[k - 1]
    }

    /// `Δ(D'_k)` for `k` in `1..=4`.
    pub fn d_prime(&self, k: usize) -> f64 {
        -self.d(k)
    }

    pub fn all(&self) -> [f64; 4] {
        self.gains
    }
}

pub fn deviation_gains(mat: &PayoffMatrix) -> Result<DeviationGains> {
    if mat.m() != 2 || mat.n() != 2 {
        return Err(Error::NotTwoByTwo {
            m: mat.m(),
            n: mat.n(),
        });
    }
    let c = |i: usize, j: usize| mat.at(i, j);
    Ok(DeviationGains {
        gains: [
            c(1, 0).a - c(0, 0).a,
            c(1, 1).b - c(1, 0).b,
            c(0, 1).a - c(1, 1).a,
            c(0, 0).b - c(0, 1).b,
        ],
    })
}

/// How a best-response walk ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WalkOutcome {
    ReachedPne {
        state: GameState,
    },
    /// The last state of the path repeats `path[loop_start]`.
    CycleDetected {
        loop_start: usize,
    },
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Walk {
    pub path: Vec<GameState>,
    pub outcome: WalkOutcome,
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.path.iter().enumerate() {
            if k > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{s}")?;
        }
        match self.outcome {
            WalkOutcome::ReachedPne { .. } => f.write_str(" [reached PNE]"),
            WalkOutcome::CycleDetected { loop_start } => {
                write!(f, " [cycle from {}]", self.path[loop_start])
            }
            WalkOutcome::StepLimit => f.write_str(" [step limit]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkOptions {
    pub tol: f64,
    /// Defaults to `4·m·n` when `None`.
    pub max_steps: Option<usize>,
    /// Party that gets to move first when both can improve.
    pub first_mover: Party,
}

impl Default for WalkOptions {
    fn default() -> Self {
        Self {
            tol: crate::DEFAULT_TOL,
            max_steps: None,
            first_mover: Party::A,
        }
    }
}

/// Best-response walk from `start` with party A as first mover.
pub fn best_response_walk(
    mat: &PayoffMatrix,
    start: GameState,
    tol: f64,
    max_steps: usize,
) -> Result<Walk> {
    best_response_walk_with(
        mat,
        start,
        &WalkOptions {
            tol,
            max_steps: Some(max_steps),
            first_mover: Party::A,
        },
    )
}

/// Follows improving best responses until no party gains more than `tol`,
/// a state repeats, or the step budget runs out.
///
/// Movers alternate; if the party whose turn it is cannot improve, the other
/// one is tried before declaring an equilibrium.
pub fn best_response_walk_with(
    mat: &PayoffMatrix,
    start: GameState,
    opts: &WalkOptions,
) -> Result<Walk> {
    mat.cell(start)?;
    let max_steps = opts.max_steps.unwrap_or(4 * mat.m() * mat.n());
    let mut path = vec![start];
    let mut seen = HashMap::from([(start, 0usize)]);
    let mut current = start;
    let mut turn = opts.first_mover;
    loop {
        let mover = [turn, turn.other()].into_iter().find_map(|party| {
            let (k, gain) = best_deviation(mat, current, party);
            (gain > opts.tol).then_some((party, k))
        });
        let Some((party, _)) = mover else {
            return Ok(Walk {
                path,
                outcome: WalkOutcome::ReachedPne { state: current },
            });
        };
        if path.len() > max_steps {
            return Ok(Walk {
                path,
                outcome: WalkOutcome::StepLimit,
            });
        }
        let target = improving_best_response(mat, current, party, opts.tol);
        current = current.with_strategy(party, target);
        path.push(current);
        if let Some(&loop_start) = seen.get(&current) {
            return Ok(Walk {
                path,
                outcome: WalkOutcome::CycleDetected { loop_start },
            });
        }
        seen.insert(current, path.len() - 1);
        turn = party.other();
    }
}

/// Lowest-index best response (within `tol` of the best) that still beats
/// the current payoff by more than `tol`.
fn improving_best_response(mat: &PayoffMatrix, s: GameState, party: Party, tol: f64) -> usize {
    let current = mat.at(s.i, s.j).payoff(party);
    let payoffs = response_payoffs(mat, party, s.strategy(party.other()));
    let best = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    payoffs
        .iter()
        .position(|&v| v >= best - tol && v - current > tol)
        .expect("caller checked that an improving deviation exists")
}

/// State with the highest social welfare; ties go to the lowest `(i, j)`.
pub fn optimal_state(mat: &PayoffMatrix) -> GameState {
    let mut best = GameState::new(0, 0);
    let mut best_su = mat.at(0, 0).su;
    for (s, c) in mat.iter() {
        if c.su > best_su {
            best = s;
            best_su = c.su;
        }
    }
    best
}

/// Price of anarchy, either a finite ratio or unbounded (worst equilibrium
/// with zero welfare).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoaValue {
    Finite(f64),
    Unbounded,
}

impl PoaValue {
    pub fn as_f64(self) -> f64 {
        match self {
            PoaValue::Finite(v) => v,
            PoaValue::Unbounded => f64::INFINITY,
        }
    }
}

impl fmt::Display for PoaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoaValue::Finite(v) => write!(f, "{v:.6}"),
            PoaValue::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for PoaValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PoaValue::Finite(v) => serializer.serialize_f64(*v),
            PoaValue::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoaResult {
    pub optimal: GameState,
    pub worst_pne: Option<GameState>,
    /// `SU(optimal) / SU(worst_pne)`; `None` when there is no equilibrium.
    pub value: Option<f64>,
}

/// Optimal welfare over the welfare of the worst equilibrium.
///
/// Fails with [`Error::DivisionByZeroSocialWelfare`] when the worst
/// equilibrium has zero welfare but the optimum does not. If every state has
/// zero welfare the ratio is taken as 1.
pub fn price_of_anarchy(mat: &PayoffMatrix, tol: f64) -> Result<PoaResult> {
    let optimal = optimal_state(mat);
    let pne = enumerate_pne(mat, tol);
    poa_from(mat, optimal, &pne)
}

fn poa_from(mat: &PayoffMatrix, optimal: GameState, pne: &PneSet) -> Result<PoaResult> {
    let Some(&first) = pne.states().first() else {
        return Ok(PoaResult {
            optimal,
            worst_pne: None,
            value: None,
        });
    };
    let mut worst = first;
    for &s in pne.states() {
        if mat.at(s.i, s.j).su < mat.at(worst.i, worst.j).su {
            worst = s;
        }
    }
    let opt_su = mat.at(optimal.i, optimal.j).su;
    let worst_su = mat.at(worst.i, worst.j).su;
    let value = if worst_su > 0.0 {
        opt_su / worst_su
    } else if opt_su > 0.0 {
        return Err(Error::DivisionByZeroSocialWelfare { worst, optimal });
    } else {
        1.0
    };
    Ok(PoaResult {
        optimal,
        worst_pne: Some(worst),
        value: Some(value),
    })
}

/// Everything the analysis pipeline knows about one instance and model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisResult {
    pub model: WinModel,
    pub egoistic_strict: bool,
    pub egoistic_weak: bool,
    pub pne: PneSet,
    pub optimal: GameState,
    pub optimal_su: f64,
    pub worst_pne: Option<GameState>,
    pub worst_pne_su: Option<f64>,
    /// `None` when the game has no pure equilibrium.
    pub poa: Option<PoaValue>,
    /// States where Bradley-Terry fell back to 1/2 at `0/0`.
    pub degenerate_states: Vec<GameState>,
}

impl AnalysisResult {
    pub fn has_pne(&self) -> bool {
        !self.pne.is_empty()
    }
}

/// Runs the full pipeline on one instance.
pub fn analyze(inst: &GameInstance, model: WinModel, tol: f64) -> AnalysisResult {
    analyze_matrix(&payoff_matrix(inst, model), tol)
}

pub fn analyze_matrix(mat: &PayoffMatrix, tol: f64) -> AnalysisResult {
    let inst = mat.instance();
    let pne = enumerate_pne(mat, tol);
    let optimal = optimal_state(mat);
    let (worst_pne, poa) = match poa_from(mat, optimal, &pne) {
        Ok(r) => (r.worst_pne, r.value.map(PoaValue::Finite)),
        Err(Error::DivisionByZeroSocialWelfare { worst, .. }) => {
            (Some(worst), Some(PoaValue::Unbounded))
        }
        Err(e) => unreachable!("unexpected error from PoA: {e}"),
    };
    AnalysisResult {
        model: mat.model(),
        egoistic_strict: is_egoistic(inst, EgoismMode::Strict),
        egoistic_weak: is_egoistic(inst, EgoismMode::Weak),
        optimal,
        optimal_su: mat.at(optimal.i, optimal.j).su,
        worst_pne,
        worst_pne_su: worst_pne.map(|s| mat.at(s.i, s.j).su),
        poa,
        degenerate_states: mat.degenerate_states(),
        pne,
    }
}
