//! Payoffs of both parties in every state of the game.

use std::fmt::{self, Write as _};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{GameInstance, Party, WinModel};
use crate::odds::{is_bradley_terry_degenerate, win_probability, Probability};

/// The state in which `A_{i+1}` runs against `B_{j+1}`.
///
/// Indices are 0-based; [`Display`](fmt::Display) prints the 1-based `(i,j)`
/// form used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(from = "StateRepr")]
pub struct GameState {
    pub i: usize,
    pub j: usize,
}

impl GameState {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    /// Builds a state from the 1-based indices used in reports.
    pub fn one_based(i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1, "1-based indices must be positive");
        Self { i: i - 1, j: j - 1 }
    }

    pub fn transposed(self) -> Self {
        Self {
            i: self.j,
            j: self.i,
        }
    }

    /// Strategy index chosen by `party` in this state.
    pub fn strategy(self, party: Party) -> usize {
        match party {
            Party::A => self.i,
            Party::B => self.j,
        }
    }

    pub(crate) fn with_strategy(self, party: Party, k: usize) -> Self {
        match party {
            Party::A => Self { i: k, j: self.j },
            Party::B => Self { i: self.i, j: k },
        }
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.j + 1)
    }
}

impl Serialize for GameState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GameState", 2)?;
        st.serialize_field("index", &[self.i, self.j])?;
        st.serialize_field("display", &[self.i + 1, self.j + 1])?;
        st.end()
    }
}

#[derive(Deserialize)]
struct StateRepr {
    index: [usize; 2],
    #[allow(dead_code)]
    #[serde(default)]
    display: Option<[usize; 2]>,
}

impl From<StateRepr> for GameState {
    fn from(r: StateRepr) -> Self {
        GameState::new(r.index[0], r.index[1])
    }
}

/// Payoffs in one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatePayoff {
    /// Expected utility of party A's supporters, `a_{i,j}`.
    pub a: f64,
    /// Expected utility of party B's supporters, `b_{i,j}`.
    pub b: f64,
    /// Probability that A's nominee wins.
    pub p: Probability,
    /// Social welfare `a + b`.
    pub su: f64,
}

impl StatePayoff {
    pub fn payoff(&self, party: Party) -> f64 {
        match party {
            Party::A => self.a,
            Party::B => self.b,
        }
    }
}

fn check_state(inst: &GameInstance, s: GameState) -> Result<()> {
    if s.i >= inst.m() {
        return Err(Error::IndexOutOfRange {
            party: Party::A,
            index: s.i,
            len: inst.m(),
        });
    }
    if s.j >= inst.n() {
        return Err(Error::IndexOutOfRange {
            party: Party::B,
            index: s.j,
            len: inst.n(),
        });
    }
    Ok(())
}

fn compute(inst: &GameInstance, model: WinModel, s: GameState) -> StatePayoff {
    let ca = inst.party_a()[s.i];
    let cb = inst.party_b()[s.j];
    let p = win_probability(model, ca.total(), cb.total(), inst.bound());
    let pv = p.value();
    // u_A(A_i) = ca.own, u_B(A_i) = ca.rival, u_B(B_j) = cb.own, u_A(B_j) = cb.rival
    let a = pv * ca.own + (1.0 - pv) * cb.rival;
    let b = (1.0 - pv) * cb.own + pv * ca.rival;
    StatePayoff { a, b, p, su: a + b }
}

/// Payoffs of state `s`.
pub fn state_payoff(inst: &GameInstance, model: WinModel, s: GameState) -> Result<StatePayoff> {
    check_state(inst, s)?;
    Ok(compute(inst, model, s))
}

/// All `m x n` state payoffs of an instance under one odds model.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    instance: GameInstance,
    model: WinModel,
    cells: Vec<StatePayoff>,
}

/// Tabulates every state.
pub fn payoff_matrix(inst: &GameInstance, model: WinModel) -> PayoffMatrix {
    let cells = (0..inst.m())
        .flat_map(|i| (0..inst.n()).map(move |j| GameState::new(i, j)))
        .map(|s| compute(inst, model, s))
        .collect();
    PayoffMatrix {
        instance: inst.clone(),
        model,
        cells,
    }
}

/// `SU_{i,j}` of state `s`.
pub fn social_welfare(mat: &PayoffMatrix, s: GameState) -> Result<f64> {
    Ok(mat.cell(s)?.su)
}

impl PayoffMatrix {
    pub fn instance(&self) -> &GameInstance {
        &self.instance
    }

    pub fn model(&self) -> WinModel {
        self.model
    }

    pub fn m(&self) -> usize {
        self.instance.m()
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    /// Number of strategies available to `party`.
    pub fn strategies(&self, party: Party) -> usize {
        match party {
            Party::A => self.m(),
            Party::B => self.n(),
        }
    }

    pub fn cell(&self, s: GameState) -> Result<&StatePayoff> {
        check_state(&self.instance, s)?;
        Ok(&self.cells[s.i * self.n() + s.j])
    }

    /// Unchecked 0-based access; panics when out of range.
    pub fn at(&self, i: usize, j: usize) -> &StatePayoff {
        assert!(i < self.m() && j < self.n(), "state ({i},{j}) out of range");
        &self.cells[i * self.n() + j]
    }

    pub fn states(&self) -> impl Iterator<Item = GameState> + '_ {
        let n = self.n();
        (0..self.cells.len()).map(move |k| GameState::new(k / n, k % n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (GameState, &StatePayoff)> + '_ {
        self.states().zip(self.cells.iter())
    }

    /// Rows of cells, one per A-strategy.
    pub fn rows(&self) -> impl Iterator<Item = &[StatePayoff]> + '_ {
        self.cells.chunks(self.n())
    }

    /// States where Bradley-Terry hit `0/0` and fell back to 1/2.
    pub fn degenerate_states(&self) -> Vec<GameState> {
        let inst = &self.instance;
        self.states()
            .filter(|s| {
                is_bradley_terry_degenerate(
                    self.model,
                    inst.party_a()[s.i].total(),
                    inst.party_b()[s.j].total(),
                )
            })
            .collect()
    }

    /// Plain-text table, rows = A-strategies, columns = B-strategies, each
    /// cell `a, b` at 4 decimals.
    pub fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows()
            .map(|row| {
                row.iter()
                    .map(|c| format!("{:.4}, {:.4}", c.a, c.b))
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        let label_w = format!("A{}", self.m()).len();
        let mut out = String::new();
        let _ = write!(out, "{:label_w$}", "");
        for j in 0..self.n() {
            let _ = write!(out, " | {:^width$}", format!("B{}", j + 1));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            let _ = write!(out, "{:<label_w$}", format!("A{}", i + 1));
            for c in row {
                let _ = write!(out, " | {c:>width$}");
            }
            out.push('\n');
        }
        out
    }
}
