//! Winning probabilities of an A-candidate against a B-candidate.

use serde::{Deserialize, Serialize};

use crate::model::WinModel;

/// Probability that party A's nominee wins the election.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub fn value(self) -> f64 {
        self.0
    }

    /// Probability that the B-candidate wins.
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// `p_{i,j}` for candidates with social utilities `u_a` and `u_b`.
///
/// Inputs must satisfy `0 <= u_a, u_b <= b` and `b >= 1`; the result is not
/// clamped. Bradley-Terry with `u_a = u_b = 0` is taken to be 1/2.
pub fn win_probability(model: WinModel, u_a: f64, u_b: f64, b: f64) -> Probability {
    debug_assert!(b >= 1.0, "bound {b} < 1");
    debug_assert!(
        (0.0..=b).contains(&u_a) && (0.0..=b).contains(&u_b),
        "utilities ({u_a}, {u_b}) outside [0, {b}]"
    );
    let p = match model {
        WinModel::LinearLink => (1.0 + (u_a - u_b) / b) / 2.0,
        WinModel::BradleyTerry => {
            if is_bradley_terry_degenerate(model, u_a, u_b) {
                0.5
            } else {
                u_a / (u_a + u_b)
            }
        }
        // e^{u_a/b} / (e^{u_a/b} + e^{u_b/b}), written to avoid overflow
        WinModel::Softmax => 1.0 / (1.0 + ((u_b - u_a) / b).exp()),
    };
    Probability(p)
}

/// True when Bradley-Terry is evaluated at the undefined point `0/0`.
pub fn is_bradley_terry_degenerate(model: WinModel, u_a: f64, u_b: f64) -> bool {
    model == WinModel::BradleyTerry && u_a == 0.0 && u_b == 0.0
}
