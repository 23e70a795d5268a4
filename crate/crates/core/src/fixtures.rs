//! The worked instances from the original analysis of the game, with the
//! outcomes claimed for them, and a checker that re-derives those outcomes.
//!
//! Symbolic instances are parameterized by `eps` and `delta` (defaults
//! `eps = b/100`, `delta = eps/100`, `b = 100`).
//!
//! Tolerances: values printed to two decimals are checked to ±0.01; exact
//! closed forms to 1e-9 relative (absolute below unit scale); approximate
//! closed forms (written with `≈`) to ±`delta`, the order of the dropped
//! terms.

use std::collections::BTreeMap;
use std::f64::consts::E;
use std::fmt;

use serde::Serialize;

use crate::analysis::{analyze_matrix, enumerate_pne, PoaValue};
use crate::error::{Error, Result};
use crate::model::{
    is_egoistic, validate_instance, EgoismMode, GameInstance, RawInstance, WinModel,
};
use crate::payoff::{payoff_matrix, GameState};

pub const CASE_IDS: [&str; 9] = [
    "table1-left",
    "table1-right",
    "table2-ll",
    "table2-softmax",
    "table3-bt",
    "table4-ll",
    "table5-ll",
    "table5-softmax",
    "table5-bt",
];

/// Override keys understood by [`verify_case`].
pub const OVERRIDE_KEYS: [&str; 5] = ["pne_tol", "cell_abs", "cell_rel", "poa_abs", "poa_rel"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseParams {
    pub b: f64,
    pub eps: f64,
    pub delta: f64,
}

impl Default for CaseParams {
    fn default() -> Self {
        Self::with_bound(100.0)
    }
}

impl CaseParams {
    pub fn with_bound(b: f64) -> Self {
        let eps = b / 100.0;
        Self {
            b,
            eps,
            delta: eps / 100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    Abs(f64),
    /// Relative to `max(|expected|, 1)`.
    Rel(f64),
}

impl Tolerance {
    fn allows(self, got: f64, want: f64) -> bool {
        let slack = match self {
            Tolerance::Abs(t) => t,
            Tolerance::Rel(t) => t * want.abs().max(1.0),
        };
        (got - want).abs() <= slack
    }

    fn overridden(self, ov: &Overrides) -> Tolerance {
        match self {
            Tolerance::Abs(t) => Tolerance::Abs(ov.cell_abs.unwrap_or(t)),
            Tolerance::Rel(t) => Tolerance::Rel(ov.cell_rel.unwrap_or(t)),
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Abs(t) => write!(f, "± {t}"),
            Tolerance::Rel(t) => write!(f, "± {t} rel"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectedCell {
    pub state: GameState,
    pub a: f64,
    pub b: f64,
    pub tol: Tolerance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpectedPoa {
    NoPne,
    Approx {
        value: f64,
        abs_tol: f64,
    },
    /// Finite and at least `value·(1 - rel_tol)`, or unbounded.
    AtLeast {
        value: f64,
        rel_tol: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Expected {
    pub egoistic_strict: Option<bool>,
    pub egoistic_weak: Option<bool>,
    pub cells: Vec<ExpectedCell>,
    pub pne: Option<Vec<GameState>>,
    pub optimal: Option<GameState>,
    pub poa: Option<ExpectedPoa>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PaperCase {
    pub id: String,
    pub params: CaseParams,
    pub instance: GameInstance,
    pub model: WinModel,
    /// Egoism mode under which the source calls the instance egoistic.
    pub egoism_mode: EgoismMode,
    pub expected: Expected,
}

fn st(i: usize, j: usize) -> GameState {
    GameState::one_based(i, j)
}

fn cells(rows: [[f64; 2]; 4], tol: Tolerance) -> Vec<ExpectedCell> {
    [st(1, 1), st(1, 2), st(2, 1), st(2, 2)]
        .into_iter()
        .zip(rows)
        .map(|(state, [a, b])| ExpectedCell { state, a, b, tol })
        .collect()
}

fn build(b: f64, a: &[(f64, f64)], bb: &[(f64, f64)]) -> Result<GameInstance> {
    validate_instance(&RawInstance::new(b, a.iter().copied(), bb.iter().copied()))
}

const PRINTED: Tolerance = Tolerance::Abs(0.01);
const CLOSED_FORM: Tolerance = Tolerance::Rel(1e-9);

pub fn paper_case(id: &str) -> Result<PaperCase> {
    paper_case_with(id, CaseParams::default())
}

/// Builds case `id` with explicit `b`, `eps`, `delta` (used by the symbolic
/// cases only; tables 1 and 4 are fixed at `b = 100`).
///
/// Parameters that make the instance invalid surface as validation errors.
pub fn paper_case_with(id: &str, params: CaseParams) -> Result<PaperCase> {
    let CaseParams { b, eps, delta } = params;
    let (instance, model, egoism_mode, expected) = match id {
        "table1-left" => (
            // The printed matrix is reproduced by u_B(B_2) = 9; the printed
            // instance (u_B(B_2) = 10) gives a different second column and an
            // equilibrium at (2,2).
            build(100.0, &[(91.0, 0.0), (90.0, 8.0)], &[(11.0, 1.0), (9.0, 20.0)])?,
            WinModel::BradleyTerry,
            EgoismMode::Strict,
            Expected {
                egoistic_strict: Some(true),
                cells: cells(
                    [[80.51, 1.28], [73.84, 2.17], [80.29, 8.32], [74.02, 8.23]],
                    PRINTED,
                ),
                pne: Some(vec![]),
                poa: Some(ExpectedPoa::NoPne),
                notes: vec![
                    "u_B(B_2) = 9: the value that reproduces the printed payoff matrix; the instance table prints 10".into(),
                ],
                ..Expected::default()
            },
        ),
        "table1-right" => (
            build(100.0, &[(44.0, 10.0), (39.0, 55.0)], &[(37.0, 17.0), (10.0, 5.0)])?,
            WinModel::BradleyTerry,
            EgoismMode::Strict,
            Expected {
                egoistic_strict: Some(false),
                cells: cells(
                    [[30.50, 23.50], [35.52, 10.00], [30.97, 48.43], [34.32, 48.81]],
                    PRINTED,
                ),
                pne: Some(vec![]),
                poa: Some(ExpectedPoa::NoPne),
                notes: vec!["b = 100 taken from the caption".into()],
                ..Expected::default()
            },
        ),
        "table2-ll" | "table2-softmax" => {
            let x = eps - delta;
            let inst = build(b, &[(eps, 0.0), (x, x)], &[(eps, 0.0), (x, x)])?;
            let (model, cells, poa_tol) = if id == "table2-ll" {
                let a12 = eps - delta * (0.5 + (eps - 2.0 * delta) / (2.0 * b));
                let a21 = eps / 2.0 + ((eps - 2.0 * delta) * (eps - delta) - b * delta) / (2.0 * b);
                let exact = cells([[eps / 2.0, eps / 2.0], [a12, a21], [a21, a12], [x, x]], CLOSED_FORM);
                (WinModel::LinearLink, exact, 0.005)
            } else {
                let approx = Tolerance::Abs(delta);
                let mut c = cells(
                    [[eps / 2.0, eps / 2.0], [eps - delta / 2.0, x / 2.0], [x / 2.0, eps - delta / 2.0], [x, x]],
                    approx,
                );
                c[0].tol = CLOSED_FORM;
                c[3].tol = CLOSED_FORM;
                (WinModel::Softmax, c, 0.01)
            };
            (
                inst,
                model,
                EgoismMode::Weak,
                Expected {
                    egoistic_strict: Some(false),
                    egoistic_weak: Some(true),
                    cells,
                    pne: Some(vec![st(1, 1)]),
                    optimal: Some(st(2, 2)),
                    poa: Some(ExpectedPoa::Approx {
                        value: 2.0 - 2.0 * delta / eps,
                        abs_tol: poa_tol,
                    }),
                    notes: vec!["egoistic only in the weak sense: u_A(A_2) = u_A(B_2)".into()],
                },
            )
        }
        "table3-bt" => {
            let x = eps - delta;
            let approx = Tolerance::Abs(delta);
            (
                build(b, &[(eps, 0.0), (x, delta)], &[(eps, 0.0), (x, delta)])?,
                WinModel::BradleyTerry,
                EgoismMode::Strict,
                Expected {
                    egoistic_strict: Some(true),
                    cells: cells(
                        [[eps / 2.0, eps / 2.0], [eps, x / 2.0], [x / 2.0, eps], [eps / 2.0, eps / 2.0]],
                        approx,
                    ),
                    pne: Some(vec![st(1, 1), st(2, 2)]),
                    poa: Some(ExpectedPoa::Approx {
                        value: (1.5 * eps - delta / 2.0) / eps,
                        abs_tol: 0.005,
                    }),
                    notes: vec![
                        "every candidate in this instance has total utility eps, so all winning odds are 1/2; \
                         the claimed matrix, equilibria and PoA do not follow from it"
                            .into(),
                    ],
                    ..Expected::default()
                },
            )
        }
        "table4-ll" => (
            build(100.0, &[(50.0, 10.0), (5.0, 20.0)], &[(10.0, 90.0), (5.0, 20.0)])?,
            WinModel::LinearLink,
            EgoismMode::Strict,
            Expected {
                egoistic_strict: Some(false),
                cells: cells(
                    [[78.0, 10.0], [40.25, 8.375], [79.375, 11.25], [12.5, 12.5]],
                    Tolerance::Abs(1e-9),
                ),
                pne: Some(vec![]),
                poa: Some(ExpectedPoa::NoPne),
                ..Expected::default()
            },
        ),
        "table5-ll" | "table5-softmax" | "table5-bt" => {
            let inst = build(b, &[(eps, 0.0), (0.0, b)], &[(eps, 0.0), (0.0, b)])?;
            let (model, off, bound, notes) = match id {
                "table5-ll" => (
                    WinModel::LinearLink,
                    b - eps * (b - eps) / (2.0 * b),
                    b / eps,
                    vec![],
                ),
                "table5-softmax" => {
                    let g = (eps / b).exp();
                    (
                        WinModel::Softmax,
                        (eps * g + E * b) / (g + E),
                        b * (g + 1.0) / (2.0 * eps * g),
                        vec![
                            "cells follow from the stated odds p_{1,1} = 1/2 and p_{1,2} = e^{eps/b}/(e^{eps/b}+e); \
                             the printed cells use e^eps and denominators e^eps + 1"
                                .into(),
                        ],
                    )
                }
                _ => (
                    WinModel::BradleyTerry,
                    (eps * eps + b * b) / (b + eps),
                    b / eps,
                    vec![],
                ),
            };
            (
                inst,
                model,
                EgoismMode::Strict,
                Expected {
                    egoistic_strict: Some(false),
                    cells: cells(
                        [[eps / 2.0, eps / 2.0], [off, 0.0], [0.0, off], [b / 2.0, b / 2.0]],
                        CLOSED_FORM,
                    ),
                    pne: Some(vec![st(1, 1)]),
                    optimal: Some(st(2, 2)),
                    poa: Some(ExpectedPoa::AtLeast {
                        value: bound,
                        rel_tol: 1e-9,
                    }),
                    notes,
                    ..Expected::default()
                },
            )
        }
        other => return Err(Error::UnknownCase(other.to_string())),
    };
    Ok(PaperCase {
        id: id.to_string(),
        params,
        instance,
        model,
        egoism_mode,
        expected,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub passed: bool,
    pub diffs: Vec<String>,
    /// Non-fatal remarks, e.g. ignored override keys.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Overrides {
    pne_tol: Option<f64>,
    cell_abs: Option<f64>,
    cell_rel: Option<f64>,
    poa_abs: Option<f64>,
    poa_rel: Option<f64>,
}

fn parse_overrides(raw: &BTreeMap<String, f64>) -> (Overrides, Vec<String>) {
    let mut ov = Overrides::default();
    let mut warnings = Vec::new();
    for (k, &v) in raw {
        let slot = match k.as_str() {
            "pne_tol" => &mut ov.pne_tol,
            "cell_abs" => &mut ov.cell_abs,
            "cell_rel" => &mut ov.cell_rel,
            "poa_abs" => &mut ov.poa_abs,
            "poa_rel" => &mut ov.poa_rel,
            _ => {
                warnings.push(format!(
                    "warning: unknown tolerance override {k:?} ignored (known: {})",
                    OVERRIDE_KEYS.join(", ")
                ));
                continue;
            }
        };
        *slot = Some(v);
    }
    (ov, warnings)
}

fn fmt_states(states: &[GameState]) -> String {
    if states.is_empty() {
        return "none".into();
    }
    let parts: Vec<String> = states.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Re-analyzes one case and lists every mismatch with its expectations.
pub fn verify_case(case: &PaperCase, overrides: &BTreeMap<String, f64>) -> CaseOutcome {
    let (ov, warnings) = parse_overrides(overrides);
    let exp = &case.expected;
    let inst = &case.instance;
    let mut diffs = Vec::new();

    for (mode, want) in [
        (EgoismMode::Strict, exp.egoistic_strict),
        (EgoismMode::Weak, exp.egoistic_weak),
    ] {
        if let Some(want) = want {
            let got = is_egoistic(inst, mode);
            if got != want {
                diffs.push(format!("egoistic ({mode}): expected {want}, got {got}"));
            }
        }
    }

    let mat = payoff_matrix(inst, case.model);
    for cell in &exp.cells {
        let tol = cell.tol.overridden(&ov);
        let got = match mat.cell(cell.state) {
            Ok(c) => c,
            Err(e) => {
                diffs.push(format!("cell {}: {e}", cell.state));
                continue;
            }
        };
        for (name, g, w) in [("a", got.a, cell.a), ("b", got.b, cell.b)] {
            if !tol.allows(g, w) {
                diffs.push(format!(
                    "cell {} {name}: expected {w} {tol}, got {g:.6}",
                    cell.state
                ));
            }
        }
    }

    let pne_tol = ov.pne_tol.unwrap_or(crate::DEFAULT_TOL);
    let pne = enumerate_pne(&mat, pne_tol);
    if let Some(want) = &exp.pne {
        if pne.states() != want.as_slice() {
            diffs.push(format!(
                "PNE: expected {}, got {}",
                fmt_states(want),
                fmt_states(pne.states())
            ));
        }
    }

    let res = analyze_matrix(&mat, pne_tol);
    if let Some(want) = exp.optimal {
        if res.optimal != want {
            diffs.push(format!("optimal: expected {want}, got {}", res.optimal));
        }
    }

    let got_poa = match res.poa {
        Some(v) => v.to_string(),
        None => "none (no PNE)".into(),
    };
    match exp.poa {
        None => {}
        Some(ExpectedPoa::NoPne) => {
            if res.poa.is_some() {
                diffs.push(format!("PoA: expected none (no PNE), got {got_poa}"));
            }
        }
        Some(ExpectedPoa::Approx { value, abs_tol }) => {
            let tol = ov.poa_abs.unwrap_or(abs_tol);
            let ok = matches!(res.poa, Some(PoaValue::Finite(v)) if (v - value).abs() <= tol);
            if !ok {
                diffs.push(format!("PoA: expected {value} ± {tol}, got {got_poa}"));
            }
        }
        Some(ExpectedPoa::AtLeast { value, rel_tol }) => {
            let tol = ov.poa_rel.unwrap_or(rel_tol);
            let ok = match res.poa {
                Some(PoaValue::Finite(v)) => v >= value * (1.0 - tol),
                Some(PoaValue::Unbounded) => true,
                None => false,
            };
            if !ok {
                diffs.push(format!(
                    "PoA: expected at least {value} (rel {tol}), got {got_poa}"
                ));
            }
        }
    }

    CaseOutcome {
        id: case.id.clone(),
        passed: diffs.is_empty(),
        diffs,
        warnings,
    }
}

/// Verifies every registered case at default parameters.
pub fn verify_all(overrides: &BTreeMap<String, f64>) -> Vec<CaseOutcome> {
    CASE_IDS
        .iter()
        .map(|id| verify_case(&paper_case(id).expect("registered case"), overrides))
        .collect()
}
