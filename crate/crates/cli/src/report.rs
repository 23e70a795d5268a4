//! Rendering of `analyze` results.

use std::fmt::Write as _;

use election_game::analysis::{dominates, weakly_dominates};
use election_game::{
    analyze_matrix, best_response_walk_with, payoff_matrix, AnalysisResult, GameInstance,
    GameState, Party, PayoffMatrix, PoaValue, Result, StatePayoff, Walk, WalkOptions, WinModel,
};
use serde::Serialize;

use crate::Format;

#[derive(Serialize)]
struct OptimalJson {
    #[serde(flatten)]
    state: GameState,
    su: f64,
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    model: WinModel,
    egoistic_strict: bool,
    egoistic_weak: bool,
    matrix: Vec<&'a [StatePayoff]>,
    pne: &'a [GameState],
    optimal: OptimalJson,
    poa: Option<PoaValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    walk: Option<&'a Walk>,
}

pub fn analyze(
    inst: &GameInstance,
    model: WinModel,
    tol: f64,
    walk_from: Option<GameState>,
    format: Format,
) -> Result<String> {
    let mat = payoff_matrix(inst, model);
    let res = analyze_matrix(&mat, tol);
    let walk = walk_from
        .map(|s| {
            let opts = WalkOptions {
                tol,
                ..WalkOptions::default()
            };
            best_response_walk_with(&mat, s, &opts)
        })
        .transpose()?;
    Ok(match format {
        Format::Text => render_text(&mat, &res, walk.as_ref())?,
        Format::Json => render_json(&mat, &res, walk.as_ref()),
        Format::Csv => render_csv(&mat, &res)?,
    })
}

fn dominance_lines(inst: &GameInstance) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    for party in [Party::A, Party::B] {
        let k = inst.candidates(party).len();
        for i in 0..k {
            for i2 in i + 1..k {
                let kind = if dominates(inst, party, i, i2)? {
                    "strictly"
                } else if weakly_dominates(inst, party, i, i2)? {
                    "weakly"
                } else {
                    continue;
                };
                lines.push(format!(
                    "{party}{} {kind} dominates {party}{}",
                    i + 1,
                    i2 + 1
                ));
            }
        }
    }
    Ok(lines)
}

fn render_text(mat: &PayoffMatrix, res: &AnalysisResult, walk: Option<&Walk>) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", res.model);
    let _ = writeln!(
        out,
        "egoistic: strict={} weak={}",
        res.egoistic_strict, res.egoistic_weak
    );
    out.push_str("payoff matrix (a, b):\n");
    out.push_str(&mat.render_text());
    let dom = dominance_lines(mat.instance())?;
    if dom.is_empty() {
        out.push_str("dominance: none\n");
    } else {
        out.push_str("dominance:\n");
        for d in dom {
            let _ = writeln!(out, "  {d}");
        }
    }
    let _ = writeln!(out, "PNE: {}", res.pne);
    let _ = writeln!(out, "optimal: {} SU={:.4}", res.optimal, res.optimal_su);
    if let (Some(s), Some(su)) = (res.worst_pne, res.worst_pne_su) {
        let _ = writeln!(out, "worst PNE: {s} SU={su:.4}");
    }
    match res.poa {
        Some(v) => {
            let _ = writeln!(out, "PoA: {v}");
        }
        None => out.push_str("PoA: undefined (no PNE)\n"),
    }
    if !res.degenerate_states.is_empty() {
        let states: Vec<String> = res
            .degenerate_states
            .iter()
            .map(ToString::to_string)
            .collect();
        let _ = writeln!(out, "degenerate 0/0 odds at: {}", states.join(", "));
    }
    if let Some(w) = walk {
        let _ = writeln!(out, "walk: {w}");
    }
    Ok(out)
}

fn render_json(mat: &PayoffMatrix, res: &AnalysisResult, walk: Option<&Walk>) -> String {
    let doc = AnalyzeJson {
        model: res.model,
        egoistic_strict: res.egoistic_strict,
        egoistic_weak: res.egoistic_weak,
        matrix: mat.rows().collect(),
        pne: res.pne.states(),
        optimal: OptimalJson {
            state: res.optimal,
            su: res.optimal_su,
        },
        poa: res.poa,
        walk,
    };
    serde_json::to_string_pretty(&doc).expect("report serialization is infallible") + "\n"
}

fn render_csv(mat: &PayoffMatrix, res: &AnalysisResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "a", "b", "p", "su", "pne"])?;
    for (s, c) in mat.iter() {
        w.write_record([
            (s.i + 1).to_string(),
            (s.j + 1).to_string(),
            c.a.to_string(),
            c.b.to_string(),
            c.p.value().to_string(),
            c.su.to_string(),
            res.pne.contains(s).to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
