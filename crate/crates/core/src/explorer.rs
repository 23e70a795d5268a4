//! Seeded random instances and Monte-Carlo campaigns.
//!
//! Every trial draws from its own ChaCha8 stream keyed by `(seed,
//! trial_index)`, so a campaign gives the same report regardless of how the
//! trials are scheduled across threads.

use std::fs;
use std::io;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze, AnalysisResult, PoaValue};
use crate::error::{Error, Result};
use crate::model::{
    canonicalize, CandidateUtilities, EgoismMode, GameInstance, RawInstance, WinModel,
};

/// Attempts allowed per trial before the egoism constraint is declared too tight.
pub const MAX_ATTEMPTS: u64 = 1_000_000;

/// Extremal instances kept per category.
pub const EXTREMAL_CAP: usize = 10;

/// Relative slack on the proven PoA bounds before a trial counts as a violation.
pub const POA_BOUND_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub m: usize,
    pub n: usize,
    pub b: f64,
    /// Egoism constraint on generated instances, if any.
    pub egoistic: Option<EgoismMode>,
    pub model: WinModel,
    pub count: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            m: 2,
            n: 2,
            b: 100.0,
            egoistic: None,
            model: WinModel::LinearLink,
            count: 1000,
            seed: 0,
            tol: crate::DEFAULT_TOL,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.m < 2 || self.n < 2 {
            return bad(format!("need m, n >= 2 (got m={}, n={})", self.m, self.n));
        }
        if self.m.saturating_mul(self.n) > 10_000 {
            return bad(format!("m*n = {} exceeds 10000", self.m * self.n));
        }
        if !self.b.is_finite() || self.b < 1.0 {
            return bad(format!("b must be >= 1 (got {})", self.b));
        }
        if self.count == 0 {
            return bad("count must be positive".into());
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return bad(format!(
                "tolerance must be finite and nonnegative (got {})",
                self.tol
            ));
        }
        Ok(())
    }

    /// The proven PoA ceiling that applies to this configuration, if any.
    pub fn poa_bound(&self) -> Option<f64> {
        if self.egoistic != Some(EgoismMode::Strict) {
            return None;
        }
        Some(match self.model {
            WinModel::LinearLink | WinModel::BradleyTerry => 2.0,
            WinModel::Softmax => 1.0 + std::f64::consts::E,
        })
    }

    /// Whether a pure equilibrium is guaranteed for every sampled instance.
    pub fn pne_guaranteed(&self) -> bool {
        self.egoistic == Some(EgoismMode::Strict)
            && matches!(self.model, WinModel::LinearLink | WinModel::Softmax)
    }
}

fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// Uniform point of the triangle `own, rival >= 0, own + rival <= b`: a
/// uniform point of the square, folded across the diagonal.
fn draw_candidate(rng: &mut impl Rng, b: f64) -> CandidateUtilities {
    let own = b * rng.random::<f64>();
    let rival = b * rng.random::<f64>();
    if own + rival <= b {
        CandidateUtilities::new(own, rival)
    } else {
        CandidateUtilities::new(b - own, b - rival)
    }
}

#[derive(Debug, Clone, Copy)]
struct EgoismTracker {
    mode: EgoismMode,
    min_a_own: f64,
    max_a_rival: f64,
    min_b_own: f64,
    max_b_rival: f64,
}

impl EgoismTracker {
    fn new(mode: EgoismMode) -> Self {
        Self {
            mode,
            min_a_own: f64::INFINITY,
            max_a_rival: f64::NEG_INFINITY,
            min_b_own: f64::INFINITY,
            max_b_rival: f64::NEG_INFINITY,
        }
    }

    fn gt(&self, x: f64, y: f64) -> bool {
        match self.mode {
            EgoismMode::Strict => x > y,
            EgoismMode::Weak => x >= y,
        }
    }

    /// Adds an A-candidate; false if it breaks egoism against any B so far.
    fn push_a(&mut self, c: CandidateUtilities) -> bool {
        if !(self.gt(c.own, self.max_b_rival) && self.gt(self.min_b_own, c.rival)) {
            return false;
        }
        self.min_a_own = self.min_a_own.min(c.own);
        self.max_a_rival = self.max_a_rival.max(c.rival);
        true
    }

    fn push_b(&mut self, c: CandidateUtilities) -> bool {
        if !(self.gt(c.own, self.max_a_rival) && self.gt(self.min_a_own, c.rival)) {
            return false;
        }
        self.min_b_own = self.min_b_own.min(c.own);
        self.max_b_rival = self.max_b_rival.max(c.rival);
        true
    }
}

/// Draws one full instance into `party_a`/`party_b`; false as soon as the
/// egoism constraint fails.
///
/// Candidates are i.i.d., so drawing them interleaved and stopping at the
/// first violated pair leaves the accepted distribution unchanged.
fn attempt(
    rng: &mut impl Rng,
    cfg: &SamplerConfig,
    party_a: &mut Vec<CandidateUtilities>,
    party_b: &mut Vec<CandidateUtilities>,
) -> bool {
    party_a.clear();
    party_b.clear();
    let mut tracker = cfg.egoistic.map(EgoismTracker::new);
    for k in 0..cfg.m.max(cfg.n) {
        if k < cfg.m {
            let c = draw_candidate(rng, cfg.b);
            if tracker.as_mut().is_some_and(|t| !t.push_a(c)) {
                return false;
            }
            party_a.push(c);
        }
        if k < cfg.n {
            let c = draw_candidate(rng, cfg.b);
            if tracker.as_mut().is_some_and(|t| !t.push_b(c)) {
                return false;
            }
            party_b.push(c);
        }
    }
    true
}

/// Deterministic instance for `(cfg.seed, trial_index)`.
///
/// Candidates are uniform on `own + rival <= b` (by rejection); the whole
/// instance is redrawn until it satisfies `cfg.egoistic`, then canonicalized.
/// Canonicalization may swap the parties, so an `m x n` request can come back
/// as `n x m`.
pub fn sample_instance(cfg: &SamplerConfig, trial_index: u64) -> Result<GameInstance> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial_index);
    let mut party_a = Vec::with_capacity(cfg.m);
    let mut party_b = Vec::with_capacity(cfg.n);
    for _ in 0..MAX_ATTEMPTS {
        if attempt(&mut rng, cfg, &mut party_a, &mut party_b) {
            return canonicalize(&RawInstance {
                b: cfg.b,
                party_a,
                party_b,
            });
        }
    }
    Err(Error::RejectionBudgetExhausted {
        trial_index,
        attempts: MAX_ATTEMPTS,
    })
}

/// One row of `trials.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub has_pne: bool,
    pub poa: Option<PoaValue>,
    pub optimal_su: f64,
    pub worst_pne_su: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalInstance {
    pub trial_index: u64,
    pub instance: GameInstance,
    pub analysis: AnalysisResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub config: SamplerConfig,
    pub seed: u64,
    pub trials: u64,
    pub pne_found: u64,
    pub pne_found_fraction: f64,
    /// Largest PoA among trials that have an equilibrium.
    pub max_poa_observed: Option<PoaValue>,
    /// Trials where Bradley-Terry had to evaluate `0/0`.
    pub degenerate_trials: u64,
    pub no_pne_instances: Vec<ExtremalInstance>,
    pub top_poa_instances: Vec<ExtremalInstance>,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

fn poa_key(v: PoaValue) -> f64 {
    v.as_f64()
}

/// Proven-theorem check for one trial; `Some(description)` on violation.
fn theorem_violation(cfg: &SamplerConfig, res: &AnalysisResult) -> Option<String> {
    if cfg.pne_guaranteed() && !res.has_pne() {
        return Some(format!(
            "strictly egoistic instance without a pure equilibrium under {}",
            cfg.model
        ));
    }
    let bound = cfg.poa_bound()?;
    match res.poa {
        Some(PoaValue::Finite(v)) if v > bound * (1.0 + POA_BOUND_SLACK) => Some(format!(
            "PoA {v} exceeds proven bound {bound} under {}",
            cfg.model
        )),
        Some(PoaValue::Unbounded) => Some(format!(
            "unbounded PoA on strictly egoistic instance under {}",
            cfg.model
        )),
        _ => None,
    }
}

struct TrialOutcome {
    record: TrialRecord,
    instance: GameInstance,
    analysis: AnalysisResult,
}

fn run_trial(cfg: &SamplerConfig, trial_index: u64) -> Result<TrialOutcome> {
    let instance = sample_instance(cfg, trial_index)?;
    let analysis = analyze(&instance, cfg.model, cfg.tol);
    if let Some(what) = theorem_violation(cfg, &analysis) {
        return Err(Error::TheoremViolation {
            trial_index,
            what,
            instance: Box::new(instance),
        });
    }
    let record = TrialRecord {
        trial_index,
        has_pne: analysis.has_pne(),
        poa: analysis.poa,
        optimal_su: analysis.optimal_su,
        worst_pne_su: analysis.worst_pne_su,
    };
    Ok(TrialOutcome {
        record,
        instance,
        analysis,
    })
}

/// Samples and analyzes `cfg.count` instances.
///
/// A counterexample to a proven result (equilibrium existence or PoA bound
/// under strict egoism) aborts with [`Error::TheoremViolation`] carrying the
/// instance; the lowest offending trial index is reported.
pub fn run_campaign(cfg: &SamplerConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let outcomes: Vec<Result<TrialOutcome>> = (0..cfg.count)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect();

    let mut records = Vec::with_capacity(outcomes.len());
    let mut pne_found = 0u64;
    let mut degenerate_trials = 0u64;
    let mut max_poa: Option<PoaValue> = None;
    let mut no_pne = Vec::new();
    let mut top: Vec<ExtremalInstance> = Vec::new();
    for outcome in outcomes {
        let TrialOutcome {
            record,
            instance,
            analysis,
        } = outcome?;
        if !analysis.degenerate_states.is_empty() {
            degenerate_trials += 1;
        }
        if record.has_pne {
            pne_found += 1;
        } else if no_pne.len() < EXTREMAL_CAP {
            no_pne.push(ExtremalInstance {
                trial_index: record.trial_index,
                instance: instance.clone(),
                analysis: analysis.clone(),
            });
        }
        if let Some(v) = record.poa {
            if max_poa.is_none_or(|cur| poa_key(v) > poa_key(cur)) {
                max_poa = Some(v);
            }
            let qualifies = top.len() < EXTREMAL_CAP
                || top
                    .last()
                    .is_some_and(|w| poa_key(v) > poa_key(w.analysis.poa.expect("kept with PoA")));
            if qualifies {
                top.push(ExtremalInstance {
                    trial_index: record.trial_index,
                    instance,
                    analysis,
                });
                // stable: equal PoA keeps the earlier trial first
                top.sort_by(|x, y| {
                    let (vx, vy) = (x.analysis.poa.unwrap(), y.analysis.poa.unwrap());
                    poa_key(vy).total_cmp(&poa_key(vx))
                });
                top.truncate(EXTREMAL_CAP);
            }
        }
        records.push(record);
    }

    Ok(CampaignReport {
        config: cfg.clone(),
        seed: cfg.seed,
        trials: cfg.count,
        pne_found,
        pne_found_fraction: pne_found as f64 / cfg.count as f64,
        max_poa_observed: max_poa,
        degenerate_trials,
        no_pne_instances: no_pne,
        top_poa_instances: top,
        records,
    })
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// One row per trial: `trial_index,has_pne,poa,optimal_su,worst_pne_su`.
    pub fn write_trials_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "trial_index",
            "has_pne",
            "poa",
            "optimal_su",
            "worst_pne_su",
        ])?;
        for r in &self.records {
            let poa = match r.poa {
                Some(PoaValue::Finite(v)) => v.to_string(),
                Some(PoaValue::Unbounded) => "unbounded".to_string(),
                None => String::new(),
            };
            w.write_record([
                r.trial_index.to_string(),
                r.has_pne.to_string(),
                poa,
                r.optimal_su.to_string(),
                r.worst_pne_su.map(|v| v.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `report.json` and `trials.csv` into `dir`, creating it if needed.
    pub fn write_to_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json())?;
        let file = fs::File::create(dir.join("trials.csv"))?;
        self.write_trials_csv(io::BufWriter::new(file))
    }

    pub fn summary_line(&self) -> String {
        let poa = match self.max_poa_observed {
            Some(PoaValue::Finite(v)) => format!("{v:.6}"),
            Some(PoaValue::Unbounded) => "unbounded".into(),
            None => "none".into(),
        };
        format!(
            "trials={} pne_fraction={} max_poa={}",
            self.trials, self.pne_found_fraction, poa
        )
    }
}
