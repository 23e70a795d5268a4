//! `election-game` command-line tool.

mod report;

use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use election_game::fixtures::{paper_case_with, verify_case, CaseParams, CASE_IDS};
use election_game::{
    canonicalize, run_campaign, validate_instance, EgoismMode, Error, GameState, RawInstance,
    SamplerConfig, WinModel, DEFAULT_TOL,
};

const EXIT_DOMAIN: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_THEOREM: u8 = 3;
const EXIT_USAGE: u8 = 64;

const TOL_ENV: &str = "ELECTION_GAME_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "election-game",
    version,
    about = "Analyze two-party election games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze an instance file: payoffs, equilibria, price of anarchy.
    Analyze(AnalyzeArgs),
    /// Re-derive the built-in worked examples and compare with their expected outcomes.
    VerifyPaper(VerifyArgs),
    /// Run a seeded sampling campaign.
    Sample(SampleArgs),
    /// Write a built-in case as an instance JSON file.
    ExportCase(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EgoismFlag {
    None,
    Strict,
    Weak,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Instance JSON file.
    file: PathBuf,
    #[arg(long, default_value = "linear_link", value_parser = parse_model)]
    model: WinModel,
    /// Comparison tolerance (default: $ELECTION_GAME_TOL or 1e-9).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Sort candidates and order the parties before validating.
    #[arg(long)]
    canonicalize: bool,
    /// Also trace a best-response walk from state I,J (1-based).
    #[arg(long, value_name = "I,J", value_parser = parse_state)]
    walk: Option<GameState>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Case id to check (repeatable); all cases when omitted.
    #[arg(long = "case", value_name = "ID")]
    cases: Vec<String>,
    /// Tolerance override KEY=VALUE (repeatable).
    #[arg(long = "override", value_name = "KEY=VALUE", value_parser = parse_override)]
    overrides: Vec<(String, f64)>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, default_value = "linear_link", value_parser = parse_model)]
    model: WinModel,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 100.0)]
    b: f64,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = EgoismFlag::None)]
    egoistic: EgoismFlag,
    #[arg(long)]
    tol: Option<f64>,
    /// Directory for report.json and trials.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExportArgs {
    /// Case id.
    id: String,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_model(s: &str) -> Result<WinModel, String> {
    s.parse()
}

fn parse_state(s: &str) -> Result<GameState, String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected I,J, got {s:?}"))?;
    let idx = |t: &str| match t.trim().parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("state indices are 1-based integers, got {t:?}")),
    };
    Ok(GameState::one_based(idx(i)?, idx(j)?))
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {v:?}"))?;
    Ok((k.trim().to_string(), v))
}

/// A failed command: exit status plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn resolve_tol(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::new(EXIT_USAGE, format!("{TOL_ENV}: not a number: {s:?}")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("tolerance must be finite and nonnegative, got {tol}"),
        ));
    }
    Ok(tol)
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let tol = resolve_tol(args.tol)?;
    let text = fs::read_to_string(&args.file)
        .map_err(|e| Failure::new(EXIT_DOMAIN, format!("{}: {e}", args.file.display())))?;
    let invalid = |e: Error| Failure::new(EXIT_DOMAIN, format!("invalid instance: {e}"));
    let raw = RawInstance::from_json(&text).map_err(invalid)?;
    let inst = if args.canonicalize {
        canonicalize(&raw)
    } else {
        validate_instance(&raw)
    }
    .map_err(invalid)?;
    let rendered = report::analyze(&inst, args.model, tol, args.walk, args.format)
        .map_err(|e| Failure::new(EXIT_DOMAIN, e.to_string()))?;
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let ids: Vec<String> = if args.cases.is_empty() {
        CASE_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        args.cases
    };
    if let Some(bad) = ids.iter().find(|id| !CASE_IDS.contains(&id.as_str())) {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("unknown case {bad:?} (known: {})", CASE_IDS.join(", ")),
        ));
    }
    let overrides: BTreeMap<String, f64> = args.overrides.into_iter().collect();
    let started = Instant::now();
    let mut failed = 0;
    let mut warned = false;
    for id in &ids {
        let case = paper_case_with(id, CaseParams::default())
            .map_err(|e| Failure::new(EXIT_DOMAIN, e.to_string()))?;
        let outcome = verify_case(&case, &overrides);
        if !warned {
            for w in &outcome.warnings {
                println!("{w}");
            }
            warned = true;
        }
        println!("{} {id}", if outcome.passed { "PASS" } else { "FAIL" });
        for d in &outcome.diffs {
            println!("    {d}");
        }
        if !outcome.passed {
            failed += 1;
        }
    }
    println!(
        "{} cases: {} passed, {failed} failed ({:.3}s)",
        ids.len(),
        ids.len() - failed,
        started.elapsed().as_secs_f64()
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    })
}

fn cmd_sample(args: SampleArgs) -> CmdResult {
    let cfg = SamplerConfig {
        m: args.m,
        n: args.n,
        b: args.b,
        egoistic: match args.egoistic {
            EgoismFlag::None => None,
            EgoismFlag::Strict => Some(EgoismMode::Strict),
            EgoismFlag::Weak => Some(EgoismMode::Weak),
        },
        model: args.model,
        count: args.count,
        seed: args.seed,
        tol: resolve_tol(args.tol)?,
    };
    cfg.validate()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let report = match run_campaign(&cfg) {
        Ok(r) => r,
        Err(Error::TheoremViolation {
            trial_index,
            what,
            instance,
        }) => {
            return Err(Failure::new(
                EXIT_THEOREM,
                format!(
                    "theorem violation in trial {trial_index}: {what}\n{}",
                    instance.to_json()
                ),
            ))
        }
        Err(e) => return Err(Failure::new(EXIT_DOMAIN, e.to_string())),
    };
    report
        .write_to_dir(&args.out)
        .map_err(|e| Failure::new(EXIT_DOMAIN, format!("{}: {e}", args.out.display())))?;
    println!("{}", report.summary_line());
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(args: ExportArgs) -> CmdResult {
    if !CASE_IDS.contains(&args.id.as_str()) {
        return Err(Failure::new(
            EXIT_USAGE,
            format!(
                "unknown case {:?} (known: {})",
                args.id,
                CASE_IDS.join(", ")
            ),
        ));
    }
    let mut params = CaseParams::with_bound(args.b.unwrap_or(100.0));
    if let Some(eps) = args.eps {
        params.eps = eps;
        params.delta = eps / 100.0;
    }
    if let Some(delta) = args.delta {
        params.delta = delta;
    }
    let case =
        paper_case_with(&args.id, params).map_err(|e| Failure::new(EXIT_DOMAIN, e.to_string()))?;
    let json = case.instance.to_json() + "\n";
    match args.out {
        Some(path) => fs::write(&path, json)
            .map_err(|e| Failure::new(EXIT_DOMAIN, format!("{}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::VerifyPaper(a) => cmd_verify(a),
        Command::Sample(a) => cmd_sample(a),
        Command::ExportCase(a) => cmd_export(a),
    };
    result.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        ExitCode::from(f.code)
    })
}
