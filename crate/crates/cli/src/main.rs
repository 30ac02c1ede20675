//! `tsaudit` — audit finite type spaces from the command line.
//!
//! Subcommands: `validate`, `classify`, `components`, `bet`, `pump`,
//! `single`. Exit codes are stable: 0 analysis succeeded, 1 semantic finding
//! (invalid space, refused precondition), 2 I/O or parse failure, 3 internal
//! dichotomy failure (an implementation bug, never a property of the input).

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::Instant;
use tsaudit_core::{
    audit_single_player, classify, find_acceptable_bet, find_agreeable_bet,
    find_weakly_agreeable_bet, money_pump_responder, verify_bet, ProbVector, PumpLevel, TypeSpace,
};

/// State-count soft limit override.
const MAX_STATES_ENV: &str = "TSAUDIT_MAX_STATES";

const EXIT_OK: i32 = 0;
const EXIT_FINDING: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "tsaudit",
    version,
    about = "Validate finite type spaces, decompose them into common certainty components, \
             classify belief consistency, and emit machine-checkable certificates.",
    after_help = "Exit codes: 0 analysis succeeded, 1 semantic finding, 2 I/O or parse error, \
                  3 internal dichotomy failure.\nSet TSAUDIT_MAX_STATES to raise the state-count \
                  soft limit (default 24)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the three type-space axioms; print violations one per line.
    Validate {
        files: Vec<PathBuf>,
        /// Analyze this many files in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Full analysis: components, consistency level, verified certificates.
    Classify {
        files: Vec<PathBuf>,
        /// Emit the report.v1 JSON document instead of text.
        #[arg(long)]
        json: bool,
        /// Add approximate decimals (marked non-authoritative).
        #[arg(long)]
        decimal: bool,
        /// Analyze this many files in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Minimal common certainty components and per-state closures.
    Components {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a bet of the given kind.
    Bet {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: BetKindArg,
        #[arg(long)]
        json: bool,
    },
    /// Build a money-pump responder; with --prior, answer that distribution.
    Pump {
        file: PathBuf,
        #[arg(long, value_enum)]
        level: LevelArg,
        /// Comma-separated rationals, e.g. 1/4,1/4,1/4,1/4.
        #[arg(long)]
        prior: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Audit a candidate distribution against a single player's beliefs.
    Single {
        file: PathBuf,
        /// Comma-separated rationals, e.g. 1/10,0,9/10.
        #[arg(long)]
        prior: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BetKindArg {
    Agreeable,
    Weak,
    Acceptable,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Weak,
    Universal,
    Strong,
}

impl From<LevelArg> for PumpLevel {
    fn from(level: LevelArg) -> PumpLevel {
        match level {
            LevelArg::Weak => PumpLevel::Weak,
            LevelArg::Universal => PumpLevel::Universal,
            LevelArg::Strong => PumpLevel::Strong,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn finding(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FINDING,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<tsaudit_core::Error> for Failure {
    fn from(e: tsaudit_core::Error) -> Self {
        match e {
            tsaudit_core::Error::Internal(_) => Failure::internal(e.to_string()),
            tsaudit_core::Error::Precondition(_) => Failure::finding(e.to_string()),
            tsaudit_core::Error::InvalidInput(_) => Failure::input(e.to_string()),
        }
    }
}

fn state_limit() -> usize {
    match std::env::var(MAX_STATES_ENV) {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(limit) => {
                if limit > tsaudit_core::model::DEFAULT_MAX_STATES {
                    eprintln!(
                        "warning: {MAX_STATES_ENV} raises the state limit to {limit}; \
                         power-set sweeps grow accordingly"
                    );
                }
                limit
            }
            Err(_) => {
                eprintln!("warning: ignoring unparsable {MAX_STATES_ENV}={text:?}");
                tsaudit_core::model::DEFAULT_MAX_STATES
            }
        },
        Err(_) => tsaudit_core::model::DEFAULT_MAX_STATES,
    }
}

struct LoadedSpace {
    space: TypeSpace,
    digest: String,
    path: String,
}

fn read_input(path: &Path) -> Result<(String, String), Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();
    let text = String::from_utf8(bytes)
        .map_err(|e| Failure::input(format!("{}: not UTF-8: {e}", path.display())))?;
    Ok((text, digest))
}

fn load_space(path: &Path) -> Result<LoadedSpace, Failure> {
    let (text, digest) = read_input(path)?;
    let space = TypeSpace::parse_with_limit(&text, state_limit())
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(LoadedSpace {
        space,
        digest,
        path: path.display().to_string(),
    })
}

/// Loads and insists on a clean validation, collecting violations otherwise.
fn load_valid_space(path: &Path) -> Result<LoadedSpace, Failure> {
    let loaded = load_space(path)?;
    let violations = loaded.space.validate();
    if violations.is_empty() {
        Ok(loaded)
    } else {
        let listing = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("\n");
        Err(Failure::finding(format!(
            "{} is not a valid type space:\n{listing}",
            path.display()
        )))
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Validate { files, jobs } => run_many(files, jobs, cmd_validate),
        Command::Classify {
            files,
            json,
            decimal,
            jobs,
        } => run_many(files, jobs, move |path| cmd_classify(path, json, decimal)),
        Command::Components { file, json } => run_single(|| cmd_components(&file, json)),
        Command::Bet { file, kind, json } => run_single(|| cmd_bet(&file, kind, json)),
        Command::Pump {
            file,
            level,
            prior,
            json,
        } => run_single(|| cmd_pump(&file, level, prior.as_deref(), json)),
        Command::Single { file, prior, json } => run_single(|| cmd_single(&file, &prior, json)),
    }
}

fn run_single(f: impl FnOnce() -> Result<i32, Failure>) -> i32 {
    match f() {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

/// Runs one command per file, up to `jobs` at a time. Per-file output is
/// buffered and printed in input order, so parallelism never reorders or
/// interleaves results. The exit code is the worst per-file code.
fn run_many<F>(files: Vec<PathBuf>, jobs: usize, per_file: F) -> i32
where
    F: Fn(&Path) -> Result<(i32, String), Failure> + Sync,
{
    if files.is_empty() {
        eprintln!("error: no input files");
        return EXIT_INPUT;
    }
    let jobs = jobs.max(1);
    let mut codes = vec![EXIT_OK; files.len()];
    for chunk_start in (0..files.len()).step_by(jobs) {
        let chunk_end = (chunk_start + jobs).min(files.len());
        type FileResult = (usize, Result<(i32, String), Failure>);
        let results: Vec<FileResult> = std::thread::scope(|scope| {
            let handles: Vec<_> = (chunk_start..chunk_end)
                .map(|i| {
                    let path = files[i].clone();
                    let per_file = &per_file;
                    scope.spawn(move || (i, per_file(&path)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut ordered = results;
        ordered.sort_by_key(|(i, _)| *i);
        for (i, result) in ordered {
            match result {
                Ok((code, output)) => {
                    print!("{output}");
                    codes[i] = code;
                }
                Err(failure) => {
                    eprintln!("error: {}", failure.message);
                    codes[i] = failure.code;
                }
            }
        }
    }
    codes.into_iter().max().unwrap_or(EXIT_OK)
}

fn cmd_validate(path: &Path) -> Result<(i32, String), Failure> {
    use std::fmt::Write;
    let loaded = load_space(path)?;
    let violations = loaded.space.validate();
    let mut out = String::new();
    if violations.is_empty() {
        writeln!(out, "{}: valid", loaded.path).unwrap();
        Ok((EXIT_OK, out))
    } else {
        for v in &violations {
            writeln!(out, "{}: {v}", loaded.path).unwrap();
        }
        Ok((EXIT_FINDING, out))
    }
}

fn cmd_classify(path: &Path, json: bool, decimal: bool) -> Result<(i32, String), Failure> {
    use std::fmt::Write;
    let started = Instant::now();
    let loaded = load_space(path)?;
    let mut out = String::new();
    let violations = loaded.space.validate();
    if !violations.is_empty() {
        let listing: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        if json {
            let doc = report::invalid_input(&loaded.path, &loaded.digest, &listing);
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        } else {
            for line in &listing {
                writeln!(out, "{}: {line}", loaded.path).unwrap();
            }
        }
        return Ok((EXIT_FINDING, out));
    }
    let ts = &loaded.space;
    let verdict = classify(ts)?;
    let component_report = report::minimal_components_of(ts);
    let built = report::build(
        ts,
        &loaded.path,
        &loaded.digest,
        &verdict,
        &component_report,
        decimal,
    )
    .map_err(|e| Failure::internal(format!("certificate re-verification failed: {}", e.0)))?;

    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&built.value).unwrap()
        )
        .unwrap();
        return Ok((EXIT_OK, out));
    }
    writeln!(out, "{}: {}", loaded.path, built.level).unwrap();
    let minimal: Vec<String> = component_report
        .minimal
        .iter()
        .map(|c| format!("{{{}}}", ts.labels_of(c).join(", ")))
        .collect();
    writeln!(out, "  minimal components: {}", minimal.join(" ")).unwrap();
    if let Some(witness) = &verdict.witness {
        let unique = match verdict.witness_unique {
            Some(true) => " (unique)",
            _ => "",
        };
        writeln!(
            out,
            "  witness: {}{unique}{}",
            witness,
            approx(decimal, witness)
        )
        .unwrap();
    }
    if let Some(strong) = &verdict.strong_witness {
        writeln!(
            out,
            "  strong witness: {}{}",
            strong,
            approx(decimal, strong)
        )
        .unwrap();
    }
    for (component, witness) in &verdict.component_witnesses {
        writeln!(
            out,
            "  component witness {{{}}}: {}",
            ts.labels_of(component).join(", "),
            witness
        )
        .unwrap();
    }
    if let Some(bet) = &verdict.refuting_bet {
        let checked = verify_bet(ts, bet).map_err(|e| Failure::internal(e.to_string()))?;
        writeln!(out, "  refuting bet ({:?}):", checked.kind).unwrap();
        write_payoffs(&mut out, ts, &bet.players, &bet.payoffs);
    }
    writeln!(
        out,
        "  money pumps: weak {}, universal {}, strong {}",
        exists_text(&built.value["money_pumps"]["weak"]),
        exists_text(&built.value["money_pumps"]["universal"]),
        exists_text(&built.value["money_pumps"]["strong"]),
    )
    .unwrap();
    writeln!(out, "  certificates: all re-verified").unwrap();
    writeln!(out, "  elapsed: {:?}", started.elapsed()).unwrap();
    Ok((EXIT_OK, out))
}

fn exists_text(entry: &serde_json::Value) -> &'static str {
    if entry["exists"].as_bool().unwrap_or(false) {
        "yes"
    } else {
        "no"
    }
}

fn approx(decimal: bool, witness: &ProbVector) -> String {
    if !decimal {
        return String::new();
    }
    let parts: Vec<String> = witness
        .entries()
        .iter()
        .map(|x| format!("{:.6}", x.to_f64_lossy()))
        .collect();
    format!(" ≈ ({}) [non-authoritative]", parts.join(", "))
}

fn print_payoffs(ts: &TypeSpace, players: &[usize], payoffs: &[Vec<tsaudit_core::Rational>]) {
    for (&p, payoff) in players.iter().zip(payoffs) {
        let entries: Vec<String> = payoff.iter().map(|x| x.to_string()).collect();
        println!("    {}: [{}]", ts.player(p).name(), entries.join(", "));
    }
}

fn write_payoffs(
    out: &mut String,
    ts: &TypeSpace,
    players: &[usize],
    payoffs: &[Vec<tsaudit_core::Rational>],
) {
    use std::fmt::Write;
    for (&p, payoff) in players.iter().zip(payoffs) {
        let entries: Vec<String> = payoff.iter().map(|x| x.to_string()).collect();
        writeln!(out, "    {}: [{}]", ts.player(p).name(), entries.join(", ")).unwrap();
    }
}

fn cmd_components(path: &Path, json: bool) -> Result<i32, Failure> {
    let loaded = load_valid_space(path)?;
    let ts = &loaded.space;
    let component_report = report::minimal_components_of(ts);
    if json {
        let doc = report::components_only(ts, &component_report);
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let minimal: Vec<String> = component_report
            .minimal
            .iter()
            .map(|c| format!("{{{}}}", ts.labels_of(c).join(", ")))
            .collect();
        println!("minimal components: {}", minimal.join(" "));
        for s in 0..ts.num_states() {
            println!(
                "closure({}) = {{{}}}",
                ts.state_label(s),
                ts.labels_of(&component_report.closure[s]).join(", ")
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bet(path: &Path, kind: BetKindArg, json: bool) -> Result<i32, Failure> {
    let loaded = load_valid_space(path)?;
    let ts = &loaded.space;
    let found = match kind {
        BetKindArg::Agreeable => find_agreeable_bet(ts)?,
        BetKindArg::Weak => find_weakly_agreeable_bet(ts)?,
        BetKindArg::Acceptable => find_acceptable_bet(ts)?,
    };
    match found {
        None => {
            if json {
                println!("{}", serde_json::json!({ "found": false }));
            } else {
                println!("no {kind:?} bet exists: the matching consistency level holds");
            }
        }
        Some(bet) => {
            let checked = verify_bet(ts, &bet).map_err(|e| Failure::internal(e.to_string()))?;
            if json {
                let mut doc = bet.to_json(ts);
                doc["found"] = serde_json::json!(true);
                doc["kind"] = serde_json::json!(format!("{:?}", checked.kind));
                doc["margin"] = match &checked.margin {
                    Some(m) => serde_json::json!(m.to_string()),
                    None => serde_json::Value::Null,
                };
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("found a bet verifying as {:?}:", checked.kind);
                print_payoffs(ts, &bet.players, &bet.payoffs);
                if let Some(margin) = &checked.margin {
                    println!("margin: {margin}");
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_pump(path: &Path, level: LevelArg, prior: Option<&str>, json: bool) -> Result<i32, Failure> {
    let loaded = load_valid_space(path)?;
    let ts = &loaded.space;
    let responder = money_pump_responder(ts, level.into())?;
    let Some(responder) = responder else {
        if json {
            println!("{}", serde_json::json!({ "exists": false }));
        } else {
            println!("no {level:?} money pump: the matching consistency level holds");
        }
        return Ok(EXIT_OK);
    };
    let Some(prior_text) = prior else {
        if json {
            println!("{}", serde_json::json!({ "exists": true }));
        } else {
            println!("a {level:?} money pump exists; pass --prior to get a semi-bet against it");
        }
        return Ok(EXIT_OK);
    };
    let prior =
        ProbVector::parse_list(prior_text).map_err(|e| Failure::input(format!("--prior: {e}")))?;
    let response = responder.respond(&prior)?;
    let aggregate = response.aggregate_expectation(&prior);
    if json {
        let mut doc = response.to_json(ts);
        doc["exists"] = serde_json::json!(true);
        doc["aggregate_expectation"] = serde_json::json!(aggregate.to_string());
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("semi-bet against ({prior_text}):");
        print_payoffs(ts, &response.players, &response.payoffs);
        println!("aggregate expectation under the prior: {aggregate}");
    }
    Ok(EXIT_OK)
}

fn cmd_single(path: &Path, prior: &str, json: bool) -> Result<i32, Failure> {
    let loaded = load_valid_space(path)?;
    let ts = &loaded.space;
    let prior =
        ProbVector::parse_list(prior).map_err(|e| Failure::input(format!("--prior: {e}")))?;
    let audit = audit_single_player(ts, &prior).map_err(|e| match e {
        tsaudit_core::single_player::SinglePlayerError::WrongPriorLength { .. } => {
            Failure::input(e.to_string())
        }
        tsaudit_core::single_player::SinglePlayerError::Internal(_) => {
            Failure::internal(e.to_string())
        }
        _ => Failure::finding(e.to_string()),
    })?;
    if json {
        let mut doc = serde_json::json!({
            "conglomerable": audit.conglomerable,
            "violating_event": audit.violating_event.map(|e| ts.labels_of(&e)),
            "disintegrable": audit.disintegrable,
        });
        match &audit.certificate {
            tsaudit_core::single_player::AuditCertificate::Weights(weights) => {
                doc["weights"] =
                    serde_json::json!(weights.iter().map(|w| w.to_string()).collect::<Vec<_>>());
            }
            tsaudit_core::single_player::AuditCertificate::Pump(pump) => {
                doc["pump"] = serde_json::json!({
                    "payoff": pump.payoff.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "state_expectations": pump
                        .state_expectations
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>(),
                    "target_expectation": pump.target_expectation.to_string(),
                });
            }
        }
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!(
            "conglomerable: {}{}",
            if audit.conglomerable { "yes" } else { "no" },
            match &audit.violating_event {
                Some(event) => format!(" (violating event {{{}}})", ts.labels_of(event).join(", ")),
                None => String::new(),
            }
        );
        println!(
            "disintegrable: {}",
            if audit.disintegrable { "yes" } else { "no" }
        );
        match &audit.certificate {
            tsaudit_core::single_player::AuditCertificate::Weights(weights) => {
                let entries: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                println!("convex weights over states: [{}]", entries.join(", "));
            }
            tsaudit_core::single_player::AuditCertificate::Pump(pump) => {
                let payoff: Vec<String> = pump.payoff.iter().map(|x| x.to_string()).collect();
                println!("money pump payoff: [{}]", payoff.join(", "));
                println!("target expectation: {}", pump.target_expectation);
            }
        }
    }
    Ok(EXIT_OK)
}
