//! The `rrfair` command line: run, reproduce, scan, certify, generate and
//! best-response.
//!
//! Goods and agents print 1-based; instance and profile files are 0-based.
//! Exit codes: 0 success, 1 reproduction mismatch, 2 input error, 3 size
//! guard exceeded (or skipped under `--require-equilibrium`).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundle::Bundle;
use crate::classes::{
    is_additive, is_cancelable, is_monotone, is_subadditive, is_submodular,
    satisfies_marginal_sum_bound, Verdict,
};
use crate::equilibria::{
    best_response, certify_instance, pne_factor, scan_range, BoundVerifier, EquilibriumReport,
    FairnessBound, ProfileSpace, ScanMode, BEST_RESPONSE_MAX_GOODS,
};
use crate::error::{Error, Result};
use crate::fairness::{fairness_report, FairnessReport};
use crate::instance::Instance;
use crate::instances::document;
use crate::instances::fixtures::{reproduce, Fixture, Reproduction};
use crate::instances::generate::{generate, GeneratorClass, GeneratorSpec};
use crate::mechanism::{pad_to_multiple, round_robin, Allocation, Profile, Ranking};
use crate::profiles::{bluff_profile, truthful_profile};
use crate::rational::{format_rational, parse_rational, to_f64, Factor, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Profiles evaluated per parallel batch during scans.
const SCAN_BATCH: usize = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "rrfair",
    version,
    about = "Round-Robin equilibria and EF1 analysis with exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the mechanism on one profile and score the outcome.
    Run(RunArgs),
    /// Rebuild a fixture and compare its scenario with the closed-form values.
    Reproduce(ReproduceArgs),
    /// Evaluate every profile (or a seeded sample) of an instance.
    Scan(ScanArgs),
    /// Report the valuation classes of every agent, with witnesses.
    Certify(CertifyArgs),
    /// Write a seeded random instance document.
    Generate(GenerateArgs),
    /// Exact best response of one agent against a profile.
    BestResponse(BestResponseArgs),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Instance document (JSON).
    #[arg(conflicts_with = "fixture", required_unless_present = "fixture")]
    pub instance: Option<PathBuf>,
    /// Use a built-in fixture instead of a document.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Fixture parameter override, e.g. `--param eps1=1/200`.
    #[arg(long = "param", value_name = "KEY=P/Q", requires = "fixture")]
    pub params: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    Bluff,
    Truthful,
}

#[derive(Args, Debug)]
pub struct ProfileChoice {
    /// Built-in profile, used unless `--profile-file` is given.
    #[arg(long, value_enum, default_value = "bluff")]
    pub profile: ProfileKind,
    /// JSON file with one 0-based ranking per agent, e.g. `[[0,1,2],[2,1,0]]`.
    #[arg(long)]
    pub profile_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub choice: ProfileChoice,
    /// Fail with exit code 3 when the equilibrium analysis is skipped.
    #[arg(long)]
    pub require_equilibrium: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Fixture name: no-pne, bluff-tightness, additive-tightness, oxs-lower-bound.
    pub fixture: String,
    #[arg(long = "param", value_name = "KEY=P/Q")]
    pub params: Vec<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub source: Source,
    /// Visit every profile (the default unless `--samples` is given).
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Number of uniformly sampled profiles.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; output order does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print only the summary.
    #[arg(long)]
    pub quiet: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// additive, budget_additive, unit_demand, oxs or submodular_table.
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub agents: usize,
    #[arg(long)]
    pub goods: usize,
    #[arg(long, default_value_t = 10)]
    pub max_weight: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BestResponseArgs {
    #[command(flatten)]
    pub source: Source,
    /// 1-based agent.
    #[arg(long)]
    pub agent: usize,
    #[command(flatten)]
    pub choice: ProfileChoice,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first) and runs the command, writing to `out`
/// and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } | Error::ScanGuard { .. } => EXIT_GUARD,
        _ => EXIT_INPUT,
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Run(a) => cmd_run(&a, out),
        Command::Reproduce(a) => cmd_reproduce(&a, out),
        Command::Scan(a) => cmd_scan(&a, out),
        Command::Certify(a) => cmd_certify(&a, out),
        Command::Generate(a) => cmd_generate(&a, out),
        Command::BestResponse(a) => cmd_best_response(&a, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Document(e.to_string())
}

fn parse_params(fixture: Fixture, params: &[String]) -> Result<Fixture> {
    params.iter().try_fold(fixture, |f, p| {
        let (key, value) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidInstance(format!("parameter {p:?} is not KEY=P/Q")))?;
        f.with_param(key.trim(), parse_rational(value)?)
    })
}

fn load_source(source: &Source) -> Result<(Instance, String)> {
    match (&source.fixture, &source.instance) {
        (Some(name), _) => {
            let fixture = parse_params(Fixture::named(name)?, &source.params)?;
            Ok((fixture.build()?, fixture.name().to_string()))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(io)?;
            Ok((document::load(&text)?, path.display().to_string()))
        }
        (None, None) => Err(Error::Document("no instance given".into())),
    }
}

/// The chosen profile over the padded instance.
fn choose_profile(choice: &ProfileChoice, inst: &Instance, padded: &Instance) -> Result<Profile> {
    if let Some(path) = &choice.profile_file {
        let text = fs::read_to_string(path).map_err(io)?;
        let orders: Vec<Vec<usize>> =
            serde_json::from_str(&text).map_err(|e| Error::MalformedProfile(e.to_string()))?;
        if orders.len() != inst.agents() {
            return Err(Error::MalformedProfile(format!(
                "{} rankings for {} agents",
                orders.len(),
                inst.agents()
            )));
        }
        let rankings = orders
            .iter()
            .map(|o| {
                let r = Ranking::from_indices(o)?;
                if r.goods() != inst.goods() {
                    return Err(Error::MalformedRanking(format!(
                        "ranking covers {} goods, instance has {}",
                        r.goods(),
                        inst.goods()
                    )));
                }
                Ok(r.extended(padded.goods()))
            })
            .collect::<Result<Vec<_>>>()?;
        return Profile::new(rankings);
    }
    Ok(match choice.profile {
        ProfileKind::Bluff => bluff_profile(padded),
        ProfileKind::Truthful => truthful_profile(padded),
    })
}

fn rational_json(r: &Rational) -> Value {
    json!({ "exact": format_rational(r), "approx": to_f64(r) })
}

fn factor_json(f: &Factor) -> Value {
    match f {
        Factor::Bounded(r) => rational_json(r),
        Factor::Unbounded => json!("unbounded"),
    }
}

fn approx(r: &Rational) -> String {
    format!("{} ≈ {:.6}", format_rational(r), to_f64(r))
}

fn factor_text(f: &Factor) -> String {
    match f {
        Factor::Bounded(r) => approx(r),
        Factor::Unbounded => "unbounded".into(),
    }
}

fn bundles_json(bundles: &[Bundle]) -> Value {
    bundles
        .iter()
        .map(|b| b.iter().map(|g| g.0 + 1).collect::<Vec<_>>())
        .collect()
}

fn ranking_json(r: &Ranking) -> Value {
    r.order().iter().map(|g| g.0 + 1).collect()
}

fn equilibrium_json(eq: &EquilibriumReport, goods: usize) -> Value {
    let real = Bundle::full(goods);
    json!({
        "pne_factor": rational_json(&eq.pne_factor),
        "agents": eq.per_agent.iter().enumerate().map(|(i, a)| json!({
            "agent": i + 1,
            "current": rational_json(&a.current),
            "best_response": rational_json(&a.best.value),
            "best_bundle": bundles_json(&[a.best.bundle.intersection(real)])[0],
            "best_ranking": ranking_json(&a.best.ranking.restricted(goods)),
            "ratio": factor_json(&a.ratio),
        })).collect::<Vec<_>>(),
    })
}

fn fairness_json(f: &FairnessReport) -> Value {
    json!({
        "ef1_factor": factor_json(&f.ef1_factor),
        "ef_factor": factor_json(&f.ef_factor),
        "worst_pair": f.worst_pair.as_ref().map(|p| json!({
            "agent": p.owner + 1, "other": p.other + 1, "removed": p.removed.0 + 1,
        })),
        "pairs": f.pair_ratios.iter().map(|p| json!({
            "agent": p.owner + 1,
            "other": p.other + 1,
            "removed": p.removed.0 + 1,
            "ratio": factor_json(&p.ratio),
        })).collect::<Vec<_>>(),
    })
}

fn write_fairness(out: &mut dyn Write, f: &FairnessReport) -> std::io::Result<()> {
    writeln!(out, "EF1 factor: {}", factor_text(&f.ef1_factor))?;
    writeln!(out, "EF factor:  {}", factor_text(&f.ef_factor))?;
    if let Some(p) = &f.worst_pair {
        writeln!(
            out,
            "worst pair: agent {} towards agent {} without {}",
            p.owner + 1,
            p.other + 1,
            p.removed
        )?;
    }
    Ok(())
}

fn write_equilibrium(
    out: &mut dyn Write,
    eq: &EquilibriumReport,
    goods: usize,
) -> std::io::Result<()> {
    let real = Bundle::full(goods);
    for (i, a) in eq.per_agent.iter().enumerate() {
        writeln!(
            out,
            "agent {}: value {}  best response {} with {}  ratio {}",
            i + 1,
            format_rational(&a.current),
            format_rational(&a.best.value),
            a.best.bundle.intersection(real),
            factor_text(&a.ratio)
        )?;
    }
    writeln!(out, "PNE factor: {}", approx(&eq.pne_factor))
}

fn bound_for(inst: &Instance) -> std::result::Result<FairnessBound, String> {
    let classes = certify_instance(inst).map_err(|e| e.to_string())?;
    FairnessBound::select(inst.agents(), classes)
        .ok_or_else(|| Error::NoApplicableBound.to_string())
}

fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let (inst, label) = load_source(&a.source)?;
    let (padded, dummies) = pad_to_multiple(&inst)?;
    let profile = choose_profile(&a.choice, &inst, &padded)?;
    let (allocation, _) = round_robin(&padded, &profile)?;
    let allocation: Allocation = allocation.restricted(inst.goods());
    let fairness = fairness_report(&inst, &allocation)?;
    let equilibrium = if padded.goods() <= BEST_RESPONSE_MAX_GOODS {
        Some(pne_factor(&padded, &profile)?)
    } else if a.require_equilibrium {
        return Err(Error::SizeGuard {
            check: "best response",
            goods: padded.goods(),
            max: BEST_RESPONSE_MAX_GOODS,
        });
    } else {
        None
    };
    let bound = bound_for(&inst);
    let verdict = match (&equilibrium, &bound) {
        (Some(eq), Ok(kind)) => {
            let value = kind.apply(&eq.pne_factor);
            Some((*kind, fairness.ef1_factor.at_least(&value), value))
        }
        _ => None,
    };
    if a.json {
        let report = json!({
            "instance": { "source": label, "agents": inst.agents(), "goods": inst.goods(), "dummies": dummies },
            "profile": profile.rankings().iter().map(|r| ranking_json(&r.restricted(inst.goods()))).collect::<Vec<_>>(),
            "allocation": bundles_json(allocation.bundles()),
            "equilibrium": equilibrium.as_ref().map_or(json!("skipped: size guard"), |eq| equilibrium_json(eq, inst.goods())),
            "fairness": fairness_json(&fairness),
            "bound": match (&verdict, &bound) {
                (Some((kind, holds, value)), _) => json!({ "formula": kind.formula(), "value": rational_json(value), "holds": holds }),
                (None, Err(reason)) => json!({ "unavailable": reason }),
                (None, Ok(kind)) => json!({ "formula": kind.formula(), "unavailable": "equilibrium skipped" }),
            },
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("json")
        )
        .map_err(io)?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "instance: {label} ({} agents, {} goods, {dummies} padding goods)",
        inst.agents(),
        inst.goods()
    )
    .map_err(io)?;
    for (i, r) in profile.rankings().iter().enumerate() {
        writeln!(out, "ranking {}: {}", i + 1, r.restricted(inst.goods())).map_err(io)?;
    }
    for (i, b) in allocation.bundles().iter().enumerate() {
        writeln!(out, "A{} = {b}", i + 1).map_err(io)?;
    }
    match &equilibrium {
        Some(eq) => write_equilibrium(out, eq, inst.goods()).map_err(io)?,
        None => writeln!(out, "PNE factor: skipped: size guard").map_err(io)?,
    }
    write_fairness(out, &fairness).map_err(io)?;
    match (&verdict, &bound) {
        (Some((kind, holds, value)), _) => writeln!(
            out,
            "bound {} = {}: {}",
            kind.formula(),
            approx(value),
            if *holds { "holds" } else { "VIOLATED" }
        ),
        (None, Err(reason)) => writeln!(out, "bound: unavailable ({reason})"),
        (None, Ok(_)) => writeln!(out, "bound: unavailable (equilibrium skipped)"),
    }
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn reproduction_json(r: &Reproduction) -> Value {
    json!({
        "fixture": r.fixture.name(),
        "description": r.fixture.description(),
        "passed": r.passed(),
        "profiles_scanned": r.profiles_scanned,
        "checks": r.checks.iter().map(|c| json!({
            "quantity": c.quantity, "expected": c.expected, "actual": c.actual, "pass": c.pass,
        })).collect::<Vec<_>>(),
        "run": r.run.as_ref().map(|run| json!({
            "profile": run.profile.rankings().iter().map(|x| ranking_json(&x.restricted(run.instance.goods()))).collect::<Vec<_>>(),
            "allocation": bundles_json(run.allocation.bundles()),
            "equilibrium": equilibrium_json(&run.equilibrium, run.instance.goods()),
            "fairness": fairness_json(&run.fairness),
        })),
    })
}

fn cmd_reproduce(a: &ReproduceArgs, out: &mut dyn Write) -> Result<i32> {
    let fixture = parse_params(Fixture::named(&a.fixture)?, &a.params)?;
    let outcome = reproduce(&fixture)?;
    let code = if outcome.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&reproduction_json(&outcome)).expect("json")
        )
        .map_err(io)?;
        return Ok(code);
    }
    writeln!(out, "{}: {}", fixture.name(), fixture.description()).map_err(io)?;
    for c in &outcome.checks {
        writeln!(
            out,
            "  {:<36} expected {:<28} actual {:<28} {}",
            c.quantity,
            c.expected,
            c.actual,
            if c.pass { "PASS" } else { "FAIL" }
        )
        .map_err(io)?;
    }
    match outcome.first_failure() {
        None => writeln!(out, "PASS"),
        Some(c) => writeln!(
            out,
            "FAIL: {} differs (expected {}, actual {})",
            c.quantity, c.expected, c.actual
        ),
    }
    .map_err(io)?;
    Ok(code)
}

fn ranking_list(profile: &Profile) -> String {
    profile
        .rankings()
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(" | ")
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> Result<i32> {
    let (inst, label) = load_source(&a.source)?;
    let mode = match a.samples {
        Some(count) => ScanMode::Sampled {
            count,
            seed: a.seed,
        },
        None => ScanMode::Exhaustive,
    };
    let space = ProfileSpace::new(inst.agents(), inst.goods(), mode)?;
    if inst.goods() > BEST_RESPONSE_MAX_GOODS {
        return Err(Error::SizeGuard {
            check: "best response",
            goods: inst.goods(),
            max: BEST_RESPONSE_MAX_GOODS,
        });
    }
    let verifier = BoundVerifier::new(&inst);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = a.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidInstance(format!("thread pool: {e}")))?;
    let mut min_pne: Option<Rational> = None;
    let mut max_pne: Option<Rational> = None;
    let mut min_ef1 = Factor::Unbounded;
    let mut violations = 0usize;
    let mut start = 0;
    while start < space.len() {
        let end = (start + SCAN_BATCH).min(space.len());
        let entries = pool.install(|| scan_range(&inst, &space, start..end))?;
        for e in entries {
            let pne = &e.equilibrium.pne_factor;
            if min_pne.as_ref().is_none_or(|m| pne < m) {
                min_pne = Some(pne.clone());
            }
            if max_pne.as_ref().is_none_or(|m| pne > m) {
                max_pne = Some(pne.clone());
            }
            min_ef1 = min_ef1.min(e.fairness.ef1_factor.clone());
            let check = verifier
                .as_ref()
                .ok()
                .map(|v| v.judge(&e.equilibrium, &e.fairness));
            if check.as_ref().is_some_and(|c| !c.holds) {
                violations += 1;
            }
            if a.quiet {
                continue;
            }
            if a.json {
                let line = json!({
                    "index": e.index,
                    "profile": e.profile.rankings().iter().map(ranking_json).collect::<Vec<_>>(),
                    "pne_factor": format_rational(pne),
                    "ef1_factor": e.fairness.ef1_factor.to_string(),
                    "bound": check.as_ref().map(|c| format_rational(&c.bound)),
                    "holds": check.as_ref().map(|c| c.holds),
                });
                writeln!(out, "{line}").map_err(io)?;
            } else {
                writeln!(
                    out,
                    "#{:<7} {}  pne {}  ef1 {}{}",
                    e.index,
                    ranking_list(&e.profile),
                    format_rational(pne),
                    e.fairness.ef1_factor,
                    check.map_or(String::new(), |c| format!(
                        "  bound {} {}",
                        format_rational(&c.bound),
                        if c.holds { "ok" } else { "VIOLATED" }
                    ))
                )
                .map_err(io)?;
            }
        }
        start = end;
    }
    let show = |r: &Option<Rational>| r.as_ref().map_or("none".to_string(), format_rational);
    let bound_label = match &verifier {
        Ok(v) => v.kind().formula().to_string(),
        Err(e) => format!("unavailable ({e})"),
    };
    if a.json {
        let summary = json!({
            "summary": {
                "source": label,
                "profiles": space.len(),
                "min_pne_factor": min_pne.as_ref().map(format_rational),
                "max_pne_factor": max_pne.as_ref().map(format_rational),
                "min_ef1_factor": min_ef1.to_string(),
                "bound": bound_label,
                "violations": verifier.is_ok().then_some(violations),
            }
        });
        writeln!(out, "{summary}").map_err(io)?;
    } else {
        writeln!(
            out,
            "{} profiles, min pne_factor {}, max pne_factor {}, min ef1_factor {}, bound {}, violations {}",
            space.len(),
            show(&min_pne),
            show(&max_pne),
            min_ef1,
            bound_label,
            if verifier.is_ok() { violations.to_string() } else { "n/a".into() }
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn verdict_json<W>(v: Result<Verdict<W>>, witness: impl Fn(&W) -> Value) -> Value {
    match v {
        Ok(Verdict::Holds) => json!({ "holds": true }),
        Ok(Verdict::Fails(w)) => json!({ "holds": false, "witness": witness(&w) }),
        Err(e) => json!({ "skipped": e.to_string() }),
    }
}

fn bool_json(v: Result<bool>) -> Value {
    match v {
        Ok(b) => json!({ "holds": b }),
        Err(e) => json!({ "skipped": e.to_string() }),
    }
}

fn verdict_text(v: &Value) -> String {
    match (v.get("holds"), v.get("skipped")) {
        (Some(Value::Bool(true)), _) => "yes".into(),
        (Some(Value::Bool(false)), _) => match v.get("witness") {
            Some(Value::String(w)) => format!("no ({w})"),
            _ => "no".into(),
        },
        (_, Some(Value::String(reason))) => format!("skipped ({reason})"),
        _ => "?".into(),
    }
}

fn cmd_certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<i32> {
    let (inst, label) = load_source(&a.source)?;
    let agents: Vec<Value> = inst
        .valuations()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            json!({
                "agent": i + 1,
                "class": v.class_name(),
                "monotone": verdict_json(is_monotone(v), |w| json!(format!("v({}) < v({})", w.set.with(w.good), w.set))),
                "submodular": verdict_json(is_submodular(v), |w| json!(format!(
                    "v({}|{}) > v({}|{})", w.good, w.larger, w.good, w.smaller))),
                "marginal_sum_bound": bool_json(satisfies_marginal_sum_bound(v)),
                "cancelable": verdict_json(is_cancelable(v), |w| json!(format!(
                    "v({}) > v({}) but v({}) <= v({})", w.first.with(w.good), w.second.with(w.good), w.first, w.second))),
                "subadditive": verdict_json(is_subadditive(v), |w| json!(format!(
                    "v({}) > v({}) + v({})", w.first.union(w.second), w.first, w.second))),
                "additive": bool_json(is_additive(v)),
            })
        })
        .collect();
    if a.json {
        let doc = json!({ "source": label, "agents": agents });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "instance: {label} ({} agents, {} goods)",
        inst.agents(),
        inst.goods()
    )
    .map_err(io)?;
    for agent in &agents {
        writeln!(
            out,
            "agent {} ({})",
            agent["agent"],
            agent["class"].as_str().unwrap_or("?")
        )
        .map_err(io)?;
        for key in [
            "monotone",
            "submodular",
            "marginal_sum_bound",
            "cancelable",
            "subadditive",
            "additive",
        ] {
            writeln!(out, "  {key:<19} {}", verdict_text(&agent[key])).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let class: GeneratorClass = a.class.parse()?;
    let spec = GeneratorSpec {
        class,
        agents: a.agents,
        goods: a.goods,
        max_weight: a.max_weight,
        seed: a.seed,
    };
    let inst = generate(&spec)?;
    let description = format!("{class} instance, seed {}", a.seed);
    let text = document::save(&inst, Some(&description));
    match &a.output {
        Some(path) => fs::write(path, text + "\n").map_err(io)?,
        None => writeln!(out, "{text}").map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn cmd_best_response(a: &BestResponseArgs, out: &mut dyn Write) -> Result<i32> {
    let (inst, _) = load_source(&a.source)?;
    if a.agent == 0 || a.agent > inst.agents() {
        return Err(Error::AgentOutOfRange {
            agent: a.agent,
            agents: inst.agents(),
        });
    }
    let agent = a.agent - 1;
    let (padded, _) = pad_to_multiple(&inst)?;
    let profile = choose_profile(&a.choice, &inst, &padded)?;
    let (allocation, _) = round_robin(&padded, &profile)?;
    let current = inst.valuation(agent).value(
        allocation
            .bundle(agent)
            .intersection(Bundle::full(inst.goods())),
    )?;
    let br = best_response(&padded, agent, &profile)?;
    let bundle = br.bundle.intersection(Bundle::full(inst.goods()));
    let ratio = Factor::ratio(&current, &br.value);
    if a.json {
        let doc = json!({
            "agent": a.agent,
            "current": rational_json(&current),
            "value": rational_json(&br.value),
            "bundle": bundles_json(&[bundle])[0],
            "ranking": ranking_json(&br.ranking.restricted(inst.goods())),
            "ratio": factor_json(&ratio),
            "explored_states": br.explored_states,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "agent {}: current value {}",
        a.agent,
        format_rational(&current)
    )
    .map_err(io)?;
    writeln!(
        out,
        "best response: {}",
        br.ranking.restricted(inst.goods())
    )
    .map_err(io)?;
    writeln!(out, "bundle {bundle}, value {}", approx(&br.value)).map_err(io)?;
    writeln!(
        out,
        "ratio {}  ({} states explored)",
        factor_text(&ratio),
        br.explored_states
    )
    .map_err(io)?;
    Ok(EXIT_OK)
}
