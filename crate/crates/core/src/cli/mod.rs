//! Command-line front end: `compute`, `fit`, `wallcross`, `selftest`.
//!
//! [`run`] takes the argument list and output streams explicitly and returns
//! the process exit code, so the whole surface is testable in-process.
//!
//! Exit codes: 0 success, 1 other failure, 2 invalid input or a point on a
//! wall, 3 budget exceeded, 4 values not polynomial, 5 no adjacent chamber
//! found.

pub mod cache;
pub mod selftest;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chambers::{
    adjacent_chamber, ChamberError, ChamberWitness, Wall, DEFAULT_SEARCH_BUDGET,
};
use crate::exact::{ExactError, ExactRational};
use crate::hurwitz::{
    frobenius_connected, oracle_count_with, HurwitzError, HurwitzResult, Normalization,
    OracleConfig, RamificationProfile, DEFAULT_LEAF_BUDGET,
};
use crate::identities::IdentityError;
use crate::piecewise::{
    fit_chamber_with, product_formula_terms, wall_crossing, ChamberPolynomial, FitConfig,
    PiecewiseError, ProductConvention,
};
use cache::{cache_key, Cache, CacheRecord};
use selftest::{run_selftest, SelftestConfig};

#[derive(Debug, Parser)]
#[command(
    name = "dhurwitz",
    version,
    about = "Exact double Hurwitz numbers and their chamber polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute H_g(x) exactly.
    Compute(ComputeArgs),
    /// Fit the polynomial of H_g on the chamber containing x.
    Fit(FitArgs),
    /// Fit both sides of a wall and report the wall-crossing polynomial.
    Wallcross(WallcrossArgs),
    /// Run the built-in verification suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Genus.
    #[arg(short = 'g', default_value_t = 0)]
    g: u32,
    /// Comma-separated zero-sum vector with nonzero entries.
    #[arg(
        short = 'x',
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    x: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Frobenius,
    Both,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Oracle => "oracle",
            MethodArg::Frobenius => "frobenius",
            MethodArg::Both => "both",
        }
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Frobenius)]
    method: MethodArg,
    /// Maximum number of transposition tuples the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_LEAF_BUDGET)]
    budget: u64,
    #[arg(long, env = "HURWITZ_CACHE", default_value = "hurwitz-cache.jsonl")]
    cache: PathBuf,
    #[arg(long)]
    no_cache: bool,
    /// Recompute and compare against the cached value.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Extra fitting nodes, also the number of held-out checks.
    #[arg(long, default_value_t = 5)]
    oversample: usize,
    /// Lattice candidates examined when sampling the chamber.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct WallcrossArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Indices (1-based) of either side of the wall.
    #[arg(long, required = true, value_delimiter = ',')]
    wall: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    oversample: usize,
    /// Lattice candidates examined when sampling or crossing the wall.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(2..))]
    r_max: u64,
    #[arg(long)]
    json: bool,
    /// Run with unlabeled normalization; the suite must fail.
    #[arg(long, hide = true)]
    mutate_normalization: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error("cache: {0}")]
    Cache(String),
    #[error("cached value {cached} for {key} differs from recomputed {fresh}")]
    VerifyMismatch {
        key: String,
        cached: String,
        fresh: String,
    },
    #[error("evaluators disagree: oracle {oracle}, frobenius {frobenius}")]
    EvaluatorMismatch { oracle: String, frobenius: String },
    #[error("{0} selftest check(s) failed")]
    SelftestFailed(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// Exit code and stable error tag.
    pub fn code(&self) -> (i32, &'static str) {
        match self {
            CliError::Identity(_) => (2, "INVALID_INPUT"),
            CliError::Hurwitz(e) => hurwitz_code(e),
            CliError::Chamber(e) => chamber_code(e),
            CliError::Piecewise(e) => match e {
                PiecewiseError::UnstableCase | PiecewiseError::Incompatible(_) => {
                    (2, "INVALID_INPUT")
                }
                PiecewiseError::OnWall(_) => (2, "ON_WALL"),
                PiecewiseError::NotPolynomial(_)
                | PiecewiseError::Exact(ExactError::Inconsistent { .. }) => (4, "NOT_POLYNOMIAL"),
                PiecewiseError::NotAdjacent { .. } => (5, "ADJACENCY_NOT_FOUND"),
                PiecewiseError::EvaluatorMismatch(_) => (1, "EVALUATOR_MISMATCH"),
                PiecewiseError::Chamber(e) => chamber_code(e),
                PiecewiseError::Hurwitz(e) => hurwitz_code(e),
                PiecewiseError::Exact(_) => (1, "EXACT_ARITHMETIC"),
            },
            CliError::Cache(_) => (1, "CACHE"),
            CliError::VerifyMismatch { .. } => (1, "VERIFY_MISMATCH"),
            CliError::EvaluatorMismatch { .. } => (1, "EVALUATOR_MISMATCH"),
            CliError::SelftestFailed(_) => (1, "SELFTEST_FAILED"),
            CliError::Io(_) => (1, "IO"),
        }
    }
}

fn hurwitz_code(e: &HurwitzError) -> (i32, &'static str) {
    match e {
        HurwitzError::BudgetExceeded { .. } => (3, "BUDGET_EXCEEDED"),
        _ => (2, "INVALID_INPUT"),
    }
}

fn chamber_code(e: &ChamberError) -> (i32, &'static str) {
    match e {
        ChamberError::OnWall(_) => (2, "ON_WALL"),
        ChamberError::InvalidWall(_) | ChamberError::DimensionMismatch { .. } => {
            (2, "INVALID_INPUT")
        }
        ChamberError::SamplingBudgetExceeded { .. } => (3, "BUDGET_EXCEEDED"),
        ChamberError::AdjacencyNotFound { .. } => (5, "ADJACENCY_NOT_FOUND"),
        ChamberError::Profile(e) => hurwitz_code(e),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Fit(a) => fit(a, out),
        Command::Wallcross(a) => wallcross(a, out, err),
        Command::Selftest(a) => selftest(a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let (code, tag) = e.code();
            let report = json!({ "error": tag, "message": e.to_string(), "exit_code": code });
            let _ = writeln!(err, "{report}");
            code
        }
    }
}

fn profile(a: &ProfileArgs) -> Result<RamificationProfile, CliError> {
    Ok(RamificationProfile::new(a.x.clone())?)
}

fn print_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).expect("output serializes");
    writeln!(out, "{s}")?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct ComputeOutput {
    value: String,
    g: u32,
    r: u32,
    method: String,
    stats: Value,
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = profile(&a.profile)?;
    let g = a.profile.g;
    let r = crate::hurwitz::simple_branch_count(g, p.n())?;
    let key = cache_key(&p, g);
    let mut cache = if a.no_cache {
        None
    } else {
        Some(Cache::open(&a.cache).map_err(CliError::Cache)?)
    };
    let cached = cache.as_ref().and_then(|c| c.get(&key)).cloned();

    if let (Some(rec), false) = (&cached, a.verify) {
        return print_json(
            out,
            &ComputeOutput {
                value: rec.value.clone(),
                g,
                r,
                method: rec.method.clone(),
                stats: json!({ "cached": true }),
            },
        );
    }

    let oracle = OracleConfig {
        budget: a.budget,
        ..OracleConfig::default()
    };
    let (value, mut stats) = match a.method {
        MethodArg::Oracle => single(oracle_count_with(&p, g, &oracle)?),
        MethodArg::Frobenius => single(frobenius_connected(&p, g)?),
        MethodArg::Both => {
            let o = oracle_count_with(&p, g, &oracle)?;
            let f = frobenius_connected(&p, g)?;
            if o.value != f.value {
                return Err(CliError::EvaluatorMismatch {
                    oracle: o.value.to_string(),
                    frobenius: f.value.to_string(),
                });
            }
            let stats = json!({ "oracle": o.stats, "frobenius": f.stats });
            (f.value, stats)
        }
    };
    let value = value.to_string();

    if let Some(cache) = cache.as_mut() {
        match &cached {
            Some(rec) if rec.value != value => {
                return Err(CliError::VerifyMismatch {
                    key,
                    cached: rec.value.clone(),
                    fresh: value,
                })
            }
            Some(_) => stats["verified"] = json!(true),
            None => cache
                .append(CacheRecord::new(key, value.clone(), a.method.name().into()))
                .map_err(CliError::Cache)?,
        }
    }
    print_json(
        out,
        &ComputeOutput {
            value,
            g,
            r,
            method: a.method.name().into(),
            stats,
        },
    )
}

fn single(res: HurwitzResult) -> (ExactRational, Value) {
    let stats = serde_json::to_value(&res.stats).expect("stats serialize");
    (res.value, stats)
}

fn fit_config(oversample: usize, budget: usize) -> FitConfig {
    FitConfig {
        oversample,
        sample_budget: budget,
        ..FitConfig::default()
    }
}

fn fit(a: FitArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let witness = ChamberWitness::new(profile(&a.profile)?)?;
    let fitted = fit_chamber_with(&witness, a.profile.g, &fit_config(a.oversample, a.budget))?;
    if a.json {
        return print_json(out, &fitted.report());
    }
    write_chamber(out, "", &fitted)?;
    writeln!(out, "validation:")?;
    for v in &fitted.validation {
        let at = fitted
            .polynomial
            .eval(v.point.entries())
            .map_err(PiecewiseError::from)?;
        writeln!(out, "  {}  H = {}  fit = {at}", v.point, v.value)?;
    }
    for s in &fitted.spot_checks {
        let verdict = match s.agreed {
            Some(true) => "oracle agrees",
            Some(false) => "oracle disagrees",
            None => "oracle skipped (budget)",
        };
        writeln!(out, "  {}  {verdict}", s.point)?;
    }
    Ok(())
}

fn write_chamber(out: &mut dyn Write, label: &str, c: &ChamberPolynomial) -> io::Result<()> {
    let degree = c
        .polynomial
        .total_degree()
        .map_or("-".to_string(), |d| d.to_string());
    writeln!(out, "{label}witness:    {}", c.witness.point())?;
    writeln!(out, "{label}signature:  {}", c.witness.signature())?;
    writeln!(
        out,
        "{label}degree:     {degree} (bound {})",
        c.degree_bound
    )?;
    writeln!(out, "{label}canonical:  {}", c.polynomial)?;
    writeln!(out, "{label}display:    {}", c.polynomial.display_form())?;
    writeln!(
        out,
        "{label}nodes:      {} fitted, {} held out",
        c.nodes.len(),
        c.validation.len()
    )
}

#[derive(Debug, Serialize)]
struct ConventionValue {
    convention: ProductConvention,
    label: String,
    #[serde(with = "crate::exact::rational_string")]
    value: ExactRational,
    matches: bool,
}

fn wallcross(a: WallcrossArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let p = profile(&a.profile)?;
    let g = a.profile.g;
    let (wall, complemented) = Wall::new(p.n(), &a.wall)?;
    if complemented {
        let given: Vec<String> = a.wall.iter().map(|i| i.to_string()).collect();
        writeln!(err, "note: wall [{}] normalized to {wall}", given.join(","))?;
    }
    let config = fit_config(a.oversample, a.budget);
    let c1_witness = ChamberWitness::new(p)?;
    let c1 = fit_chamber_with(&c1_witness, g, &config)?;
    let c2_witness = adjacent_chamber(&c1_witness, &wall, a.budget)?;
    let c2 = fit_chamber_with(&c2_witness, g, &config)?;
    let wc = wall_crossing(&c1, &c2, &wall)?;

    let at = c2_witness.point();
    let wc_value = wc
        .polynomial
        .eval(at.entries())
        .map_err(PiecewiseError::from)?;
    let product = if g == 0 {
        let terms = product_formula_terms(&wall, at)?;
        let values: Vec<ConventionValue> = ProductConvention::all()
            .into_iter()
            .map(|c| {
                let value = terms.evaluate(c);
                ConventionValue {
                    convention: c,
                    label: c.to_string(),
                    matches: value == wc_value,
                    value,
                }
            })
            .collect();
        Some((terms, values))
    } else {
        None
    };

    if a.json {
        let product_json = product.as_ref().map(|(terms, values)| {
            json!({
                "point": at,
                "wall_crossing_value": wc_value.to_string(),
                "terms": terms,
                "conventions": values,
                "recorded": ProductConvention::RESOLVED.to_string(),
            })
        });
        return print_json(
            out,
            &json!({
                "first": c1.report(),
                "adjacent_witness": c2_witness,
                "second": c2.report(),
                "wall_crossing": wc.report(),
                "product_formula": product_json,
            }),
        );
    }

    writeln!(
        out,
        "wall:        {wall}  ({} = 0)",
        wall.form().display_form()
    )?;
    write_chamber(out, "c1 ", &c1)?;
    writeln!(out, "adjacent witness found: {}", c2_witness.point())?;
    write_chamber(out, "c2 ", &c2)?;
    writeln!(out, "WC canonical: {}", wc.polynomial)?;
    writeln!(out, "WC display:   {}", wc.polynomial.display_form())?;
    let divisible = if wc.quotient_by_wall_form().is_some() {
        "yes"
    } else {
        "no"
    };
    writeln!(
        out,
        "WC divisible by {}: {divisible}",
        wall.form().display_form()
    )?;
    match &product {
        Some((terms, values)) => {
            writeln!(
                out,
                "product formula at {at}: H0{} = {}, H0{} = {}, delta = {}, WC = {wc_value}",
                terms.block_i,
                terms.h_block_i,
                terms.block_complement,
                terms.h_block_complement,
                terms.delta
            )?;
            for v in values {
                let recorded = if v.convention == ProductConvention::RESOLVED {
                    "  (recorded)"
                } else {
                    ""
                };
                let mark = if v.matches { "match" } else { "-" };
                writeln!(
                    out,
                    "  {:<24} {:>12}  {mark}{recorded}",
                    v.label,
                    v.value.to_string()
                )?;
            }
        }
        None => writeln!(out, "product formula: genus 0 only, skipped")?,
    }
    Ok(())
}

fn selftest(a: SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let config = SelftestConfig {
        r_max: a.r_max,
        normalization: if a.mutate_normalization {
            Normalization::Unlabeled
        } else {
            Normalization::Labeled
        },
    };
    let report = run_selftest(&config);
    if a.json {
        print_json(out, &report)?;
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{status}  {:<28} {} cases", c.name, c.cases)?;
            for f in &c.failures {
                writeln!(out, "      {f}")?;
            }
        }
    }
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    if failed.is_empty() {
        return Ok(());
    }
    let s = serde_json::to_string(&json!({ "failed_checks": failed })).expect("serializes");
    writeln!(err, "{s}")?;
    Err(CliError::SelftestFailed(failed.len()))
}
