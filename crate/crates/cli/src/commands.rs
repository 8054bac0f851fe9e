use std::fmt::Write as _;
use std::fs;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use qonsager::coeffs::{CoeffTable, Pipeline, TableDocument};
use qonsager::qcoeff::LaurentScalar;
use qonsager::repcheck::{
    check_relation_matrix_with, spectral_polynomial_check_with, MatrixCheckOptions, SpectralParams, DEFAULT_MAX_RANK,
};
use qonsager::verify::verify_many;

use crate::args::{Command, Ranks, Source};

const COEFFS_MAX: usize = 40;
const SOLVE_MAX: usize = 8;
const VERIFY_MAX: usize = 8;
const CROSS_MAX: usize = 24;
const SPECTRAL_MAX: usize = 16;

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    /// A computation that should have succeeded did not.
    Failed(String),
}

/// Result of one command in every output format.
pub struct Outcome {
    pub passed: bool,
    pub failures: Vec<String>,
    pub json: Value,
    pub text: String,
    pub csv: String,
}

fn usage<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Usage(msg.into()))
}

fn failed(e: impl ToString) -> RunError {
    RunError::Failed(e.to_string())
}

fn to_json(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn check_rank(r: usize, max: usize, what: &str) -> Result<(), RunError> {
    if r == 0 || r > max {
        return usage(format!("{what}: rank {r} outside 1..={max}"));
    }
    Ok(())
}

fn pipeline_max(p: Pipeline) -> usize {
    if p == Pipeline::Solve {
        SOLVE_MAX
    } else {
        COEFFS_MAX
    }
}

/// Tables for the requested ranks, computed in parallel.
fn tables(ranks: &Ranks, source: &Source, max: usize, what: &str) -> Result<Vec<CoeffTable>, RunError> {
    if let Some(path) = &source.table {
        let text = fs::read_to_string(path).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
        let doc: TableDocument =
            serde_json::from_str(&text).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
        let table = CoeffTable::from_document(&doc)
            .map_err(|e| RunError::Usage(e.to_string()))?
            .with_pipeline(Pipeline::Given);
        check_rank(table.r(), max, what)?;
        if let Some(rs) = ranks.resolve() {
            if rs != [table.r()] {
                return usage(format!("table has rank {}, requested {rs:?}", table.r()));
            }
        }
        return Ok(vec![table]);
    }
    let Some(rs) = ranks.resolve() else {
        return usage(format!("{what}: one of --r or --max-r is required"));
    };
    let pipeline = Pipeline::from(source.pipeline);
    for &r in &rs {
        check_rank(r, max.min(pipeline_max(pipeline)), what)?;
    }
    rs.par_iter().map(|&r| pipeline.compute(r).map_err(failed)).collect()
}

pub fn run(command: &Command, timing: bool) -> Result<Outcome, RunError> {
    match command {
        Command::Coeffs { r, pipeline } => coeffs(*r, (*pipeline).into()),
        Command::Verify { ranks, source, rho_zero } => verify(&tables(ranks, source, VERIFY_MAX, "verify")?, *rho_zero, timing),
        Command::CrossCheck { max_r, solve_max_r } => cross_check(*max_r, *solve_max_r),
        Command::Repcheck { ranks, source, samples, seed, branch } => {
            let opts = MatrixCheckOptions { samples: *samples, seed: *seed, branch: (*branch).into(), max_r: DEFAULT_MAX_RANK };
            if *samples == 0 {
                return usage("repcheck: --samples must be positive");
            }
            repcheck(&tables(ranks, source, DEFAULT_MAX_RANK, "repcheck")?, &opts)
        }
        Command::Spectral { ranks, c } => spectral(ranks, c),
    }
}

fn coeffs(r: usize, pipeline: Pipeline) -> Result<Outcome, RunError> {
    check_rank(r, pipeline_max(pipeline), "coeffs")?;
    let table = pipeline.compute(r).map_err(failed)?;
    let doc = table.to_document();
    let csv = csv_table(
        &["r", "p", "k", "value"],
        doc.entries.iter().map(|e| vec![r.to_string(), e.p.to_string(), e.k.to_string(), e.value.clone()]),
    );
    Ok(Outcome { passed: true, failures: Vec::new(), json: to_json(&doc), text: table.to_string(), csv })
}

fn verify(tables: &[CoeffTable], rho_zero: bool, timing: bool) -> Result<Outcome, RunError> {
    let docs: Vec<_> = verify_many(tables, rho_zero).iter().map(|c| c.to_document(timing)).collect();
    let mut text = String::new();
    let mut failures = Vec::new();
    for d in &docs {
        let status = if d.zero { "zero" } else { "NONZERO" };
        let _ = write!(
            text,
            "r = {}: {} ({}, {}), peak {} terms",
            d.r,
            status,
            d.pipeline,
            if d.rho_zero { "rho = 0" } else { "formal rho" },
            d.peak_terms
        );
        if timing {
            let _ = write!(text, ", {} ms", d.ms);
        }
        text.push('\n');
        if let Some(res) = &d.residual {
            let _ = writeln!(text, "  residual ({} terms): {res}", d.residual_terms);
            failures.push(format!("r = {}: relation does not reduce to zero", d.r));
        }
    }
    let csv = csv_table(
        &["r", "pipeline", "rho_zero", "zero", "residual_terms", "peak_terms", "ms"],
        docs.iter().map(|d| {
            vec![
                d.r.to_string(),
                d.pipeline.to_string(),
                d.rho_zero.to_string(),
                d.zero.to_string(),
                d.residual_terms.to_string(),
                d.peak_terms.to_string(),
                d.ms.to_string(),
            ]
        }),
    );
    Ok(Outcome { passed: failures.is_empty(), failures, json: to_json(&docs), text, csv })
}

#[derive(Serialize)]
struct CrossRow {
    r: usize,
    pipelines: Vec<Pipeline>,
    agree: bool,
    invariants: bool,
    mismatches: Vec<Value>,
    errors: Vec<Value>,
}

fn cross_row(r: usize, solve_max_r: usize) -> CrossRow {
    let pipelines: Vec<Pipeline> =
        Pipeline::ALL.into_iter().filter(|&p| p != Pipeline::Solve || r <= solve_max_r).collect();
    let results: Vec<_> = pipelines.par_iter().map(|p| (*p, p.compute(r))).collect();
    let mut errors = Vec::new();
    let mut ok = Vec::new();
    for (p, res) in results {
        match res {
            Ok(t) => ok.push(t),
            Err(e) => errors.push(json!({"pipeline": p, "message": e.to_string()})),
        }
    }
    let mut mismatches = Vec::new();
    if let Some((first, rest)) = ok.split_first() {
        for t in rest {
            let diff = t.diff(first);
            if !diff.is_empty() {
                mismatches.push(json!({"pipeline": t.pipeline(), "against": first.pipeline(), "entries": diff}));
            }
        }
    }
    let invariants = ok.iter().all(|t| t.check_invariants().is_empty());
    CrossRow { r, pipelines, agree: mismatches.is_empty() && errors.is_empty(), invariants, mismatches, errors }
}

fn cross_check(max_r: usize, solve_max_r: usize) -> Result<Outcome, RunError> {
    check_rank(max_r, CROSS_MAX, "cross-check")?;
    if solve_max_r > SOLVE_MAX {
        return usage(format!("cross-check: --solve-max-r above {SOLVE_MAX}"));
    }
    let rows: Vec<CrossRow> = (1..=max_r).into_par_iter().map(|r| cross_row(r, solve_max_r)).collect();
    let mut text = String::new();
    let mut failures = Vec::new();
    for row in &rows {
        let names: Vec<&str> = row.pipelines.iter().map(|p| p.name()).collect();
        let status = if row.agree { "agree" } else { "DISAGREE" };
        let inv = if row.invariants { "invariants hold" } else { "INVARIANTS FAIL" };
        let _ = writeln!(text, "r = {}: {status} ({}), {inv}", row.r, names.join(", "));
        for m in row.mismatches.iter().chain(&row.errors) {
            let _ = writeln!(text, "  {m}");
        }
        if !row.agree || !row.invariants {
            failures.push(format!("r = {}: pipelines disagree or invariants fail", row.r));
        }
    }
    let csv = csv_table(
        &["r", "pipelines", "agree", "invariants"],
        rows.iter().map(|row| {
            let names: Vec<&str> = row.pipelines.iter().map(|p| p.name()).collect();
            vec![row.r.to_string(), names.join(" "), row.agree.to_string(), row.invariants.to_string()]
        }),
    );
    Ok(Outcome { passed: failures.is_empty(), failures, json: to_json(&rows), text, csv })
}

fn repcheck(tables: &[CoeffTable], opts: &MatrixCheckOptions) -> Result<Outcome, RunError> {
    let reports = tables
        .par_iter()
        .map(|t| check_relation_matrix_with(t.r(), t, opts).map_err(failed))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for rep in &reports {
        let zeros = rep.points.iter().filter(|p| p.zero).count();
        let norm = if rep.normalization_is_one() { "rho = c_0 cbar_0 at every point" } else { "rho differs from c_0 cbar_0" };
        let _ = writeln!(
            text,
            "r = {} ({}, seed {}): {zeros}/{} points give the zero matrix; {norm}",
            rep.r,
            rep.pipeline,
            rep.seed,
            rep.points.len()
        );
        for p in &rep.points {
            if !p.zero {
                let _ = writeln!(text, "  point {}: {:?} rho = {} residual {:?}", p.index, p.params, p.rho, p.residual);
                failures.push(format!("r = {}: nonzero matrix at point {}", rep.r, p.index));
            }
            rows.push(vec![
                rep.r.to_string(),
                p.index.to_string(),
                p.params.s.clone(),
                p.params.z.clone(),
                p.params.c.join(" "),
                p.params.cbar.join(" "),
                p.params.w.join(" "),
                p.rho.clone(),
                p.rho_expected.clone(),
                p.normalization.clone().unwrap_or_default(),
                p.zero.to_string(),
            ]);
        }
    }
    let csv = csv_table(&["r", "index", "s", "z", "c", "cbar", "w", "rho", "rho_expected", "normalization", "zero"], rows);
    Ok(Outcome { passed: failures.is_empty(), failures, json: to_json(&reports), text, csv })
}

fn spectral(ranks: &Ranks, c: &str) -> Result<Outcome, RunError> {
    let Some(rs) = ranks.resolve() else {
        return usage("spectral: one of --r or --max-r is required");
    };
    for &r in &rs {
        check_rank(r, SPECTRAL_MAX, "spectral")?;
    }
    let c = match c.parse::<BigRational>() {
        Ok(x) => LaurentScalar::from_rational(&x),
        Err(_) => c.parse::<LaurentScalar>().map_err(|e| RunError::Usage(format!("--c: {e}")))?,
    };
    if c.is_zero() {
        return usage("--c must be nonzero");
    }
    let params = SpectralParams::new(c);
    let reports: Vec<_> = rs.par_iter().map(|&r| spectral_polynomial_check_with(r, &params)).collect();
    let mut text = String::new();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for rep in &reports {
        let zero: Vec<i64> = rep.offsets.iter().filter(|o| o.k == 0 && o.zero).map(|o| o.offset).collect();
        let status = if rep.passed { "pass" } else { "FAIL" };
        let _ = writeln!(
            text,
            "r = {}: rho = {}, oracle {}, vanishes at offsets {zero:?}: {status}",
            rep.r,
            rep.rho.as_deref().unwrap_or("-"),
            if rep.oracle { "ok" } else { "failed" }
        );
        if !rep.passed {
            failures.push(format!("r = {}: band structure mismatch", rep.r));
        }
        for o in &rep.offsets {
            rows.push(vec![rep.r.to_string(), o.k.to_string(), o.offset.to_string(), o.allowed.to_string(), o.zero.to_string()]);
        }
    }
    let csv = csv_table(&["r", "k", "offset", "allowed", "zero"], rows);
    Ok(Outcome { passed: failures.is_empty(), failures, json: to_json(&reports), text, csv })
}
