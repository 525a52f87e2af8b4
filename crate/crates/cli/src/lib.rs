//! `winsor` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 argument error,
//! 3 domain or infeasibility error, 4 I/O error.

pub mod args;
pub mod format;

use std::io::Write;

use serde_json::{json, Map, Value};
use thiserror::Error;
use winsor_core::oracle::problem::{augment_grid, default_grid};
use winsor_core::tolerance::{close_rel, CLOSED_FORM_REL, SUMMATION_ABS};
use winsor_core::{
    dlp_bounds, p_star, scarf_min, standardize, threshold_strike, verify_dlp, verify_scarf,
    verify_scarf_on_grid, BoundsError, Branch, MomentSpec, Strike, VerificationReport,
};

pub use args::{Cli, Command, Format};
use args::{MomentArgs, OutputArgs, PointArgs, SweepArgs, VerifyArgs};
use format::{csv_num, csv_opt, flat_csv, num, opt_num, to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Exact CSV header written by `sweep`.
pub const SWEEP_HEADER: &str = "c,scarf_min,lo_max,branch,p_opt,dlp_upper_at_pstar";

/// Number of tail probabilities checked for sharpness by `verify`.
pub const VERIFY_P0_GRID: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Domain { kind: &'static str, message: String },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain { .. } => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn domain(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain {
            kind,
            message: message.into(),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        let kind = match e {
            BoundsError::OutOfRange { .. } => "out_of_range",
            BoundsError::InvalidSpec(_) => "invalid_spec",
            BoundsError::Degenerate(_) => "degenerate",
            BoundsError::InvalidDistribution(_) => "invalid_distribution",
            BoundsError::InvalidProblem(_) => "invalid_problem",
            BoundsError::Infeasible => "infeasible",
            BoundsError::IllConditioned { .. } => "ill_conditioned",
        };
        CliError::domain(kind, e.to_string())
    }
}

/// A rendered document and the exit code to report after writing it.
struct Emitted {
    body: String,
    code: i32,
}

/// Runs one command, writing its document to `--out` or `stdout`, and
/// returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut impl Write) -> i32 {
    let (result, output) = match &cli.command {
        Command::Bounds(a) => (run_bounds(a), &a.output),
        Command::Extremal(a) => (run_extremal(a), &a.output),
        Command::Verify(a) => (run_verify(a), &a.output),
        Command::Sweep(a) => (run_sweep(a), &a.output),
    };
    let outcome = result.and_then(|e| write_output(output, &e.body, stdout).map(|_| e.code));
    match outcome {
        Ok(code) => code,
        Err(err) => {
            report_error(&err, stdout);
            err.exit_code()
        }
    }
}

fn report_error(err: &CliError, stdout: &mut impl Write) {
    match err {
        CliError::Usage(msg) => eprintln!("error: {msg}"),
        CliError::Domain { kind, message } => {
            let _ = stdout
                .write_all(to_json(obj(json!({ "error": message, "kind": kind }))).as_bytes());
        }
        CliError::Io(msg) => {
            eprintln!("error: {msg}");
            let _ =
                stdout.write_all(to_json(obj(json!({ "error": msg, "kind": "io" }))).as_bytes());
        }
    }
}

fn write_output(out: &OutputArgs, body: &str, stdout: &mut impl Write) -> Result<(), CliError> {
    match &out.output_path {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

// Argument validation: everything here exits 2 before any computation.

fn moment_spec(m: &MomentArgs) -> Result<MomentSpec, CliError> {
    if !m.mean.is_finite() {
        return Err(CliError::Usage(format!(
            "--mean must be finite, got {}",
            m.mean
        )));
    }
    if !(m.std_dev.is_finite() && m.std_dev > 0.0) {
        return Err(CliError::Usage(format!(
            "--std must be positive, got {}",
            m.std_dev
        )));
    }
    Ok(MomentSpec::new(m.mean, m.std_dev).expect("validated above"))
}

fn strike(c: f64, flag: &str) -> Result<Strike, CliError> {
    Strike::new(c).map_err(|_| CliError::Usage(format!("{flag} must be finite, got {c}")))
}

fn tail_prob(p: Option<f64>) -> Result<Option<f64>, CliError> {
    match p {
        Some(p) if !(0.0..=1.0).contains(&p) => Err(CliError::Usage(format!(
            "--tail-prob must lie in [0, 1], got {p}"
        ))),
        p => Ok(p),
    }
}

// Domain checks: exit 3.

fn require_positive_mean(spec: MomentSpec) -> Result<(), CliError> {
    if spec.mean() > 0.0 {
        Ok(())
    } else {
        Err(CliError::domain("invalid_spec", "mean must be positive"))
    }
}

fn require_positive_strike(c: Strike) -> Result<(), CliError> {
    if c.value() > 0.0 {
        Ok(())
    } else {
        Err(CliError::domain(
            "degenerate",
            "degenerate strike: strike must be positive",
        ))
    }
}

fn render(doc: Map<String, Value>, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => flat_csv(&doc),
    }
}

fn echo_inputs(spec: MomentSpec, c: Strike) -> Map<String, Value> {
    obj(json!({ "mean": spec.mean(), "std_dev": spec.std_dev(), "strike": c.value() }))
}

fn run_bounds(a: &PointArgs) -> Result<Emitted, CliError> {
    let spec = moment_spec(&a.moments)?;
    let c = strike(a.strike, "--strike")?;
    let p0 = tail_prob(a.tail_prob)?;
    require_positive_mean(spec)?;
    require_positive_strike(c)?;

    let sol = scarf_min(spec, c)?;
    let mut doc = echo_inputs(spec, c);
    if let Some(p0) = p0 {
        doc.insert("tail_prob".into(), json!(p0));
    }
    doc.insert("scarf_min".into(), num(sol.min_winsorized));
    doc.insert("lo_max".into(), num(sol.max_call));
    doc.insert("branch".into(), json!(sol.branch.as_str()));
    doc.insert("p_opt".into(), opt_num(sol.p_opt));
    doc.insert("threshold_strike".into(), num(threshold_strike(spec)));
    if let Some(p0) = p0 {
        let b = dlp_bounds(spec, c, p0)?;
        doc.insert("dlp_lower".into(), num(b.lower));
        doc.insert("dlp_upper".into(), num(b.upper));
    }
    Ok(Emitted {
        body: render(doc, a.output.format.unwrap_or(Format::Json)),
        code: EXIT_OK,
    })
}

fn run_extremal(a: &PointArgs) -> Result<Emitted, CliError> {
    let spec = moment_spec(&a.moments)?;
    let c = strike(a.strike, "--strike")?;
    tail_prob(a.tail_prob)?;
    require_positive_mean(spec)?;
    require_positive_strike(c)?;

    let sol = scarf_min(spec, c)?;
    let e = sol
        .extremal
        .expect("positive strike yields an extremal distribution");
    let reproduced = e.winsorized_expectation(c.value());
    if !close_rel(
        reproduced,
        sol.min_winsorized,
        CLOSED_FORM_REL,
        spec.scale(c),
    ) {
        return Err(CliError::domain(
            "internal",
            format!(
                "extremal distribution gives E(X∧c) = {reproduced}, expected {}",
                sol.min_winsorized
            ),
        ));
    }
    let mut doc = echo_inputs(spec, c);
    doc.insert("low".into(), num(e.low()));
    doc.insert("high".into(), num(e.high()));
    doc.insert("p_low".into(), num(e.p_low()));
    doc.insert("branch".into(), json!(sol.branch.as_str()));
    doc.insert("scarf_min".into(), num(sol.min_winsorized));
    Ok(Emitted {
        body: render(doc, a.output.format.unwrap_or(Format::Json)),
        code: EXIT_OK,
    })
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "closed_form": num(r.closed_form),
        "oracle_value": num(r.oracle_value),
        "gap": num(r.gap),
        "random_trials": r.random_trials,
        "worst_violation": num(r.worst_violation),
        "oracle_support": r.oracle_distribution.support().iter().map(|x| num(*x)).collect::<Vec<_>>(),
        "oracle_probs": r.oracle_distribution.probs().iter().map(|x| num(*x)).collect::<Vec<_>>(),
    })
}

fn run_verify(a: &VerifyArgs) -> Result<Emitted, CliError> {
    let spec = moment_spec(&a.moments)?;
    let c = strike(a.strike, "--strike")?;
    if a.grid_points < 3 {
        return Err(CliError::Usage(format!(
            "--grid-points must be at least 3, got {}",
            a.grid_points
        )));
    }
    require_positive_mean(spec)?;
    require_positive_strike(c)?;

    let scarf = if a.no_augment {
        let grid = augment_grid(&default_grid(spec, Some(0.0), a.grid_points), &[c.value()]);
        verify_scarf_on_grid(spec, c, grid, a.trials, a.seed)?
    } else {
        verify_scarf(spec, c, a.grid_points, a.trials, a.seed)?
    };
    let dlp = verify_dlp(spec, c, VERIFY_P0_GRID, a.trials, a.seed)?;
    let passed = scarf.passes(SUMMATION_ABS) && dlp.passes(SUMMATION_ABS);

    let format = a.output.format.unwrap_or(Format::Json);
    let body = match format {
        Format::Json => {
            let mut doc = echo_inputs(spec, c);
            doc.insert("grid_points".into(), json!(a.grid_points));
            doc.insert("trials".into(), json!(a.trials));
            doc.insert("seed".into(), json!(a.seed));
            doc.insert("augmented".into(), json!(!a.no_augment));
            doc.insert("passed".into(), json!(passed));
            doc.insert("scarf".into(), report_json(&scarf));
            doc.insert("dlp".into(), report_json(&dlp));
            to_json(doc)
        }
        Format::Csv => {
            let mut s =
                String::from("report,closed_form,oracle_value,gap,random_trials,worst_violation\n");
            for (name, r) in [("scarf", &scarf), ("dlp", &dlp)] {
                s.push_str(&format!(
                    "{name},{},{},{},{},{}\n",
                    csv_num(r.closed_form),
                    csv_num(r.oracle_value),
                    csv_num(r.gap),
                    r.random_trials,
                    csv_num(r.worst_violation)
                ));
            }
            s
        }
    };
    Ok(Emitted {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

/// One row of the strike sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub c: f64,
    pub scarf_min: f64,
    pub lo_max: f64,
    /// `LowStrike`, `HighStrike`, `Degenerate`, or `Threshold` for the row at
    /// `(m² + σ²)/(2m)`.
    pub branch: String,
    pub p_opt: Option<f64>,
    /// Tail-probability call bound at `P(X > c) = 1 − p*`, the largest
    /// `E(X − c)⁺` over the sphere without the support constraint.
    pub dlp_upper_at_pstar: f64,
}

fn sweep_row(spec: MomentSpec, c: f64, at_threshold: bool) -> Result<SweepRow, CliError> {
    let k = Strike::new(c)?;
    let sol = scarf_min(spec, k)?;
    let p0 = 1.0 - p_star(standardize(k, spec).strike_std);
    let branch = if at_threshold && sol.branch != Branch::Degenerate {
        "Threshold".to_string()
    } else {
        sol.branch.to_string()
    };
    Ok(SweepRow {
        c,
        scarf_min: sol.min_winsorized,
        lo_max: sol.max_call,
        branch,
        p_opt: sol.p_opt,
        dlp_upper_at_pstar: dlp_bounds(spec, k, p0)?.upper,
    })
}

/// Rows for `steps` evenly spaced strikes from `lo` to `hi`. The branch
/// threshold gets its own row when it falls strictly inside the range, unless
/// a grid strike already sits on it, in which case that row is flagged.
pub fn sweep_rows(
    spec: MomentSpec,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Result<Vec<SweepRow>, CliError> {
    let t = threshold_strike(spec);
    let strikes: Vec<f64> = (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let inside = t > lo && t < hi;
    let tol = 1e-9 * t.abs().max(1.0);
    let on_grid = strikes.iter().position(|c| (c - t).abs() <= tol);

    let mut rows = Vec::with_capacity(steps + 1);
    for (i, &c) in strikes.iter().enumerate() {
        rows.push(sweep_row(spec, c, inside && on_grid == Some(i))?);
    }
    if inside && on_grid.is_none() {
        let at = rows.partition_point(|r| r.c < t);
        rows.insert(at, sweep_row(spec, t, true)?);
    }
    Ok(rows)
}

fn run_sweep(a: &SweepArgs) -> Result<Emitted, CliError> {
    let spec = moment_spec(&a.moments)?;
    strike(a.strike_min, "--strike-min")?;
    strike(a.strike_max, "--strike-max")?;
    if a.strike_min >= a.strike_max {
        return Err(CliError::Usage(format!(
            "--strike-min ({}) must be below --strike-max ({})",
            a.strike_min, a.strike_max
        )));
    }
    if a.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {}",
            a.steps
        )));
    }
    require_positive_mean(spec)?;

    let rows = sweep_rows(spec, a.strike_min, a.strike_max, a.steps)?;
    let body = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from(SWEEP_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    csv_num(r.c),
                    csv_num(r.scarf_min),
                    csv_num(r.lo_max),
                    r.branch,
                    csv_opt(r.p_opt),
                    csv_num(r.dlp_upper_at_pstar)
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "c": num(r.c),
                        "scarf_min": num(r.scarf_min),
                        "lo_max": num(r.lo_max),
                        "branch": r.branch,
                        "p_opt": opt_num(r.p_opt),
                        "dlp_upper_at_pstar": num(r.dlp_upper_at_pstar),
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    Ok(Emitted {
        body,
        code: EXIT_OK,
    })
}
