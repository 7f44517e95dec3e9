//! Deterministic number formatting and CSV assembly.
//!
//! All output uses `.` as the decimal separator, `\n` line endings, and no
//! grouping separators; identical inputs produce identical bytes.

use pqss::moments::MomentSet;
use pqss::{BoundKind, ConvergenceReport};

/// Shortest round-trip decimal form, capped at `precision` fractional
/// digits (trailing zeros trimmed after capping).
pub fn fmt_num(value: f64, precision: usize) -> String {
    if !value.is_finite() {
        return format!("{value}");
    }
    let shortest = format!("{value}");
    match shortest.find('.') {
        Some(dot) if shortest.len() - dot - 1 > precision => {
            let capped = format!("{value:.precision$}");
            let trimmed = capped.trim_end_matches('0').trim_end_matches('.');
            if trimmed.is_empty() || trimmed == "-" || trimmed == "-0" {
                "0".to_string()
            } else {
                trimmed.to_string()
            }
        }
        _ => shortest,
    }
}

/// `n,p_n,q_n,bracket_n,err_e0,err_e1,err_e2[,err_<fn>...]`.
pub fn korovkin_csv(report: &ConvergenceReport, corpus_names: &[String], precision: usize) -> String {
    let mut out = String::from("n,p_n,q_n,bracket_n,err_e0,err_e1,err_e2");
    for name in corpus_names {
        out.push_str(",err_");
        out.push_str(name);
    }
    out.push('\n');
    for row in &report.per_n {
        out.push_str(&row.n.to_string());
        for value in [row.p, row.q, row.bracket_n] {
            out.push(',');
            out.push_str(&fmt_num(value, precision));
        }
        for key in ["e0", "e1", "e2"] {
            out.push(',');
            out.push_str(&fmt_num(row.sup_errors[key], precision));
        }
        for name in corpus_names {
            out.push(',');
            out.push_str(&fmt_num(row.sup_errors[name.as_str()], precision));
        }
        out.push('\n');
    }
    out
}

/// `n,fn,bound_kind,sup_error,sup_bound,min_slack`.
pub fn bounds_csv(report: &ConvergenceReport, precision: usize) -> String {
    let mut out = String::from("n,fn,bound_kind,sup_error,sup_bound,min_slack\n");
    for row in &report.per_n {
        for bound in &row.bounds {
            out.push_str(&row.n.to_string());
            out.push(',');
            out.push_str(&bound.fn_name);
            out.push(',');
            out.push_str(bound.kind.as_str());
            for value in [bound.sup_error, bound.sup_bound, bound.min_slack] {
                out.push(',');
                out.push_str(&fmt_num(value, precision));
            }
            out.push('\n');
        }
    }
    out
}

/// `x,raw0..raw2,central0..central2` plus oracle and difference columns.
pub fn moments_csv(
    rows: &[(f64, MomentSet, Option<MomentSet>)],
    with_oracle: bool,
    precision: usize,
) -> String {
    let mut out = String::from("x,raw0,raw1,raw2,central0,central1,central2");
    if with_oracle {
        out.push_str(
            ",oracle_raw0,oracle_raw1,oracle_raw2,oracle_central0,oracle_central1,oracle_central2,max_diff",
        );
    }
    out.push('\n');
    for (x, closed, oracle) in rows {
        out.push_str(&fmt_num(*x, precision));
        for value in closed.raw.iter().chain(closed.central.iter()) {
            out.push(',');
            out.push_str(&fmt_num(*value, precision));
        }
        if let Some(oracle) = oracle {
            let mut max_diff = 0.0f64;
            for (a, b) in closed
                .raw
                .iter()
                .chain(closed.central.iter())
                .zip(oracle.raw.iter().chain(oracle.central.iter()))
            {
                max_diff = max_diff.max((a - b).abs());
            }
            for value in oracle.raw.iter().chain(oracle.central.iter()) {
                out.push(',');
                out.push_str(&fmt_num(*value, precision));
            }
            out.push(',');
            out.push_str(&fmt_num(max_diff, precision));
        }
        out.push('\n');
    }
    out
}

/// Series for the log-log convergence plot: every error column whose values
/// are all strictly positive at plottable scale.
pub fn korovkin_svg_series(
    report: &ConvergenceReport,
    corpus_names: &[String],
) -> Vec<(String, Vec<(f64, f64)>)> {
    let mut keys: Vec<String> = vec!["e1".into(), "e2".into()];
    keys.extend(corpus_names.iter().cloned());
    let mut series = Vec::new();
    for key in keys {
        let points: Vec<(f64, f64)> = report
            .per_n
            .iter()
            .filter_map(|row| {
                let err = *row.sup_errors.get(key.as_str())?;
                (err > 1e-15).then_some((row.n as f64, err))
            })
            .collect();
        if points.len() == report.per_n.len() {
            series.push((format!("err_{key}"), points));
        }
    }
    series
}

/// Series for the bound plot: per corpus function, the sup error and the
/// first-modulus bound.
pub fn bounds_svg_series(report: &ConvergenceReport) -> Vec<(String, Vec<(f64, f64)>)> {
    let mut names: Vec<String> = Vec::new();
    for row in &report.per_n {
        for b in &row.bounds {
            if !names.contains(&b.fn_name) {
                names.push(b.fn_name.clone());
            }
        }
    }
    let mut series = Vec::new();
    for name in names {
        let mut err_points = Vec::new();
        let mut bound_points = Vec::new();
        for row in &report.per_n {
            if let Some(b) = row
                .bounds
                .iter()
                .find(|b| b.fn_name == name && b.kind == BoundKind::Thm32)
            {
                if b.sup_error > 1e-15 {
                    err_points.push((row.n as f64, b.sup_error));
                }
                if b.sup_bound > 1e-15 {
                    bound_points.push((row.n as f64, b.sup_bound));
                }
            }
        }
        if err_points.len() == report.per_n.len() {
            series.push((format!("err_{name}"), err_points));
        }
        if bound_points.len() == report.per_n.len() {
            series.push((format!("thm32_{name}"), bound_points));
        }
    }
    series
}
