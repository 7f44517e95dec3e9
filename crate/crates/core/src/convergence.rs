//! Executable convergence experiments: drive `(p_n, q_n) -> 1`, sweep the
//! degree, and record sup-grid errors and bound values.
//!
//! For constant `p, q < 1` the bracket `[n]` stays bounded and the operator
//! cannot converge, so the default sequence is `p_n = 1 - 1/(2n)`,
//! `q_n = 1 - 1/n`, under which `[n]` grows linearly (roughly
//! `2(e^{-1/2} - e^{-1}) n`) and the second central moment decays like
//! `1/n`. That growth of `[n]` is a necessary condition the sweep asserts
//! explicitly rather than assumes.
//!
//! Errors are measured in the sup norm over a uniform grid of the operator
//! argument `x` in `[0,1]`; test functions themselves live on `[0, l+1]`,
//! which is where the sampling nodes fall.

use std::collections::BTreeMap;

use crate::basis::{OperatorConfig, StancuSchurer};
use crate::bounds::{BoundEvaluator, BoundKind, FunctionProfile, MODULUS_SAFETY_FACTOR};
use crate::error::{Error, Result};
use crate::functions::FunctionHandle;
use crate::numeric::uniform_grid;
use crate::pq::{pq_int, PQPair};
use crate::smoothness::DEFAULT_GRID_POINTS;

/// Sequences `(p_n, q_n)` with `0 < q_n < p_n <= 1` driving both parameters
/// to 1.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    /// `p_n = 1 - c_p/n`, `q_n = 1 - c_q/n` with `0 < c_p < c_q`.
    AffineReciprocal { c_p: f64, c_q: f64 },
    /// `p_n = 1 - n^{-r_p}`, `q_n = 1 - n^{-r_q}` with `0 < r_q < r_p`.
    Power { r_p: f64, r_q: f64 },
    /// Explicit `(n, p_n, q_n)` triples.
    Custom(Vec<(u32, f64, f64)>),
}

impl SequenceSpec {
    /// The default experiment sequence: `c_p = 0.5`, `c_q = 1.0`.
    pub fn default_affine() -> Self {
        SequenceSpec::AffineReciprocal { c_p: 0.5, c_q: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::AffineReciprocal { c_p, c_q } => {
                if !(0.0 < *c_p && c_p < c_q) {
                    return Err(Error::InvalidSequenceSpec {
                        reason: format!("affine_reciprocal requires 0 < c_p < c_q, got c_p={c_p}, c_q={c_q}"),
                    });
                }
            }
            SequenceSpec::Power { r_p, r_q } => {
                if !(0.0 < *r_q && r_q < r_p) {
                    return Err(Error::InvalidSequenceSpec {
                        reason: format!("power requires 0 < r_q < r_p, got r_p={r_p}, r_q={r_q}"),
                    });
                }
            }
            SequenceSpec::Custom(triples) => {
                if triples.is_empty() {
                    return Err(Error::InvalidSequenceSpec {
                        reason: "custom sequence has no entries".to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The pair `(p_n, q_n)`, checked against `0 < q_n < p_n <= 1`.
    pub fn params_at(&self, n: u32) -> Result<PQPair> {
        let (p, q) = match self {
            SequenceSpec::AffineReciprocal { c_p, c_q } => {
                let nf = n as f64;
                (1.0 - c_p / nf, 1.0 - c_q / nf)
            }
            SequenceSpec::Power { r_p, r_q } => {
                let nf = n as f64;
                (1.0 - nf.powf(-r_p), 1.0 - nf.powf(-r_q))
            }
            SequenceSpec::Custom(triples) => triples
                .iter()
                .find(|(m, _, _)| *m == n)
                .map(|(_, p, q)| (*p, *q))
                .ok_or(Error::MissingSequenceEntry { n })?,
        };
        if !(0.0 < q && q < p && p <= 1.0) {
            return Err(Error::InvalidSequenceAt { n, p, q });
        }
        PQPair::new(p, q)
    }
}

/// Operator parameters shared across a sweep: everything but `(n, p, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorTemplate {
    pub l: u32,
    pub alpha: f64,
    pub beta: f64,
}

impl OperatorTemplate {
    pub fn with_n(&self, n: u32, pq: PQPair) -> Result<OperatorConfig> {
        OperatorConfig::new(n, self.l, self.alpha, self.beta, pq)
    }

    pub fn domain_hi(&self) -> f64 {
        (self.l + 1) as f64
    }
}

/// One bound's sup-grid summary for one `(n, function)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub fn_name: String,
    pub kind: BoundKind,
    pub sup_error: f64,
    pub sup_bound: f64,
    pub min_slack: f64,
}

/// Per-`n` record of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    /// `[n]` at `(p_n, q_n)`; its growth is what makes convergence happen.
    pub bracket_n: f64,
    /// Sup-grid errors keyed by test-function name (`e0`, `e1`, `e2`, then
    /// corpus names).
    pub sup_errors: BTreeMap<String, f64>,
    pub bounds: Vec<BoundRow>,
}

/// Output of [`run_korovkin`] / [`run_bound_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub spec: SequenceSpec,
    pub template: OperatorTemplate,
    pub n_values: Vec<u32>,
    pub grid_points: usize,
    pub per_n: Vec<SweepRow>,
}

fn validate_n_values(n_values: &[u32]) -> Result<()> {
    if n_values.is_empty() || n_values.windows(2).any(|w| w[0] >= w[1]) || n_values[0] < 1 {
        return Err(Error::InvalidSweepValues);
    }
    Ok(())
}

fn sup_error_over_grid(
    op: &StancuSchurer,
    grid: &[f64],
    f: impl Fn(f64) -> f64 + Copy,
) -> Result<f64> {
    let mut sup = 0.0f64;
    for &x in grid {
        sup = sup.max((op.apply_fn(f, x)? - f(x)).abs());
    }
    Ok(sup)
}

/// Sweeps the monomials `1, t, t^2` (plus any corpus functions) over the
/// parameter sequence, recording sup-grid errors per `n`.
pub fn run_korovkin(
    spec: &SequenceSpec,
    template: &OperatorTemplate,
    n_values: &[u32],
    grid_points: usize,
    corpus: &[FunctionHandle],
) -> Result<ConvergenceReport> {
    spec.validate()?;
    validate_n_values(n_values)?;
    let grid = uniform_grid(0.0, 1.0, grid_points);

    let mut per_n = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let pq = spec.params_at(n)?;
        let config = template.with_n(n, pq)?;
        let op = StancuSchurer::new(config)?;

        let mut sup_errors = BTreeMap::new();
        for i in 0..=2u32 {
            let sup = sup_error_over_grid(&op, &grid, |t: f64| t.powi(i as i32))?;
            sup_errors.insert(format!("e{i}"), sup);
        }
        for f in corpus {
            let sup = sup_error_over_grid(&op, &grid, |t| f.eval(t))?;
            sup_errors.insert(f.name().to_string(), sup);
        }

        per_n.push(SweepRow {
            n,
            p: pq.p(),
            q: pq.q(),
            bracket_n: pq_int(n as usize, pq),
            sup_errors,
            bounds: Vec::new(),
        });
    }

    Ok(ConvergenceReport {
        spec: spec.clone(),
        template: *template,
        n_values: n_values.to_vec(),
        grid_points,
        per_n,
    })
}

/// Korovkin sweep plus per-function bound evaluation.
///
/// For each `n` and corpus function, every applicable bound is evaluated at
/// every grid point with moduli inflated by [`MODULUS_SAFETY_FACTOR`]
/// (compensating the from-below grid estimates); the row records the
/// sup-grid error, the sup-grid bound, and the minimal pointwise slack.
pub fn run_bound_sweep(
    spec: &SequenceSpec,
    template: &OperatorTemplate,
    n_values: &[u32],
    corpus: &[FunctionHandle],
    grid_points: usize,
    smoothness_constant: f64,
) -> Result<ConvergenceReport> {
    let mut report = run_korovkin(spec, template, n_values, grid_points, corpus)?;
    let grid = uniform_grid(0.0, 1.0, grid_points);

    let profiles: Vec<FunctionProfile> = corpus
        .iter()
        .map(|f| FunctionProfile::new(f, template.domain_hi(), DEFAULT_GRID_POINTS))
        .collect::<Result<_>>()?;

    for row in &mut report.per_n {
        let pq = PQPair::new(row.p, row.q)?;
        let config = template.with_n(row.n, pq)?;
        for profile in &profiles {
            let evaluator = BoundEvaluator::new(&config, profile)?
                .with_modulus_inflation(MODULUS_SAFETY_FACTOR)
                .with_smoothness_constant(smoothness_constant)?;
            for kind in evaluator.applicable_kinds() {
                let mut sup_error = 0.0f64;
                let mut sup_bound = 0.0f64;
                let mut min_slack = f64::INFINITY;
                for &x in &grid {
                    let r = evaluator.evaluate(kind, x)?;
                    sup_error = sup_error.max(r.actual_error);
                    sup_bound = sup_bound.max(r.bound_value);
                    min_slack = min_slack.min(r.slack);
                }
                row.bounds.push(BoundRow {
                    fn_name: profile.handle().name().to_string(),
                    kind,
                    sup_error,
                    sup_bound,
                    min_slack,
                });
            }
        }
    }
    Ok(report)
}

/// Least-squares slope of `log(error)` against `log(n)` for one error
/// column.
///
/// Returns `None` ("not a rate") when fewer than four sweep points have
/// errors above `1e-14` — exactly-reproduced functions do not decay, they
/// sit at rounding level.
pub fn fit_decay_rate(report: &ConvergenceReport, key: &str) -> Option<f64> {
    let points: Vec<(f64, f64)> = report
        .per_n
        .iter()
        .filter_map(|row| {
            let err = *row.sup_errors.get(key)?;
            (err > 1e-14).then(|| ((row.n as f64).ln(), err.ln()))
        })
        .collect();
    if points.len() < 4 {
        return None;
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// The default degree sweep used by the experiments.
pub const DEFAULT_SWEEP: [u32; 5] = [10, 25, 50, 100, 200];

/// Default sup-grid resolution.
pub const DEFAULT_SWEEP_GRID: usize = 201;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::builtin;
    use crate::moments::ss_central_moment_closed;

    fn default_template() -> OperatorTemplate {
        OperatorTemplate {
            l: 1,
            alpha: 0.5,
            beta: 1.0,
        }
    }

    #[test]
    fn sequence_validation() {
        assert!(SequenceSpec::default_affine().validate().is_ok());
        assert!(SequenceSpec::AffineReciprocal { c_p: 1.0, c_q: 0.5 }
            .validate()
            .is_err());
        assert!(SequenceSpec::Power { r_p: 0.5, r_q: 1.0 }.validate().is_err());
        assert!(SequenceSpec::Custom(vec![]).validate().is_err());
    }

    #[test]
    fn default_sequence_approaches_one() {
        let spec = SequenceSpec::default_affine();
        let pq = spec.params_at(200).unwrap();
        assert!(1.0 - pq.p() <= 1e-2);
        assert!(1.0 - pq.q() <= 1e-2);
    }

    #[test]
    fn sequence_invariant_violations_are_reported() {
        // q_1 = 0 under the defaults.
        let spec = SequenceSpec::default_affine();
        assert!(matches!(
            spec.params_at(1),
            Err(Error::InvalidSequenceAt { n: 1, .. })
        ));

        let spec = SequenceSpec::Custom(vec![(10, 0.9, 0.95)]);
        assert!(spec.params_at(10).is_err());
        assert!(matches!(
            spec.params_at(11),
            Err(Error::MissingSequenceEntry { n: 11 })
        ));
    }

    #[test]
    fn power_sequence_is_ordered() {
        let spec = SequenceSpec::Power { r_p: 1.0, r_q: 0.5 };
        for n in [2u32, 10, 100] {
            let pq = spec.params_at(n).unwrap();
            assert!(pq.q() < pq.p());
        }
    }

    #[test]
    fn sweep_values_must_increase() {
        let spec = SequenceSpec::default_affine();
        let t = default_template();
        assert!(matches!(
            run_korovkin(&spec, &t, &[], 65, &[]),
            Err(Error::InvalidSweepValues)
        ));
        assert!(matches!(
            run_korovkin(&spec, &t, &[10, 10], 65, &[]),
            Err(Error::InvalidSweepValues)
        ));
    }

    #[test]
    fn korovkin_reproduces_constants_and_decays() {
        let spec = SequenceSpec::default_affine();
        let report = run_korovkin(&spec, &default_template(), &[10, 25, 50], 101, &[]).unwrap();
        for row in &report.per_n {
            assert!(row.sup_errors["e0"] <= 1e-12, "n={}: {}", row.n, row.sup_errors["e0"]);
        }
        let e2: Vec<f64> = report.per_n.iter().map(|r| r.sup_errors["e2"]).collect();
        assert!(e2[0] > e2[1] && e2[1] > e2[2]);
    }

    #[test]
    fn korovkin_exact_reproduction_of_identity_without_shifts() {
        let spec = SequenceSpec::default_affine();
        let template = OperatorTemplate {
            l: 0,
            alpha: 0.0,
            beta: 0.0,
        };
        let report = run_korovkin(&spec, &template, &[10, 25], 101, &[]).unwrap();
        for row in &report.per_n {
            assert!(row.sup_errors["e1"] <= 1e-13);
        }
    }

    #[test]
    fn second_central_moment_decays_along_default_sweep() {
        let spec = SequenceSpec::default_affine();
        let template = default_template();
        let grid = uniform_grid(0.0, 1.0, 101);
        let mut prev = f64::INFINITY;
        for n in DEFAULT_SWEEP {
            let pq = spec.params_at(n).unwrap();
            let config = template.with_n(n, pq).unwrap();
            let max_m2 = grid
                .iter()
                .map(|&x| ss_central_moment_closed(2, &config, x).unwrap())
                .fold(0.0f64, f64::max);
            assert!(max_m2 < prev, "n={n}: {max_m2} !< {prev}");
            prev = max_m2;
        }
        assert!(prev <= 1e-2, "largest n leaves {prev}");
    }

    #[test]
    fn bracket_grows_along_default_sweep() {
        let spec = SequenceSpec::default_affine();
        let at = |n: u32| pq_int(n as usize, spec.params_at(n).unwrap());
        assert!(at(200) / at(10) >= 5.0);
    }

    #[test]
    fn bound_sweep_rows_cover_applicable_kinds() {
        let spec = SequenceSpec::default_affine();
        let corpus = vec![builtin("sin_pi").unwrap(), builtin("sqrt").unwrap()];
        let report =
            run_bound_sweep(&spec, &default_template(), &[10, 25], &corpus, 41, 4.0).unwrap();
        let row = &report.per_n[0];
        // sin_pi: deriv + lip -> all four kinds; sqrt: lip only -> three.
        let kinds_for = |name: &str| {
            row.bounds
                .iter()
                .filter(|b| b.fn_name == name)
                .map(|b| b.kind)
                .collect::<Vec<_>>()
        };
        assert_eq!(kinds_for("sin_pi"), BoundKind::ALL.to_vec());
        assert_eq!(
            kinds_for("sqrt"),
            vec![BoundKind::Thm32, BoundKind::Thm41, BoundKind::Thm43]
        );
        // Monomial rows are always present.
        assert!(row.sup_errors.contains_key("e0"));
    }

    #[test]
    fn bound_sweep_thm32_and_thm43_slack_nonnegative() {
        let spec = SequenceSpec::default_affine();
        let corpus = vec![builtin("sin_pi").unwrap(), builtin("sqrt").unwrap()];
        let report =
            run_bound_sweep(&spec, &default_template(), &[10, 50], &corpus, 41, 4.0).unwrap();
        for row in &report.per_n {
            for b in &row.bounds {
                if matches!(b.kind, BoundKind::Thm32 | BoundKind::Thm43) {
                    // thm43 for sqrt is an exact equality at x = 0, so only
                    // rounding-level negative slack is admissible.
                    assert!(b.min_slack >= -1e-12, "n={} {} {}: {}", row.n, b.fn_name, b.kind, b.min_slack);
                }
            }
        }
    }

    #[test]
    fn monomial_errors_dominated_by_first_modulus_bound() {
        // The t and t^2 sup-error columns sit below the first-modulus bound
        // at every grid point.
        let spec = SequenceSpec::default_affine();
        let corpus = vec![builtin("linear").unwrap(), builtin("square").unwrap()];
        let report =
            run_bound_sweep(&spec, &default_template(), &[10, 50, 200], &corpus, 41, 4.0).unwrap();
        for row in &report.per_n {
            for b in row.bounds.iter().filter(|b| b.kind == BoundKind::Thm32) {
                assert!(
                    b.min_slack >= 0.0,
                    "n={} {}: min slack {}",
                    row.n,
                    b.fn_name,
                    b.min_slack
                );
                assert!(b.sup_bound >= row.sup_errors[b.fn_name.as_str()]);
            }
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let spec = SequenceSpec::default_affine();
        let corpus = vec![builtin("exp_neg").unwrap()];
        let a = run_bound_sweep(&spec, &default_template(), &[10, 25], &corpus, 21, 4.0).unwrap();
        let b = run_bound_sweep(&spec, &default_template(), &[10, 25], &corpus, 21, 4.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn decay_rate_detects_power_law_and_degenerate_columns() {
        let spec = SequenceSpec::default_affine();
        let template = default_template();
        let mut report = run_korovkin(&spec, &template, &[10, 20, 40, 80, 160], 41, &[]).unwrap();

        // Synthetic exact power law c/n.
        for row in &mut report.per_n {
            row.sup_errors
                .insert("synthetic".to_string(), 3.0 / row.n as f64);
            row.sup_errors.insert("flat".to_string(), 1e-16);
        }
        let slope = fit_decay_rate(&report, "synthetic").unwrap();
        assert!((slope + 1.0).abs() <= 1e-6, "slope={slope}");
        assert_eq!(fit_decay_rate(&report, "flat"), None);
        assert_eq!(fit_decay_rate(&report, "absent"), None);

        // e0 is reproduced exactly: not a rate.
        assert_eq!(fit_decay_rate(&report, "e0"), None);
    }
}
