//! Grid estimators for moduli of continuity and Lipschitz constants.
//!
//! All searches run over a uniform sample of the domain and therefore
//! approximate the true suprema *from below*; callers asserting
//! "bound >= error" against these estimates should inflate them (see
//! [`crate::bounds::MODULUS_SAFETY_FACTOR`]).
//!
//! The first modulus `w(f; delta) = sup { |f(t)-f(s)| : |t-s| <= delta }` is
//! the maximal oscillation over any subinterval of length `delta`, computed
//! with sliding-window extrema in linear time. The second modulus
//!
//! ```text
//! w2(f; hmax) = sup_{0 < h <= hmax} sup_x |f(x+2h) - 2 f(x+h) + f(x)|
//! ```
//!
//! searches every grid-aligned offset `h = k * step <= hmax` (so `x + h` and
//! `x + 2h` land on true samples, and the small offsets where kinks
//! concentrate second-difference mass are always covered); the per-offset
//! suprema and their running maxima are cached on first use, so a sweep of
//! queries against one sample set costs `O(1)` each.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::functions::FunctionHandle;

/// Default resolution of the sup searches.
pub const DEFAULT_GRID_POINTS: usize = 2048;

/// Minimum admissible resolution.
pub const MIN_GRID_POINTS: usize = 64;

/// A first-modulus query: argument `delta` and the search domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusQuery {
    pub delta: f64,
    pub domain_lo: f64,
    pub domain_hi: f64,
    pub grid_points: usize,
}

impl ModulusQuery {
    pub fn new(delta: f64, domain_lo: f64, domain_hi: f64, grid_points: usize) -> Result<Self> {
        if !(domain_lo.is_finite() && domain_hi.is_finite() && domain_lo < domain_hi) {
            return Err(Error::InvalidModulusDomain {
                lo: domain_lo,
                hi: domain_hi,
            });
        }
        let width = domain_hi - domain_lo;
        if !(delta > 0.0 && delta <= width) {
            return Err(Error::InvalidModulusDelta { delta, width });
        }
        if grid_points < MIN_GRID_POINTS {
            return Err(Error::GridTooCoarse {
                got: grid_points,
                min: MIN_GRID_POINTS,
            });
        }
        Ok(Self {
            delta,
            domain_lo,
            domain_hi,
            grid_points,
        })
    }
}

/// Uniform samples of a function over `[lo, hi]`, the substrate for every
/// modulus search. Building one costs `grid_points` evaluations; queries
/// afterwards touch only the cached values.
#[derive(Debug)]
pub struct FunctionSamples {
    lo: f64,
    step: f64,
    values: Vec<f64>,
    /// `[k] -> (sup_i |d2(i,k)|, max over k' <= k of that sup)`.
    second_diffs: OnceLock<Vec<(f64, f64)>>,
}

impl FunctionSamples {
    pub fn new(f: &FunctionHandle, lo: f64, hi: f64, grid_points: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidModulusDomain { lo, hi });
        }
        if grid_points < 2 {
            return Err(Error::GridTooCoarse {
                got: grid_points,
                min: 2,
            });
        }
        let step = (hi - lo) / (grid_points - 1) as f64;
        let values = (0..grid_points)
            .map(|i| f.eval(lo + step * i as f64))
            .collect();
        Ok(Self {
            lo,
            step,
            values,
            second_diffs: OnceLock::new(),
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    fn width_to_steps(&self, width: f64) -> usize {
        if width <= 0.0 {
            return 0;
        }
        let raw = width / self.step + 1e-9;
        if raw >= (self.values.len() - 1) as f64 {
            self.values.len() - 1
        } else {
            raw as usize
        }
    }

    /// `w(f; delta)` from below: the largest `max - min` over any window of
    /// `floor(delta/step)` grid steps.
    pub fn oscillation(&self, delta: f64) -> f64 {
        let w = self.width_to_steps(delta);
        if w == 0 {
            return 0.0;
        }
        let mut maxq: VecDeque<usize> = VecDeque::new();
        let mut minq: VecDeque<usize> = VecDeque::new();
        let mut best = 0.0f64;
        for j in 0..self.values.len() {
            while maxq.back().is_some_and(|&b| self.values[b] <= self.values[j]) {
                maxq.pop_back();
            }
            maxq.push_back(j);
            while minq.back().is_some_and(|&b| self.values[b] >= self.values[j]) {
                minq.pop_back();
            }
            minq.push_back(j);
            let start = j.saturating_sub(w);
            while maxq.front().is_some_and(|&f| f < start) {
                maxq.pop_front();
            }
            while minq.front().is_some_and(|&f| f < start) {
                minq.pop_front();
            }
            best = best.max(self.values[maxq[0]] - self.values[minq[0]]);
        }
        best
    }

    fn second_diff_table(&self) -> &[(f64, f64)] {
        self.second_diffs.get_or_init(|| {
            let n = self.values.len();
            let kmax = (n - 1) / 2;
            let mut table = Vec::with_capacity(kmax + 1);
            table.push((0.0, 0.0));
            let mut running = 0.0f64;
            for k in 1..=kmax {
                let mut sup = 0.0f64;
                for i in 0..(n - 2 * k) {
                    let d = (self.values[i + 2 * k] - 2.0 * self.values[i + k] + self.values[i])
                        .abs();
                    sup = sup.max(d);
                }
                running = running.max(sup);
                table.push((sup, running));
            }
            table
        })
    }

    /// Second-difference supremum at one offset `h` (snapped down to a whole
    /// number of grid steps).
    pub fn second_difference_sup(&self, h: f64) -> f64 {
        let table = self.second_diff_table();
        let k = self.width_to_steps(h).min(table.len() - 1);
        table[k].0
    }

    /// `w2(f; hmax)` from below: the largest second-difference supremum over
    /// every grid-aligned offset `0 < k * step <= hmax`.
    pub fn omega2(&self, hmax: f64) -> f64 {
        if hmax <= 0.0 {
            return 0.0;
        }
        let table = self.second_diff_table();
        let k = self.width_to_steps(hmax).min(table.len() - 1);
        table[k].1
    }
}

/// First modulus of continuity `w(f; delta)`, estimated from below on a
/// uniform grid.
pub fn modulus_first(f: &FunctionHandle, query: &ModulusQuery) -> Result<f64> {
    let samples = FunctionSamples::new(f, query.domain_lo, query.domain_hi, query.grid_points)?;
    Ok(samples.oscillation(query.delta))
}

/// Second modulus of continuity `w2(f; hmax)`, estimated from below.
pub fn modulus_second(
    f: &FunctionHandle,
    hmax: f64,
    domain_lo: f64,
    domain_hi: f64,
    grid_points: usize,
) -> Result<f64> {
    if !(hmax > 0.0 && hmax.is_finite()) {
        return Err(Error::InvalidModulusDelta {
            delta: hmax,
            width: domain_hi - domain_lo,
        });
    }
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::GridTooCoarse {
            got: grid_points,
            min: MIN_GRID_POINTS,
        });
    }
    let samples = FunctionSamples::new(f, domain_lo, domain_hi, grid_points)?;
    Ok(samples.omega2(hmax))
}

/// First modulus of the declared derivative: `w1(f'; delta)`.
pub fn modulus_derivative(f: &FunctionHandle, query: &ModulusQuery) -> Result<f64> {
    let deriv = f.derivative()?;
    modulus_first(&deriv, query)
}

/// Largest grid-pair quotient `|f(t)-f(s)| / |t-s|^a`: a lower estimate of
/// the Lipschitz constant of `f` in the class with exponent `a`.
pub fn lipschitz_estimate(
    f: &FunctionHandle,
    exponent: f64,
    domain_lo: f64,
    domain_hi: f64,
    grid_points: usize,
) -> Result<f64> {
    if !(exponent > 0.0 && exponent <= 1.0) {
        return Err(Error::InvalidLipschitzExponent { a: exponent });
    }
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::GridTooCoarse {
            got: grid_points,
            min: MIN_GRID_POINTS,
        });
    }
    let samples = FunctionSamples::new(f, domain_lo, domain_hi, grid_points)?;
    let n = samples.len();
    let mut best = 0.0f64;
    for gap in 1..n {
        let scale = (gap as f64 * samples.step).powf(-exponent);
        let mut largest = 0.0f64;
        for i in 0..(n - gap) {
            largest = largest.max((samples.values[i + gap] - samples.values[i]).abs());
        }
        best = best.max(largest * scale);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::builtin;
    use approx::assert_relative_eq;

    #[test]
    fn query_validation() {
        assert!(ModulusQuery::new(0.1, 0.0, 1.0, 256).is_ok());
        assert!(matches!(
            ModulusQuery::new(0.0, 0.0, 1.0, 256),
            Err(Error::InvalidModulusDelta { .. })
        ));
        assert!(ModulusQuery::new(1.5, 0.0, 1.0, 256).is_err());
        assert!(matches!(
            ModulusQuery::new(0.1, 1.0, 0.0, 256),
            Err(Error::InvalidModulusDomain { .. })
        ));
        assert!(matches!(
            ModulusQuery::new(0.1, 0.0, 1.0, 32),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn constant_has_zero_modulus() {
        let f = builtin("const1").unwrap();
        let q = ModulusQuery::new(0.3, 0.0, 2.0, 512).unwrap();
        assert_eq!(modulus_first(&f, &q).unwrap(), 0.0);
    }

    #[test]
    fn linear_modulus_equals_delta() {
        // 2049 points on [0,1]: 0.25 is exactly 512 grid steps.
        let f = builtin("linear").unwrap();
        let q = ModulusQuery::new(0.25, 0.0, 1.0, 2049).unwrap();
        assert_relative_eq!(modulus_first(&f, &q).unwrap(), 0.25, max_relative = 1e-12);
    }

    #[test]
    fn sine_modulus_close_to_dense_grid_oracle() {
        let f = builtin("sin_pi").unwrap();
        let coarse = ModulusQuery::new(0.1, 0.0, 2.0, DEFAULT_GRID_POINTS).unwrap();
        let dense = ModulusQuery::new(0.1, 0.0, 2.0, DEFAULT_GRID_POINTS * 10).unwrap();
        let lo = modulus_first(&f, &coarse).unwrap();
        let hi = modulus_first(&f, &dense).unwrap();
        assert!(lo <= hi);
        assert!((hi - lo) / hi <= 0.02, "lo={lo} hi={hi}");
    }

    #[test]
    fn affine_second_modulus_vanishes() {
        let f = builtin("linear").unwrap();
        assert!(modulus_second(&f, 0.2, 0.0, 1.0, 512).unwrap() <= 1e-12);
    }

    #[test]
    fn square_second_modulus_is_two_h_squared() {
        // 1001 points on [0,1]: h = 0.1 is exactly 100 steps.
        let f = builtin("square").unwrap();
        let w2 = modulus_second(&f, 0.1, 0.0, 1.0, 1001).unwrap();
        assert_relative_eq!(w2, 0.02, max_relative = 1e-10);
    }

    #[test]
    fn kink_doubles_the_second_difference() {
        let f = builtin("abs_half").unwrap();
        let w2 = modulus_second(&f, 0.2, 0.0, 1.0, 1001).unwrap();
        assert_relative_eq!(w2, 0.4, max_relative = 1e-10);
    }

    #[test]
    fn derivative_modulus_examples() {
        let square = builtin("square").unwrap();
        let q = ModulusQuery::new(0.25, 0.0, 1.0, 2049).unwrap();
        // (t^2)' = 2t is linear: w1 = 2 delta.
        assert_relative_eq!(
            modulus_derivative(&square, &q).unwrap(),
            0.5,
            max_relative = 1e-12
        );

        let sine = FunctionHandle::new("sin", |t| t.sin()).with_derivative(|t| t.cos());
        let q = ModulusQuery::new(0.1, 0.0, 2.0, 2048).unwrap();
        let w1 = modulus_derivative(&sine, &q).unwrap();
        assert!(w1 <= 0.1 + 1e-12, "w1={w1}");

        let constant = builtin("const1").unwrap();
        assert_eq!(modulus_derivative(&constant, &q).unwrap(), 0.0);

        let kink = builtin("abs_half").unwrap();
        assert!(matches!(
            modulus_derivative(&kink, &q),
            Err(Error::MissingDerivative)
        ));
    }

    #[test]
    fn lipschitz_examples() {
        let linear = builtin("linear").unwrap();
        assert_relative_eq!(
            lipschitz_estimate(&linear, 1.0, 0.0, 1.0, 512).unwrap(),
            1.0,
            max_relative = 1e-12
        );

        let sqrt = builtin("sqrt").unwrap();
        let m = lipschitz_estimate(&sqrt, 0.5, 0.0, 1.0, 1024).unwrap();
        assert_relative_eq!(m, 1.0, max_relative = 1e-12);

        let constant = builtin("const1").unwrap();
        assert_eq!(
            lipschitz_estimate(&constant, 1.0, 0.0, 1.0, 256).unwrap(),
            0.0
        );

        assert!(matches!(
            lipschitz_estimate(&linear, 1.5, 0.0, 1.0, 256),
            Err(Error::InvalidLipschitzExponent { .. })
        ));
    }

    #[test]
    fn modulus_monotone_in_delta() {
        let f = builtin("sin_pi").unwrap();
        let samples = FunctionSamples::new(&f, 0.0, 2.0, 1024).unwrap();
        let mut prev = 0.0;
        for i in 1..=20 {
            let value = samples.oscillation(0.1 * i as f64);
            assert!(value >= prev);
            prev = value;
        }
        let mut prev = 0.0;
        for i in 1..=10 {
            let value = samples.omega2(0.05 * i as f64);
            assert!(value >= prev);
            prev = value;
        }
    }

    #[test]
    fn nested_refinement_never_decreases_estimates() {
        // Doubling resolution as g -> 2g - 1 keeps the old samples, so the
        // sup over the refined subset cannot drop.
        for name in ["sin_pi", "abs_half", "exp_neg"] {
            let f = builtin(name).unwrap();
            let coarse = FunctionSamples::new(&f, 0.0, 2.0, 257).unwrap();
            let fine = FunctionSamples::new(&f, 0.0, 2.0, 513).unwrap();
            for &delta in &[0.01, 0.1, 0.5] {
                assert!(fine.oscillation(delta) >= coarse.oscillation(delta) - 1e-15);
                assert!(fine.omega2(delta) >= coarse.omega2(delta) - 1e-15);
            }
        }
    }
}
