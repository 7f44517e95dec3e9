//! Computable right-hand sides of the four error-bound statements, each
//! packaged with the actual error it is supposed to dominate.
//!
//! With `M2(x)` the second central moment and `M1(x)` the first:
//!
//! * `thm32`: `2 w(f; sqrt(M2(x)))` — first modulus at the square root of
//!   the second central moment (the argument is `sqrt(M2)` itself, not a
//!   further square root of it; the convention callers should assume).
//! * `thm33`: `w1(f'; d) sqrt(M2) (1 + sqrt([n]+beta) sqrt(M2))` with
//!   `d = ([n]+beta)^{-1}` — requires a declared derivative. The statement
//!   carries no standalone first-order term, so for shifted configurations
//!   (`alpha > 0` or `l > 0`) an affine `f` already produces negative slack,
//!   and for fixed smooth `f` the bound decays one power of `n` faster than
//!   the error; reports record such negative slack verbatim.
//! * `thm41`: `C w2(f; sqrt(Theta(x))) + w(f; |M1(x)|)` with
//!   `Theta = M2 + M1^2` and a caller-supplied constant `C` (default 4)
//!   standing in for the absolute constant of the K-functional comparison.
//!   `M1` can be negative (large `beta` relative to `l`), so the first
//!   modulus is taken at its absolute value.
//! * `thm43`: `M * M2(x)^{a/2}` for declared membership in the Lipschitz
//!   class with constant `M` and exponent `a` — the exponent `a/2` form,
//!   which is what the Cauchy-Schwarz/Hoelder chain actually yields (the
//!   plain-delta form fails dimensional sanity for `a < 1`).
//!
//! Moduli come from grid searches that approximate suprema from below, so
//! sweeps that assert `bound >= error` inflate them by
//! [`MODULUS_SAFETY_FACTOR`]; the one-shot helpers report raw values.

use std::fmt;

use crate::basis::{OperatorConfig, StancuSchurer};
use crate::error::{Error, Result};
use crate::functions::FunctionHandle;
use crate::moments::ss_central_moment_closed;
use crate::smoothness::{FunctionSamples, DEFAULT_GRID_POINTS};

/// Factor applied to from-below modulus estimates in validity sweeps.
pub const MODULUS_SAFETY_FACTOR: f64 = 1.05;

/// Default stand-in for the absolute constant in the `thm41` bound.
pub const DEFAULT_SMOOTHNESS_CONSTANT: f64 = 4.0;

/// Which bound a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    Thm32,
    Thm33,
    Thm41,
    Thm43,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [
        BoundKind::Thm32,
        BoundKind::Thm33,
        BoundKind::Thm41,
        BoundKind::Thm43,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Thm32 => "thm32",
            BoundKind::Thm33 => "thm33",
            BoundKind::Thm41 => "thm41",
            BoundKind::Thm43 => "thm43",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound evaluation at one point.
///
/// `slack = bound_value - actual_error` is recorded verbatim; a negative
/// value is data, never clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub x: f64,
    pub actual_error: f64,
    pub bound_value: f64,
    pub kind: BoundKind,
    pub slack: f64,
    /// Every modulus/constant input that entered the bound, by name.
    pub params: Vec<(&'static str, f64)>,
}

impl BoundReport {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
    }
}

/// A function together with cached samples of it (and of its derivative,
/// when declared) over the operator domain `[0, l+1]`.
///
/// Building the profile is the expensive part; bound evaluations afterwards
/// reuse the samples, so the profile is shared across a whole `n`-sweep.
#[derive(Debug)]
pub struct FunctionProfile {
    handle: FunctionHandle,
    samples: FunctionSamples,
    deriv_samples: Option<FunctionSamples>,
}

impl FunctionProfile {
    pub fn new(f: &FunctionHandle, domain_hi: f64, grid_points: usize) -> Result<Self> {
        let samples = FunctionSamples::new(f, 0.0, domain_hi, grid_points)?;
        let deriv_samples = match f.derivative() {
            Ok(d) => Some(FunctionSamples::new(&d, 0.0, domain_hi, grid_points)?),
            Err(_) => None,
        };
        Ok(Self {
            handle: f.clone(),
            samples,
            deriv_samples,
        })
    }

    pub fn handle(&self) -> &FunctionHandle {
        &self.handle
    }

    pub fn samples(&self) -> &FunctionSamples {
        &self.samples
    }
}

/// Evaluates all four bounds for one operator/function pair.
#[derive(Debug)]
pub struct BoundEvaluator<'a> {
    op: StancuSchurer,
    profile: &'a FunctionProfile,
    modulus_inflation: f64,
    smoothness_constant: f64,
}

impl<'a> BoundEvaluator<'a> {
    pub fn new(config: &OperatorConfig, profile: &'a FunctionProfile) -> Result<Self> {
        Ok(Self {
            op: StancuSchurer::new(*config)?,
            profile,
            modulus_inflation: 1.0,
            smoothness_constant: DEFAULT_SMOOTHNESS_CONSTANT,
        })
    }

    pub fn with_modulus_inflation(mut self, factor: f64) -> Self {
        self.modulus_inflation = factor;
        self
    }

    pub fn with_smoothness_constant(mut self, c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidPeetreConstant { c });
        }
        self.smoothness_constant = c;
        Ok(self)
    }

    pub fn actual_error(&self, x: f64) -> Result<f64> {
        let f = self.profile.handle();
        Ok((self.op.apply(f, x)? - f.eval(x)).abs())
    }

    pub fn evaluate(&self, kind: BoundKind, x: f64) -> Result<BoundReport> {
        match kind {
            BoundKind::Thm32 => self.thm32(x),
            BoundKind::Thm33 => self.thm33(x),
            BoundKind::Thm41 => self.thm41(x),
            BoundKind::Thm43 => self.thm43(x),
        }
    }

    /// Kinds applicable to this profile (derivative and Lipschitz bounds
    /// need the matching declarations).
    pub fn applicable_kinds(&self) -> Vec<BoundKind> {
        let mut kinds = vec![BoundKind::Thm32];
        if self.profile.deriv_samples.is_some() {
            kinds.push(BoundKind::Thm33);
        }
        kinds.push(BoundKind::Thm41);
        if self.profile.handle.lip_spec().is_some() {
            kinds.push(BoundKind::Thm43);
        }
        kinds
    }

    fn second_central(&self, x: f64) -> Result<f64> {
        // Rounding can leave a -1e-18 residue where the moment vanishes.
        Ok(ss_central_moment_closed(2, self.op.config(), x)?.max(0.0))
    }

    pub fn thm32(&self, x: f64) -> Result<BoundReport> {
        let m2 = self.second_central(x)?;
        let delta = m2.sqrt();
        let omega = self.modulus_inflation * self.profile.samples.oscillation(delta);
        let bound = 2.0 * omega;
        self.report(
            BoundKind::Thm32,
            x,
            bound,
            vec![
                ("second_central", m2),
                ("modulus_arg", delta),
                ("omega", omega),
                ("inflation", self.modulus_inflation),
            ],
        )
    }

    pub fn thm33(&self, x: f64) -> Result<BoundReport> {
        let deriv = self
            .profile
            .deriv_samples
            .as_ref()
            .ok_or(Error::MissingDerivative)?;
        let denom = self.op.config().node_denominator();
        let delta = denom.recip();
        let m2 = self.second_central(x)?;
        let sqrt_m2 = m2.sqrt();
        let omega1 = self.modulus_inflation * deriv.oscillation(delta);
        let bound = omega1 * sqrt_m2 * (1.0 + denom.sqrt() * sqrt_m2);
        self.report(
            BoundKind::Thm33,
            x,
            bound,
            vec![
                ("second_central", m2),
                ("modulus_arg", delta),
                ("omega1", omega1),
                ("inflation", self.modulus_inflation),
            ],
        )
    }

    pub fn thm41(&self, x: f64) -> Result<BoundReport> {
        let m2 = self.second_central(x)?;
        let shift = ss_central_moment_closed(1, self.op.config(), x)?;
        let theta = m2 + shift * shift;
        let omega2_term = self.modulus_inflation * self.profile.samples.omega2(theta.sqrt());
        let omega_term = self.modulus_inflation * self.profile.samples.oscillation(shift.abs());
        let bound = self.smoothness_constant * omega2_term + omega_term;
        self.report(
            BoundKind::Thm41,
            x,
            bound,
            vec![
                ("second_central", m2),
                ("first_central", shift),
                ("theta", theta),
                ("omega2_term", omega2_term),
                ("omega_term", omega_term),
                ("constant", self.smoothness_constant),
                ("inflation", self.modulus_inflation),
            ],
        )
    }

    pub fn thm43(&self, x: f64) -> Result<BoundReport> {
        let lip = self
            .profile
            .handle
            .lip_spec()
            .ok_or(Error::MissingLipschitzSpec)?;
        let m2 = self.second_central(x)?;
        let bound = lip.constant * m2.powf(lip.exponent / 2.0);
        self.report(
            BoundKind::Thm43,
            x,
            bound,
            vec![
                ("second_central", m2),
                ("lip_constant", lip.constant),
                ("lip_exponent", lip.exponent),
            ],
        )
    }

    fn report(
        &self,
        kind: BoundKind,
        x: f64,
        bound_value: f64,
        params: Vec<(&'static str, f64)>,
    ) -> Result<BoundReport> {
        let actual_error = self.actual_error(x)?;
        Ok(BoundReport {
            x,
            actual_error,
            bound_value,
            kind,
            slack: bound_value - actual_error,
            params,
        })
    }
}

fn one_shot<'a>(
    config: &OperatorConfig,
    profile: &'a FunctionProfile,
) -> Result<BoundEvaluator<'a>> {
    BoundEvaluator::new(config, profile)
}

/// First-modulus bound at one point (uninflated moduli, default grid).
pub fn bound_thm32(config: &OperatorConfig, f: &FunctionHandle, x: f64) -> Result<BoundReport> {
    let profile = FunctionProfile::new(f, config.domain_hi(), DEFAULT_GRID_POINTS)?;
    one_shot(config, &profile)?.thm32(x)
}

/// Derivative-modulus bound at one point.
pub fn bound_thm33(config: &OperatorConfig, f: &FunctionHandle, x: f64) -> Result<BoundReport> {
    let profile = FunctionProfile::new(f, config.domain_hi(), DEFAULT_GRID_POINTS)?;
    one_shot(config, &profile)?.thm33(x)
}

/// Second-modulus bound at one point with constant `c`.
pub fn bound_thm41(
    config: &OperatorConfig,
    f: &FunctionHandle,
    x: f64,
    c: f64,
) -> Result<BoundReport> {
    let profile = FunctionProfile::new(f, config.domain_hi(), DEFAULT_GRID_POINTS)?;
    one_shot(config, &profile)?
        .with_smoothness_constant(c)?
        .thm41(x)
}

/// Lipschitz-class bound at one point; `f` must declare its class.
pub fn bound_thm43(config: &OperatorConfig, f: &FunctionHandle, x: f64) -> Result<BoundReport> {
    let profile = FunctionProfile::new(f, config.domain_hi(), DEFAULT_GRID_POINTS)?;
    one_shot(config, &profile)?.thm43(x)
}
