//! Evaluable test functions with optional derivative and Lipschitz metadata.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Declared membership in the Lipschitz class: `|f(t) - f(x)| <= M |t - x|^a`
/// with `M > 0` and `0 < a <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipSpec {
    pub constant: f64,
    pub exponent: f64,
}

/// A real function on the operator's sampling interval, with an optional
/// first derivative and an optional Lipschitz declaration.
///
/// Evaluation closures are shared immutably, so a handle may be evaluated
/// from any number of threads at once.
#[derive(Clone)]
pub struct FunctionHandle {
    name: String,
    eval: EvalFn,
    deriv: Option<EvalFn>,
    lip_spec: Option<LipSpec>,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("name", &self.name)
            .field("has_deriv", &self.deriv.is_some())
            .field("lip_spec", &self.lip_spec)
            .finish()
    }
}

impl FunctionHandle {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            deriv: None,
            lip_spec: None,
        }
    }

    pub fn with_derivative(mut self, deriv: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.deriv = Some(Arc::new(deriv));
        self
    }

    pub fn with_lipschitz(mut self, constant: f64, exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent <= 1.0) {
            return Err(Error::InvalidLipschitzExponent { a: exponent });
        }
        if !(constant > 0.0 && constant.is_finite()) {
            return Err(Error::InvalidLipschitzConstant { m: constant });
        }
        self.lip_spec = Some(LipSpec { constant, exponent });
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    pub fn has_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    pub fn eval_derivative(&self, t: f64) -> Result<f64> {
        match &self.deriv {
            Some(d) => Ok(d(t)),
            None => Err(Error::MissingDerivative),
        }
    }

    /// The derivative wrapped as its own handle, for modulus searches.
    pub fn derivative(&self) -> Result<FunctionHandle> {
        let d = self.deriv.clone().ok_or(Error::MissingDerivative)?;
        Ok(FunctionHandle {
            name: format!("{}'", self.name),
            eval: d,
            deriv: None,
            lip_spec: None,
        })
    }

    pub fn lip_spec(&self) -> Option<LipSpec> {
        self.lip_spec
    }
}

/// Names of the built-in corpus, in canonical order.
pub const BUILTIN_NAMES: [&str; 7] = [
    "const1", "linear", "sin_pi", "exp_neg", "square", "abs_half", "sqrt",
];

/// Look up a built-in corpus function by name.
///
/// Derivatives are attached where they are continuous on `[0, L]` for every
/// shift `L`; `abs_half` has a kink and `sqrt` has an unbounded derivative at
/// zero, so neither carries one. Lipschitz declarations are global:
/// `|sqrt(t) - sqrt(s)| <= |t - s|^{1/2}` and `abs_half`, `linear`,
/// `exp_neg` are 1-Lipschitz; `sin_pi` is `pi`-Lipschitz.
pub fn builtin(name: &str) -> Option<FunctionHandle> {
    let handle = match name {
        "const1" => FunctionHandle::new("const1", |_| 1.0)
            .with_derivative(|_| 0.0)
            .with_lipschitz(1.0, 1.0)
            .expect("valid exponent"),
        "linear" => FunctionHandle::new("linear", |t| t)
            .with_derivative(|_| 1.0)
            .with_lipschitz(1.0, 1.0)
            .expect("valid exponent"),
        "sin_pi" => FunctionHandle::new("sin_pi", |t| (std::f64::consts::PI * t).sin())
            .with_derivative(|t| std::f64::consts::PI * (std::f64::consts::PI * t).cos())
            .with_lipschitz(std::f64::consts::PI, 1.0)
            .expect("valid exponent"),
        "exp_neg" => FunctionHandle::new("exp_neg", |t| (-t).exp())
            .with_derivative(|t| -(-t).exp())
            .with_lipschitz(1.0, 1.0)
            .expect("valid exponent"),
        "square" => FunctionHandle::new("square", |t| t * t).with_derivative(|t| 2.0 * t),
        "abs_half" => FunctionHandle::new("abs_half", |t| (t - 0.5).abs())
            .with_lipschitz(1.0, 1.0)
            .expect("valid exponent"),
        "sqrt" => FunctionHandle::new("sqrt", |t| t.sqrt())
            .with_lipschitz(1.0, 0.5)
            .expect("valid exponent"),
        _ => return None,
    };
    Some(handle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_resolves_all_names() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            assert_eq!(f.name(), name);
            assert!(f.eval(0.25).is_finite());
        }
        assert!(builtin("no_such_fn").is_none());
    }

    #[test]
    fn declared_derivatives_match_finite_differences() {
        let h = 1e-6;
        for name in ["const1", "linear", "sin_pi", "exp_neg", "square"] {
            let f = builtin(name).unwrap();
            for &t in &[0.1, 0.5, 0.9, 1.4] {
                let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
                let d = f.eval_derivative(t).unwrap();
                assert!((fd - d).abs() < 1e-5, "{name} at {t}: fd={fd} d={d}");
            }
        }
    }

    #[test]
    fn missing_derivative_is_an_error() {
        let f = builtin("abs_half").unwrap();
        assert!(matches!(
            f.eval_derivative(0.3),
            Err(Error::MissingDerivative)
        ));
        assert!(f.derivative().is_err());
    }

    #[test]
    fn lipschitz_spec_validated() {
        let err = FunctionHandle::new("f", |t| t).with_lipschitz(1.0, 1.5);
        assert!(matches!(err, Err(Error::InvalidLipschitzExponent { .. })));
        let err = FunctionHandle::new("f", |t| t).with_lipschitz(1.0, 0.0);
        assert!(err.is_err());
        let err = FunctionHandle::new("f", |t| t).with_lipschitz(0.0, 0.5);
        assert!(matches!(err, Err(Error::InvalidLipschitzConstant { .. })));
    }
}
