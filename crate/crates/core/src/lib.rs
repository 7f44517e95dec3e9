//! Two-parameter Stancu-Schurer operators and their convergence laboratory.
//!
//! The central object is the positive linear operator
//!
//! ```text
//! S(f; x) = sum_{nu=0}^{n+l} b_nu(x; p, q) f( (p^{(n+l)-nu} [nu] + alpha) / ([n] + beta) )
//! ```
//!
//! acting on functions on `[0, l+1]` and evaluated at `x` in `[0,1]`, where
//! `[k]` is the (p,q)-integer and `b_nu` the degree-`n+l` basis. The crate
//! provides:
//!
//! * [`pq`] — (p,q)-integers, factorials, binomial coefficients, and the
//!   binomial expansion/product identity;
//! * [`basis`] — basis weights, sampling nodes, and both operators (the
//!   shifted one and the `alpha = beta = 0` form);
//! * [`moments`] — closed-form moments and central moments of orders 0..=2
//!   plus the brute-force oracle that validates them;
//! * [`smoothness`] — grid estimators for first and second moduli of
//!   continuity and Lipschitz constants;
//! * [`bounds`] — the four error-bound right-hand sides as computable
//!   functions, reported next to the actual error;
//! * [`convergence`] — parameter sequences `(p_n, q_n) -> 1`, sup-norm error
//!   sweeps over `n`, bound sweeps, and decay-rate fitting;
//! * [`reference`] — independently coded classical Bernstein and
//!   single-parameter evaluators used as cross-checks.
//!
//! Everything is a pure function of its arguments; all types are `Send` and
//! `Sync` and safe to use from parallel sweeps.

pub mod basis;
pub mod bounds;
pub mod convergence;
pub mod error;
pub mod functions;
pub mod moments;
pub mod numeric;
pub mod pq;
pub mod reference;
pub mod smoothness;

pub use basis::{
    apply_bernstein_schurer, apply_stancu_schurer, basis_weight, basis_weights, node,
    OperatorConfig, StancuSchurer,
};
pub use bounds::{
    bound_thm32, bound_thm33, bound_thm41, bound_thm43, BoundEvaluator, BoundKind, BoundReport,
    FunctionProfile, DEFAULT_SMOOTHNESS_CONSTANT, MODULUS_SAFETY_FACTOR,
};
pub use convergence::{
    fit_decay_rate, run_bound_sweep, run_korovkin, ConvergenceReport, OperatorTemplate,
    SequenceSpec, SweepRow,
};
pub use error::{Error, Result};
pub use functions::{builtin, FunctionHandle, LipSpec, BUILTIN_NAMES};
pub use moments::{
    bs_moment_closed, central_moment_bruteforce, moment_bruteforce, ss_central_moment_closed,
    ss_moment_closed, ss_moment_general, MomentSet,
};
pub use pq::{
    binomial_expansion, falling_product, pq_binomial, pq_factorial, pq_int, product_form, PQPair,
};
pub use smoothness::{
    lipschitz_estimate, modulus_derivative, modulus_first, modulus_second, FunctionSamples,
    ModulusQuery, DEFAULT_GRID_POINTS,
};
