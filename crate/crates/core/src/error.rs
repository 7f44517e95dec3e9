use thiserror::Error;

/// Errors raised by parameter validation and evaluation routines.
///
/// Every variant names the violated invariant so front ends can surface a
/// one-line diagnostic without re-deriving context.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid (p,q) pair p={p}, q={q}: requires 0 < q <= p <= 1")]
    InvalidPqPair { p: f64, q: f64 },

    #[error("invalid operator config: n={n} must satisfy n >= 1")]
    DegreeOutOfRange { n: u32 },

    #[error("invalid Stancu shifts alpha={alpha}, beta={beta}: requires 0 <= alpha <= beta")]
    InvalidStancuShifts { alpha: f64, beta: f64 },

    #[error("index {index} out of range for {what} (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("{what} overflows the floating-point range")]
    Overflow { what: &'static str },

    #[error("unsupported moment order {order}: closed forms exist only for orders 0..=2")]
    UnsupportedMomentOrder { order: usize },

    #[error("moment list has length {got}, expected {expected} (orders 0..=m)")]
    MomentLengthMismatch { expected: usize, got: usize },

    #[error("evaluation point x={x} outside [0,1]")]
    PointOutsideUnitInterval { x: f64 },

    #[error("sampling node {node} (index {nu}) outside [0, {hi}] beyond tolerance: invalid (alpha, beta, l) combination")]
    NodeOutOfDomain { nu: usize, node: f64, hi: f64 },

    #[error("invalid modulus query: delta={delta} must satisfy 0 < delta <= {width} (domain width)")]
    InvalidModulusDelta { delta: f64, width: f64 },

    #[error("invalid modulus query: domain [{lo}, {hi}] must be nonempty and finite")]
    InvalidModulusDomain { lo: f64, hi: f64 },

    #[error("invalid modulus query: grid_points={got} must be >= {min}")]
    GridTooCoarse { got: usize, min: usize },

    #[error("invalid Lipschitz exponent a={a}: requires 0 < a <= 1")]
    InvalidLipschitzExponent { a: f64 },

    #[error("invalid Lipschitz constant M={m}: requires M > 0")]
    InvalidLipschitzConstant { m: f64 },

    #[error("function handle has no derivative, required by the derivative-modulus bound")]
    MissingDerivative,

    #[error("function handle declares no Lipschitz class, required by the Lipschitz bound")]
    MissingLipschitzSpec,

    #[error("invalid smoothness constant C={c}: requires C > 0")]
    InvalidPeetreConstant { c: f64 },

    #[error("parameter sequence violates 0 < q_n < p_n <= 1 at n={n}: p_n={p}, q_n={q}")]
    InvalidSequenceAt { n: u32, p: f64, q: f64 },

    #[error("custom parameter sequence has no entry for n={n}")]
    MissingSequenceEntry { n: u32 },

    #[error("invalid sequence spec: {reason}")]
    InvalidSequenceSpec { reason: String },

    #[error("sweep n-values must be nonempty and strictly increasing")]
    InvalidSweepValues,
}

pub type Result<T> = std::result::Result<T, Error>;
