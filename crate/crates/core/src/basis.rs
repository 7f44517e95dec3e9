//! Basis functions, sampling nodes, and the two operators built from them.
//!
//! The degree-`n+l` basis at `x` in `[0,1]` is
//!
//! ```text
//! b_nu(x) = p^{-T(n+l)} C(n+l,nu)_{p,q} p^{T(nu)} x^nu prod_{j=0}^{n+l-nu-1} (p^j - q^j x),
//! ```
//!
//! where `T(k) = k(k-1)/2`. The weights are nonnegative on `[0,1]` and sum
//! to 1. The shifted operator samples `f` at the nodes
//!
//! ```text
//! node(nu) = (p^{(n+l)-nu} [nu] + alpha) / ([n] + beta),
//! ```
//!
//! which are strictly increasing in `nu` and stay inside `[0, l+1]` for
//! `0 <= alpha <= beta`. The unshifted operator (`alpha = beta = 0`) samples
//! at `[nu] / (p^{nu-(n+l)} [n])`, the same points written as a quotient; it
//! is kept as a separate code path so the two can be cross-checked.

use crate::error::{Error, Result};
use crate::functions::FunctionHandle;
use crate::pq::{falling_product, ln_pq_factorials, pq_binomial, pq_int, PQPair};

/// Slack allowed when checking that sampling nodes stay inside `[0, l+1]`.
pub const NODE_DOMAIN_TOLERANCE: f64 = 1e-9;

/// Slop allowed on the evaluation point before `x` is rejected as outside
/// `[0,1]`.
const POINT_TOLERANCE: f64 = 1e-12;

/// Beyond this magnitude of `T(n+l) * ln(1/p)` the basis normalizer
/// `p^{-T(n+l)}` is too extreme for direct products and evaluation switches
/// to log space.
const LOG_SPACE_EXPONENT_LIMIT: f64 = 300.0;

/// Degrees above this always take the log-space path.
const LOG_SPACE_DEGREE_LIMIT: usize = 140;

/// Full parameter set `(n, l, alpha, beta, p, q)` of one shifted operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorConfig {
    n: u32,
    l: u32,
    alpha: f64,
    beta: f64,
    pq: PQPair,
}

impl OperatorConfig {
    pub fn new(n: u32, l: u32, alpha: f64, beta: f64, pq: PQPair) -> Result<Self> {
        if n < 1 {
            return Err(Error::DegreeOutOfRange { n });
        }
        if !(alpha.is_finite() && beta.is_finite()) || !(0.0 <= alpha && alpha <= beta) {
            return Err(Error::InvalidStancuShifts { alpha, beta });
        }
        Ok(Self {
            n,
            l,
            alpha,
            beta,
            pq,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn pq(&self) -> PQPair {
        self.pq
    }

    /// Polynomial degree `n + l`; the basis has `degree() + 1` members.
    pub fn degree(&self) -> usize {
        self.n as usize + self.l as usize
    }

    /// Upper end `l + 1` of the interval the nodes sample.
    pub fn domain_hi(&self) -> f64 {
        (self.l + 1) as f64
    }

    /// `[n] + beta`, the node denominator.
    pub fn node_denominator(&self) -> f64 {
        pq_int(self.n as usize, self.pq) + self.beta
    }
}

fn triangular(k: usize) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

fn validate_point(x: f64) -> Result<f64> {
    if !(x.is_finite() && (-POINT_TOLERANCE..=1.0 + POINT_TOLERANCE).contains(&x)) {
        return Err(Error::PointOutsideUnitInterval { x });
    }
    Ok(x.clamp(0.0, 1.0))
}

fn use_log_space(degree: usize, p: f64) -> bool {
    degree > LOG_SPACE_DEGREE_LIMIT || triangular(degree) * (-p.ln()) > LOG_SPACE_EXPONENT_LIMIT
}

/// One basis weight `b_nu(x)`, evaluated from the displayed product.
///
/// [`basis_weights`] computes the whole family by incremental updates; this
/// per-index route is deliberately independent so the two can be checked
/// against each other.
pub fn basis_weight(config: &OperatorConfig, nu: usize, x: f64) -> Result<f64> {
    let m = config.degree();
    if nu > m {
        return Err(Error::IndexOutOfRange {
            what: "basis index",
            index: nu,
            max: m,
        });
    }
    let x = validate_point(x)?;
    let pq = config.pq();
    let p = pq.p();

    if !use_log_space(m, p) {
        let exponent = triangular(nu) - triangular(m);
        let coeff = pq_binomial(m, nu, pq)? * p.powi(exponent as i32) * x.powi(nu as i32);
        return Ok(coeff * falling_product(x, m - nu, pq));
    }

    // Log-space: combine every factor's log before the single exp.
    if x == 0.0 {
        return Ok(if nu == 0 { 1.0 } else { 0.0 });
    }
    let lnfact = ln_pq_factorials(m, pq);
    let ln_binom = lnfact[m] - lnfact[nu] - lnfact[m - nu];
    let mut ln_falling = 0.0;
    let (mut pw, mut qw) = (1.0, 1.0);
    for _ in 0..(m - nu) {
        let factor = pw - qw * x;
        if factor <= 0.0 {
            return Ok(0.0);
        }
        ln_falling += factor.ln();
        pw *= p;
        qw *= pq.q();
    }
    let ln_weight = ln_binom
        + (triangular(nu) - triangular(m)) * p.ln()
        + nu as f64 * x.ln()
        + ln_falling;
    Ok(ln_weight.exp())
}

/// All `n+l+1` basis weights at `x`, in index order.
///
/// A backward pass accumulates the falling products (division-free, so
/// vanishing factors at `x = 1` are harmless) and a forward pass updates the
/// binomial-and-power coefficient multiplicatively, giving `O(n+l)` work per
/// point. Very large degrees or tiny `p` switch to summed logs.
pub fn basis_weights(config: &OperatorConfig, x: f64) -> Result<Vec<f64>> {
    let m = config.degree();
    let x = validate_point(x)?;
    let pq = config.pq();
    let (p, q) = (pq.p(), pq.q());

    if use_log_space(m, p) {
        return basis_weights_log(config, x);
    }

    let ints: Vec<f64> = (0..=m).map(|k| pq_int(k, pq)).collect();

    // falling[nu] = prod_{j=0}^{m-nu-1} (p^j - q^j x), built from nu = m down.
    let mut falling = vec![1.0; m + 1];
    let (mut pj, mut qj) = (1.0, 1.0);
    for nu in (0..m).rev() {
        falling[nu] = falling[nu + 1] * (pj - qj * x);
        pj *= p;
        qj *= q;
    }

    let mut weights = vec![0.0; m + 1];
    // coeff = p^{T(nu)-T(m)} C(m,nu)_{p,q} x^nu, updated multiplicatively.
    let mut coeff = p.powi(-(triangular(m) as i32));
    let mut p_nu = 1.0; // p^nu
    for nu in 0..=m {
        weights[nu] = coeff * falling[nu];
        if nu < m {
            coeff *= ints[m - nu] / ints[nu + 1] * p_nu * x;
            p_nu *= p;
        }
    }
    Ok(weights)
}

fn basis_weights_log(config: &OperatorConfig, x: f64) -> Result<Vec<f64>> {
    let m = config.degree();
    let pq = config.pq();
    let (p, q) = (pq.p(), pq.q());

    let mut weights = vec![0.0; m + 1];
    if x == 0.0 {
        weights[0] = 1.0;
        return Ok(weights);
    }

    let lnfact = ln_pq_factorials(m, pq);

    // ln falling[nu]; indices at or below a vanishing factor keep weight 0.
    let mut ln_falling = vec![0.0; m + 1];
    let mut zero_below: Option<usize> = None;
    let (mut pj, mut qj) = (1.0, 1.0);
    for nu in (0..m).rev() {
        let factor = pj - qj * x;
        if factor <= 0.0 && zero_below.is_none() {
            zero_below = Some(nu);
        }
        ln_falling[nu] = ln_falling[nu + 1] + if factor > 0.0 { factor.ln() } else { 0.0 };
        pj *= p;
        qj *= q;
    }

    let ln_p = p.ln();
    let ln_x = x.ln();
    let tri_m = triangular(m);
    for nu in 0..=m {
        if zero_below.is_some_and(|z| nu <= z) {
            continue;
        }
        let ln_w = (lnfact[m] - lnfact[nu] - lnfact[m - nu])
            + (triangular(nu) - tri_m) * ln_p
            + nu as f64 * ln_x
            + ln_falling[nu];
        weights[nu] = ln_w.exp();
    }
    Ok(weights)
}

/// The shifted sampling node `(p^{(n+l)-nu} [nu] + alpha) / ([n] + beta)`.
pub fn node(config: &OperatorConfig, nu: usize) -> Result<f64> {
    let m = config.degree();
    if nu > m {
        return Err(Error::IndexOutOfRange {
            what: "node index",
            index: nu,
            max: m,
        });
    }
    let pq = config.pq();
    let numerator = pq.p().powi((m - nu) as i32) * pq_int(nu, pq) + config.alpha();
    Ok(numerator / config.node_denominator())
}

fn node_vector(config: &OperatorConfig) -> Result<Vec<f64>> {
    let m = config.degree();
    let pq = config.pq();
    let denom = config.node_denominator();
    let hi = config.domain_hi();

    let mut powers = vec![1.0; m + 1];
    for j in 1..=m {
        powers[j] = powers[j - 1] * pq.p();
    }
    let mut nodes = Vec::with_capacity(m + 1);
    for nu in 0..=m {
        let value = (powers[m - nu] * pq_int(nu, pq) + config.alpha()) / denom;
        if !(-NODE_DOMAIN_TOLERANCE..=hi + NODE_DOMAIN_TOLERANCE).contains(&value) {
            return Err(Error::NodeOutOfDomain {
                nu,
                node: value,
                hi,
            });
        }
        nodes.push(value);
    }
    Ok(nodes)
}

/// A configured operator with its nodes precomputed, for repeated
/// application across a grid of points.
#[derive(Debug, Clone)]
pub struct StancuSchurer {
    config: OperatorConfig,
    nodes: Vec<f64>,
}

impl StancuSchurer {
    /// Builds the operator and verifies every node lies in
    /// `[0, l+1]` up to [`NODE_DOMAIN_TOLERANCE`].
    pub fn new(config: OperatorConfig) -> Result<Self> {
        let nodes = node_vector(&config)?;
        Ok(Self { config, nodes })
    }

    pub fn config(&self) -> &OperatorConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self, x: f64) -> Result<Vec<f64>> {
        basis_weights(&self.config, x)
    }

    pub fn apply(&self, f: &FunctionHandle, x: f64) -> Result<f64> {
        self.apply_fn(|t| f.eval(t), x)
    }

    pub fn apply_fn(&self, f: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
        let weights = basis_weights(&self.config, x)?;
        let mut sum = 0.0;
        for (w, t) in weights.iter().zip(&self.nodes) {
            sum += w * f(*t);
        }
        Ok(sum)
    }
}

/// Applies the shifted operator: `sum_nu b_nu(x) f(node(nu))`.
pub fn apply_stancu_schurer(config: &OperatorConfig, f: &FunctionHandle, x: f64) -> Result<f64> {
    StancuSchurer::new(*config)?.apply(f, x)
}

/// Applies the unshifted operator, sampling at `[nu] / (p^{nu-(n+l)} [n])`.
///
/// Agrees with [`apply_stancu_schurer`] at `alpha = beta = 0`; the node
/// arithmetic is written as displayed (a division by a negative power of
/// `p`) so the agreement is a genuine cross-check rather than an alias.
pub fn apply_bernstein_schurer(
    n: u32,
    l: u32,
    pq: PQPair,
    f: &FunctionHandle,
    x: f64,
) -> Result<f64> {
    let config = OperatorConfig::new(n, l, 0.0, 0.0, pq)?;
    let weights = basis_weights(&config, x)?;
    let m = config.degree();
    let denom = pq_int(n as usize, pq);
    let mut sum = 0.0;
    for (nu, w) in weights.iter().enumerate() {
        let t = pq_int(nu, pq) / (pq.p().powi(nu as i32 - m as i32) * denom);
        sum += w * f.eval(t);
    }
    Ok(sum)
}
