//! Closed-form moments of both operators and the brute-force oracle that
//! pins them down.
//!
//! For the unshifted operator (orders 0..=2):
//!
//! ```text
//! B(1; x)   = 1
//! B(t; x)   = [n+l] x / [n]
//! B(t^2; x) = [n+l] p^{n+l-1} x / [n]^2 + q [n+l][n+l-1] x^2 / [n]^2
//! ```
//!
//! The shifted moments follow from the binomial transform
//!
//! ```text
//! S(t^m; x) = ([n]/([n]+beta))^m sum_i C(m,i) (alpha/[n])^{m-i} B(t^i; x)
//! ```
//!
//! with ordinary binomial coefficients `C(m,i)`. Expanding it at `m = 2`
//! gives the second-moment x-coefficient `[n+l] p^{n+l-1} + 2 alpha [n+l]`
//! (note the `[n+l]` multiplying `2 alpha`) and the constant term
//! `alpha^2 / ([n]+beta)^2`; the recomposition identity
//! `central_2 = raw_2 - 2x raw_1 + x^2` and the brute-force oracle below
//! both pin these coefficients down, so a slip in either one fails the
//! moment-equivalence suite.

use crate::basis::{OperatorConfig, StancuSchurer};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::pq::pq_int;

/// Moments and central moments of orders 0..=2 at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub x: f64,
    /// `S(t^i; x)` for `i = 0, 1, 2`.
    pub raw: [f64; 3],
    /// `S((t-x)^i; x)` for `i = 0, 1, 2`.
    pub central: [f64; 3],
}

impl MomentSet {
    /// Moments from the closed forms.
    pub fn closed(config: &OperatorConfig, x: f64) -> Result<Self> {
        Ok(Self {
            x,
            raw: [
                ss_moment_closed(0, config, x)?,
                ss_moment_closed(1, config, x)?,
                ss_moment_closed(2, config, x)?,
            ],
            central: [
                ss_central_moment_closed(0, config, x)?,
                ss_central_moment_closed(1, config, x)?,
                ss_central_moment_closed(2, config, x)?,
            ],
        })
    }

    /// Moments from direct summation over the basis.
    pub fn bruteforce(config: &OperatorConfig, x: f64) -> Result<Self> {
        Ok(Self {
            x,
            raw: [
                moment_bruteforce(0, config, x)?,
                moment_bruteforce(1, config, x)?,
                moment_bruteforce(2, config, x)?,
            ],
            central: [
                central_moment_bruteforce(0, config, x)?,
                central_moment_bruteforce(1, config, x)?,
                central_moment_bruteforce(2, config, x)?,
            ],
        })
    }
}

/// Closed-form moment `B(t^i; x)` of the unshifted operator, `i <= 2`.
pub fn bs_moment_closed(order: usize, n: u32, l: u32, pq: crate::PQPair, x: f64) -> Result<f64> {
    let m = n as usize + l as usize;
    let bracket_n = pq_int(n as usize, pq);
    let bracket_m = pq_int(m, pq);
    match order {
        0 => Ok(1.0),
        1 => Ok(bracket_m * x / bracket_n),
        2 => {
            let bracket_m1 = pq_int(m - 1, pq);
            let n2 = bracket_n * bracket_n;
            Ok(bracket_m * pq.p().powi(m as i32 - 1) * x / n2
                + pq.q() * bracket_m * bracket_m1 * x * x / n2)
        }
        _ => Err(Error::UnsupportedMomentOrder { order }),
    }
}

/// General shifted moment via the binomial transform of unshifted moments.
///
/// `bs_moments[i]` must hold `B(t^i; x)` for `i = 0..=m`, all at the same
/// point (closed forms for `i <= 2`, the brute-force oracle beyond); the
/// result is exact only relative to those inputs.
pub fn ss_moment_general(m: usize, config: &OperatorConfig, bs_moments: &[f64]) -> Result<f64> {
    if bs_moments.len() != m + 1 {
        return Err(Error::MomentLengthMismatch {
            expected: m + 1,
            got: bs_moments.len(),
        });
    }
    let bracket_n = pq_int(config.n() as usize, config.pq());
    let denom = bracket_n + config.beta();
    let shift = config.alpha() / bracket_n;

    let mut sum = 0.0;
    let mut binom = 1.0; // ordinary C(m,i)
    for (i, b) in bs_moments.iter().enumerate() {
        sum += binom * shift.powi((m - i) as i32) * b;
        if i < m {
            binom *= (m - i) as f64 / (i + 1) as f64;
        }
    }
    Ok((bracket_n / denom).powi(m as i32) * sum)
}

/// Closed-form shifted moment `S(t^i; x)`, `i <= 2`.
pub fn ss_moment_closed(order: usize, config: &OperatorConfig, x: f64) -> Result<f64> {
    let pq = config.pq();
    let m = config.degree();
    let bracket_m = pq_int(m, pq);
    let denom = config.node_denominator();
    match order {
        0 => Ok(1.0),
        1 => Ok((bracket_m * x + config.alpha()) / denom),
        2 => {
            let bracket_m1 = pq_int(m - 1, pq);
            let d2 = denom * denom;
            let x_coeff = bracket_m * pq.p().powi(m as i32 - 1) + 2.0 * config.alpha() * bracket_m;
            Ok(x_coeff * x / d2
                + pq.q() * bracket_m * bracket_m1 * x * x / d2
                + config.alpha() * config.alpha() / d2)
        }
        _ => Err(Error::UnsupportedMomentOrder { order }),
    }
}

/// Closed-form central moment `S((t-x)^i; x)`, `i <= 2`.
pub fn ss_central_moment_closed(order: usize, config: &OperatorConfig, x: f64) -> Result<f64> {
    let pq = config.pq();
    let m = config.degree();
    let bracket_m = pq_int(m, pq);
    let denom = config.node_denominator();
    let alpha = config.alpha();
    match order {
        0 => Ok(1.0),
        1 => Ok((bracket_m / denom - 1.0) * x + alpha / denom),
        2 => {
            let bracket_m1 = pq_int(m - 1, pq);
            let d2 = denom * denom;
            let xx_coeff = bracket_m * bracket_m1 * pq.q() - 2.0 * bracket_m * denom + d2;
            let x_coeff =
                bracket_m * (pq.p().powi(m as i32 - 1) + 2.0 * alpha) - 2.0 * alpha * denom;
            Ok(xx_coeff * x * x / d2 + x_coeff * x / d2 + alpha * alpha / d2)
        }
        _ => Err(Error::UnsupportedMomentOrder { order }),
    }
}

/// Moment `S(t^m; x)` by direct compensated summation over the basis.
///
/// This is the independent oracle every closed form is tested against.
pub fn moment_bruteforce(m: usize, config: &OperatorConfig, x: f64) -> Result<f64> {
    let op = StancuSchurer::new(*config)?;
    let weights = op.weights(x)?;
    let mut acc = CompensatedSum::new();
    for (w, t) in weights.iter().zip(op.nodes()) {
        acc.add(w * t.powi(m as i32));
    }
    Ok(acc.value())
}

/// Central moment `S((t-x)^m; x)` by direct compensated summation.
pub fn central_moment_bruteforce(m: usize, config: &OperatorConfig, x: f64) -> Result<f64> {
    let op = StancuSchurer::new(*config)?;
    let weights = op.weights(x)?;
    let mut acc = CompensatedSum::new();
    for (w, t) in weights.iter().zip(op.nodes()) {
        acc.add(w * (t - x).powi(m as i32));
    }
    Ok(acc.value())
}
