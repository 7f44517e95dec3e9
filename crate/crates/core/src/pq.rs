//! Two-parameter (p,q)-calculus primitives.
//!
//! For `0 < q <= p <= 1` the (p,q)-integer is
//!
//! ```text
//! [k] = p^{k-1} + p^{k-2} q + ... + q^{k-1}   (= (p^k - q^k)/(p - q) when p != q)
//! ```
//!
//! with `[0] = 0` (the empty sum). The summation form is the canonical
//! implementation here: the ratio form cancels catastrophically as `q -> p`,
//! and the summation form stays defined at `q = p`, which the Korovkin
//! experiments hit in the limit. On top of `[k]` sit the (p,q)-factorial,
//! the (p,q)-binomial coefficient, the falling product
//! `prod_{j=0}^{m-1} (p^j - q^j x)`, and the two sides of the binomial
//! expansion identity
//!
//! ```text
//! prod_{j=0}^{n-1} (p^j x + q^j y)
//!   = sum_k  C(n,k)_{p,q} p^{(n-k)(n-k-1)/2} q^{k(k-1)/2} x^{n-k} y^k.
//! ```

use crate::error::{Error, Result};

/// The deformation parameters `(p, q)` with `0 < q <= p <= 1`.
///
/// Equality `q = p` (including the classical point `p = q = 1`) is admitted;
/// everything downstream is computed through summation/product forms that
/// stay well defined there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQPair {
    p: f64,
    q: f64,
}

impl PQPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) || !(0.0 < q && q <= p && p <= 1.0) {
            return Err(Error::InvalidPqPair { p, q });
        }
        Ok(Self { p, q })
    }

    /// The classical point `p = q = 1`, where `[k] = k`.
    pub fn classical() -> Self {
        Self { p: 1.0, q: 1.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// The (p,q)-integer `[k]`, computed by the summation form.
///
/// `[0] = 0`, `[1] = 1`, and `[k] <= k` for `p, q <= 1`.
pub fn pq_int(k: usize, pq: PQPair) -> f64 {
    let (p, q) = (pq.p(), pq.q());
    // sum_{i=0}^{k-1} p^{k-1-i} q^i, accumulated from the q^0 end.
    let mut sum = 0.0;
    let mut term = if k == 0 { 0.0 } else { p.powi(k as i32 - 1) };
    let ratio = q / p;
    for _ in 0..k {
        sum += term;
        term *= ratio;
    }
    sum
}

/// The (p,q)-factorial `[k]! = [1][2]...[k]`, with `[0]! = 1`.
///
/// Fails with [`Error::Overflow`] once the running product leaves the
/// floating-point range (at `p = q = 1` this is the classical `k!`, which
/// overflows near `k = 171`).
pub fn pq_factorial(k: usize, pq: PQPair) -> Result<f64> {
    let mut product = 1.0;
    for i in 1..=k {
        product *= pq_int(i, pq);
        if !product.is_finite() {
            return Err(Error::Overflow {
                what: "(p,q)-factorial",
            });
        }
    }
    Ok(product)
}

/// Natural log of the (p,q)-factorial, as prefix sums over `ln [i]`.
///
/// Stays usable far beyond where [`pq_factorial`] overflows; the basis
/// evaluator switches to this representation for large degrees.
pub(crate) fn ln_pq_factorials(max_k: usize, pq: PQPair) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_k + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for i in 1..=max_k {
        acc += pq_int(i, pq).ln();
        out.push(acc);
    }
    out
}

/// The (p,q)-binomial coefficient `C(n,k)_{p,q} = [n]!/([k]![n-k]!)`.
///
/// Computed as the running product `prod_{i=1}^{k} [n-k+i]/[i]` (over the
/// smaller of `k`, `n-k`), which keeps every partial product below the final
/// value; it overflows only when the coefficient itself does.
pub fn pq_binomial(n: usize, k: usize, pq: PQPair) -> Result<f64> {
    if k > n {
        return Err(Error::IndexOutOfRange {
            what: "(p,q)-binomial lower index",
            index: k,
            max: n,
        });
    }
    let k = k.min(n - k);
    let mut product = 1.0;
    for i in 1..=k {
        product *= pq_int(n - k + i, pq) / pq_int(i, pq);
        if !product.is_finite() {
            return Err(Error::Overflow {
                what: "(p,q)-binomial coefficient",
            });
        }
    }
    Ok(product)
}

/// The falling product `prod_{j=0}^{m-1} (p^j - q^j x)`, with the empty
/// product equal to 1.
///
/// Nonnegative for `x` in `[0,1]` when `q <= p`.
pub fn falling_product(x: f64, m: usize, pq: PQPair) -> f64 {
    let (p, q) = (pq.p(), pq.q());
    let mut product = 1.0;
    let mut pj = 1.0;
    let mut qj = 1.0;
    for _ in 0..m {
        product *= pj - qj * x;
        pj *= p;
        qj *= q;
    }
    product
}

/// The (p,q)-binomial expansion
/// `sum_{k=0}^{n} C(n,k)_{p,q} p^{(n-k)(n-k-1)/2} q^{k(k-1)/2} a^{n-k} b^k x^{n-k} y^k`.
pub fn binomial_expansion(a: f64, b: f64, x: f64, y: f64, n: usize, pq: PQPair) -> f64 {
    let (p, q) = (pq.p(), pq.q());
    let mut sum = 0.0;
    let mut binom = 1.0; // C(n,k)_{p,q}, updated multiplicatively
    for k in 0..=n {
        let pe = ((n - k) * (n - k).saturating_sub(1) / 2) as i32;
        let qe = (k * k.saturating_sub(1) / 2) as i32;
        let term = binom
            * p.powi(pe)
            * q.powi(qe)
            * a.powi((n - k) as i32)
            * b.powi(k as i32)
            * x.powi((n - k) as i32)
            * y.powi(k as i32);
        sum += term;
        if k < n {
            binom *= pq_int(n - k, pq) / pq_int(k + 1, pq);
        }
    }
    sum
}

/// The product form `prod_{j=0}^{n-1} (p^j x + q^j y)`.
///
/// Equal to [`binomial_expansion`] with `a = b = 1` for all inputs; the test
/// suite enforces the identity.
pub fn product_form(x: f64, y: f64, n: usize, pq: PQPair) -> f64 {
    let (p, q) = (pq.p(), pq.q());
    let mut product = 1.0;
    let mut pj = 1.0;
    let mut qj = 1.0;
    for _ in 0..n {
        product *= pj * x + qj * y;
        pj *= p;
        qj *= q;
    }
    product
}
