//! Independently coded reference evaluators.
//!
//! These deliberately share no arithmetic with the main basis/operator code
//! paths; reduction-chain checks compare against them on small instances.

/// Classical Bernstein polynomial `sum_k C(n,k) x^k (1-x)^{n-k} f(k/n)`.
///
/// The `p = q = 1`, `l = 0`, `alpha = beta = 0` case must reproduce this.
pub fn classical_bernstein(n: u32, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let n = n as usize;
    let mut coeff = 1.0; // C(n,k)
    let mut sum = 0.0;
    for k in 0..=n {
        let weight = coeff * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32);
        sum += weight * f(k as f64 / n as f64);
        if k < n {
            coeff *= (n - k) as f64 / (k + 1) as f64;
        }
    }
    sum
}

fn q_int(k: usize, q: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for _ in 0..k {
        sum += term;
        term *= q;
    }
    sum
}

fn q_binomial(n: usize, k: usize, q: f64) -> f64 {
    let k = k.min(n - k);
    let mut product = 1.0;
    for i in 1..=k {
        product *= q_int(n - k + i, q) / q_int(i, q);
    }
    product
}

/// Single-parameter shifted operator: basis
/// `C(n+l,nu)_q x^nu prod_{j=0}^{n+l-nu-1} (1 - q^j x)` sampling `f` at
/// `([nu]_q + alpha) / ([n]_q + beta)`.
///
/// The two-parameter operator at `p = 1` must reproduce this.
pub fn q_stancu_schurer(
    n: u32,
    l: u32,
    q: f64,
    alpha: f64,
    beta: f64,
    f: impl Fn(f64) -> f64,
    x: f64,
) -> f64 {
    let m = (n + l) as usize;
    let denom = q_int(n as usize, q) + beta;
    let mut sum = 0.0;
    for nu in 0..=m {
        let mut weight = q_binomial(m, nu, q) * x.powi(nu as i32);
        let mut qj = 1.0;
        for _ in 0..(m - nu) {
            weight *= 1.0 - qj * x;
            qj *= q;
        }
        let node = (q_int(nu, q) + alpha) / denom;
        sum += weight * f(node);
    }
    sum
}
