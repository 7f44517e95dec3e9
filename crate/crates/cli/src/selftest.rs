//! Built-in oracle and invariant suite behind `pqss selftest`.
//!
//! Each group re-derives a family of identities from scratch and checks the
//! library against them, so a regression in any closed form or evaluator
//! trips the matching group.

use pqss::numeric::uniform_grid;
use pqss::reference;
use pqss::{
    apply_bernstein_schurer, apply_stancu_schurer, basis_weights, binomial_expansion, builtin,
    central_moment_bruteforce, moment_bruteforce, pq_binomial, pq_int, product_form,
    ss_central_moment_closed, ss_moment_closed, OperatorConfig, PQPair,
};

pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn result(name: &'static str, worst: f64, limit: f64) -> GroupResult {
    GroupResult {
        name,
        passed: worst <= limit,
        detail: format!("worst deviation {worst:.3e} (limit {limit:.0e})"),
    }
}

fn pq_pairs() -> Vec<PQPair> {
    [(1.0, 0.9), (0.95, 0.9), (0.999, 0.998), (0.9, 0.8), (1.0, 1.0)]
        .iter()
        .map(|&(p, q)| PQPair::new(p, q).unwrap())
        .collect()
}

fn pq_identities(quick: bool) -> GroupResult {
    let kmax = if quick { 25 } else { 50 };
    let mut worst = 0.0f64;
    for pq in pq_pairs() {
        let (p, q) = (pq.p(), pq.q());
        // Summation form against the ratio form, away from the diagonal.
        if p - q >= 1e-3 {
            for k in 0..=kmax {
                let ratio = (p.powi(k as i32) - q.powi(k as i32)) / (p - q);
                let diff = (pq_int(k, pq) - ratio).abs() / ratio.max(1.0);
                worst = worst.max(diff);
            }
        }
        // Pascal-type recurrence of the binomial coefficient.
        for n in 1..=(if quick { 12 } else { 25 }) {
            for k in 1..n {
                let lhs = pq_binomial(n, k, pq).unwrap();
                let rhs = p.powi(k as i32) * pq_binomial(n - 1, k, pq).unwrap()
                    + q.powi((n - k) as i32) * pq_binomial(n - 1, k - 1, pq).unwrap();
                worst = worst.max((lhs - rhs).abs() / lhs.max(1.0));
            }
        }
        // Expansion against the product form.
        for n in 0..=(if quick { 8 } else { 16 }) {
            for &(x, y) in &[(0.3, 0.5), (0.0, 1.0), (0.9, 0.05), (1.0, 1.0)] {
                let expanded = binomial_expansion(1.0, 1.0, x, y, n, pq);
                let product = product_form(x, y, n, pq);
                worst = worst.max((expanded - product).abs() / product.abs().max(1.0));
            }
        }
    }
    result("pq-identities", worst, 1e-10)
}

fn partition_of_unity(quick: bool) -> GroupResult {
    let grid = uniform_grid(0.0, 1.0, if quick { 21 } else { 101 });
    let n_values: &[u32] = if quick { &[1, 2, 5, 10] } else { &[1, 2, 5, 10, 20, 40] };
    let mut worst = 0.0f64;
    for pq in pq_pairs() {
        for &n in n_values {
            for l in [0u32, 1, 3] {
                let config = OperatorConfig::new(n, l, 0.0, 0.0, pq).unwrap();
                for &x in &grid {
                    let weights = basis_weights(&config, x).unwrap();
                    let sum: f64 = weights.iter().sum();
                    worst = worst.max((sum - 1.0).abs());
                    for &w in &weights {
                        worst = worst.max(-w - 1e-15);
                    }
                }
            }
        }
    }
    result("partition-of-unity", worst, 1e-12)
}

fn moment_equivalence(quick: bool) -> GroupResult {
    let n_values: &[u32] = if quick { &[1, 2, 5, 10] } else { &[1, 2, 5, 10, 25] };
    let grid = uniform_grid(0.0, 1.0, 11);
    let mut worst = 0.0f64;
    for pq in pq_pairs() {
        for &n in n_values {
            for l in [0u32, 1, 3] {
                for &(alpha, beta) in &[(0.0, 0.0), (0.5, 1.0), (2.0, 2.0)] {
                    let config = OperatorConfig::new(n, l, alpha, beta, pq).unwrap();
                    for &x in &grid {
                        for order in 0..=2 {
                            let closed = ss_moment_closed(order, &config, x).unwrap();
                            let brute = moment_bruteforce(order, &config, x).unwrap();
                            worst = worst.max((closed - brute).abs());
                            let closed = ss_central_moment_closed(order, &config, x).unwrap();
                            let brute = central_moment_bruteforce(order, &config, x).unwrap();
                            worst = worst.max((closed - brute).abs());
                        }
                    }
                }
            }
        }
    }
    result("moment-equivalence", worst, 1e-10)
}

fn reduction_chain(quick: bool) -> GroupResult {
    let grid = uniform_grid(0.0, 1.0, if quick { 5 } else { 11 });
    let f = builtin("exp_neg").unwrap();
    let mut worst = 0.0f64;

    // Zero shifts collapse onto the plain operator.
    for &(n, l, p, q) in &[(3u32, 1u32, 0.9, 0.8), (6, 2, 0.95, 0.9), (5, 0, 1.0, 0.9)] {
        let pq = PQPair::new(p, q).unwrap();
        let config = OperatorConfig::new(n, l, 0.0, 0.0, pq).unwrap();
        for &x in &grid {
            let shifted = apply_stancu_schurer(&config, &f, x).unwrap();
            let plain = apply_bernstein_schurer(n, l, pq, &f, x).unwrap();
            worst = worst.max((shifted - plain).abs() / plain.abs().max(1.0));
        }
    }
    // p = 1 collapses onto the single-parameter operator.
    for &(n, l, q, alpha, beta) in &[(4u32, 1u32, 0.85, 0.5, 1.0), (7, 0, 0.9, 0.0, 0.0)] {
        let pq = PQPair::new(1.0, q).unwrap();
        let config = OperatorConfig::new(n, l, alpha, beta, pq).unwrap();
        for &x in &grid {
            let ours = apply_stancu_schurer(&config, &f, x).unwrap();
            let single = reference::q_stancu_schurer(n, l, q, alpha, beta, |t| f.eval(t), x);
            worst = worst.max((ours - single).abs());
        }
    }
    // p = q = 1, l = 0 collapses onto classical Bernstein.
    for n in [5u32, 12, 25] {
        let config = OperatorConfig::new(n, 0, 0.0, 0.0, PQPair::classical()).unwrap();
        for &x in &grid {
            let ours = apply_stancu_schurer(&config, &f, x).unwrap();
            let classical = reference::classical_bernstein(n, |t| f.eval(t), x);
            worst = worst.max((ours - classical).abs());
        }
    }
    result("reduction-chain", worst, 1e-12)
}

/// Runs every group; `quick` trims sweep sizes.
pub fn run(quick: bool) -> Vec<GroupResult> {
    vec![
        pq_identities(quick),
        partition_of_unity(quick),
        moment_equivalence(quick),
        reduction_chain(quick),
    ]
}
