//! Self-checking identity suites. Each suite compares two independent
//! computations of the same quantity over a range of parameters and reports
//! every disagreement.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apps::{character_gf_check, divisible_cycle_gf_check};
use crate::combinatorics::{
    binomial, cycle_index_eval, cycle_index_eval_egf, divisors, factorial, integer_partitions,
    neg_one_pow, set_partition_type_count, CycleType,
};
use crate::error::Result;
use crate::lattice::{enumerate_set_partitions, mobius_closed, mobius_recursive_upset};
use crate::sieve::{weight_bounded, weight_distinct};

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const EGF_SEED: u64 = 0xE6F;

/// `N'(a) Π (i!)^{a_i} (-1)^{m-1} (m-1)!` for a set-partition type `a` with
/// `m` blocks: the contribution of all partitions of that type to a kernel
/// sum against the top of the lattice.
fn kernel_term(a: &CycleType) -> BigInt {
    let m = a.cycle_count();
    let mut blocks = BigInt::one();
    for (idx, &c) in a.counts().iter().enumerate() {
        blocks *= num_traits::pow(factorial(idx + 1), c);
    }
    set_partition_type_count(a) * blocks * neg_one_pow(m - 1) * factorial(m - 1)
}

/// Kernel over partitions with every block of size at most `j` equals
/// `(k-1)! (1 - (j+1)[(j+1) | k])`.
pub fn bounded_kernel(k_max: usize) -> IdentityReport {
    let mut r = IdentityReport::new("bounded multiplicity kernel");
    for k in 1..=k_max {
        for j in 1..=k + 1 {
            let lhs: BigInt = integer_partitions(k)
                .iter()
                .filter(|a| a.lengths()[0] <= j)
                .map(kernel_term)
                .sum();
            let indicator = if k % (j + 1) == 0 { BigInt::from(j + 1) } else { BigInt::zero() };
            let rhs = factorial(k - 1) * (BigInt::one() - indicator);
            r.check(lhs == rhs, || format!("k={k} j={j}: {lhs} != {rhs}"));
        }
    }
    r
}

/// Kernel over partitions with exactly `d` blocks equals
/// `(k-1)! (-1)^{d-1} binom(k, d)`.
pub fn distinct_kernel(k_max: usize) -> IdentityReport {
    let mut r = IdentityReport::new("distinct element kernel");
    for k in 1..=k_max {
        for d in 1..=k {
            let lhs: BigInt = integer_partitions(k)
                .iter()
                .filter(|a| a.cycle_count() == d)
                .map(kernel_term)
                .sum();
            let rhs = factorial(k - 1) * neg_one_pow(d - 1) * binomial(&BigInt::from(k), d);
            r.check(lhs == rhs, || format!("k={k} d={d}: {lhs} != {rhs}"));
        }
    }
    r
}

/// `w_1(τ)` and `w̄_k(τ)` both equal the sign of `τ`.
pub fn sign_weights(k_max: usize) -> IdentityReport {
    let mut r = IdentityReport::new("w_1 and top distinct weight are the sign");
    for k in 1..=k_max {
        for t in integer_partitions(k) {
            let sign = BigInt::from(t.sign());
            let l = t.lengths();
            let (w1, wk) = (weight_bounded(&l, 1), weight_distinct(&l, k));
            r.check(w1 == sign && wk == sign, || {
                format!("type {l:?}: w_1={w1} w̄_k={wk} sign={sign}")
            });
        }
    }
    r
}

/// Closed-form Möbius values against the recursive definition on `Π_k`.
pub fn mobius_agreement(k_max: usize) -> Result<IdentityReport> {
    let mut r = IdentityReport::new("Möbius closed form vs recursion");
    for k in 1..=k_max {
        let all = enumerate_set_partitions(k);
        for t in &all {
            let upset = mobius_recursive_upset(t);
            for (s, rec) in &upset {
                let closed = mobius_closed(t, s)?;
                r.check(&closed == rec, || format!("μ({t}, {s}): closed {closed}, recursive {rec}"));
            }
        }
    }
    Ok(r)
}

/// Cycle index by direct summation against the exponential-series route, on
/// seeded random rational weights.
pub fn egf_two_paths(k_max: usize) -> Result<IdentityReport> {
    let mut r = IdentityReport::new("cycle index direct sum vs exponential series");
    let mut rng = ChaCha8Rng::seed_from_u64(EGF_SEED);
    for k in 0..=k_max {
        for _ in 0..4 {
            let weights: Vec<BigRational> = (0..k)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.random_range(-6i64..=6)),
                        BigInt::from(rng.random_range(1i64..=4)),
                    )
                })
                .collect();
            let (a, b) = (cycle_index_eval(k, &weights)?, cycle_index_eval_egf(k, &weights)?);
            r.check(a == b, || format!("k={k} weights={weights:?}: {a} != {b}"));
        }
    }
    Ok(r)
}

/// `Σ_i p(k, i) q^i = k! binom(q/p + k/p - 1, k/p)` for each `p` in `primes`,
/// every multiple `k ≤ k_max` of `p`, and `q ∈ {p, 2p, 3p, 4p}`.
pub fn divisible_cycle_series(primes: &[usize], k_max: usize) -> Result<IdentityReport> {
    let mut r = IdentityReport::new("divisible cycle generating function");
    for &p in primes {
        for k in (p..=k_max).step_by(p) {
            for q in (p..=4 * p).step_by(p) {
                let (lhs, rhs) = divisible_cycle_gf_check(k, p, q)?;
                r.check(lhs == rhs, || format!("k={k} p={p} q={q}: {lhs} != {rhs}"));
            }
        }
    }
    Ok(r)
}

/// The cycle-index identity behind the zero-sum count, for `n ≤ n_max`,
/// every `e | n`, `j ≤ j_max`, `k ≤ k_max`.
pub fn cyclic_series(n_max: u64, j_max: u64, k_max: usize) -> Result<IdentityReport> {
    let mut r = IdentityReport::new("cyclic character series");
    for n in 1..=n_max {
        for e in divisors(n) {
            for j in 1..=j_max {
                for k in 0..=k_max {
                    let (lhs, rhs) = character_gf_check(n, e, j, k)?;
                    r.check(lhs == rhs, || format!("n={n} e={e} j={j} k={k}: {lhs} != {rhs}"));
                }
            }
        }
    }
    Ok(r)
}

/// Every suite, in a fixed order. The lattice suite is capped at `k = 6`
/// (`Π_6` already has 203 elements) and the divisible-cycle suite runs to
/// `k_max + 2`.
pub fn run_all(k_max: usize) -> Result<Vec<IdentityReport>> {
    Ok(vec![
        bounded_kernel(k_max),
        distinct_kernel(k_max),
        sign_weights(k_max),
        mobius_agreement(k_max.min(6))?,
        egf_two_paths(k_max)?,
        divisible_cycle_series(&[2, 3, 5], k_max + 2)?,
        cyclic_series(8, 4, k_max)?,
    ])
}
