//! Counting primitives indexed by cycle types.
//!
//! Every sum over `S_k` in this crate is taken over the `p(k)` cycle types
//! produced by [`integer_partitions`], weighted by [`conjugacy_class_size`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Cycle type of a permutation of `{1, …, k}`, stored as the counts
/// `(c_1, …, c_k)` where `c_i` is the number of cycles of length `i`.
///
/// The same shape doubles as the block-size type `(a_1, …, a_k)` of a set
/// partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// Builds a type from `counts[i - 1] = c_i`. The degree is `counts.len()`
    /// and must equal `Σ i·c_i`.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let weight: usize = counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
        if weight != counts.len() {
            return Err(Error::InvalidInput(format!(
                "type vector {counts:?} has weight {weight}, expected {}",
                counts.len()
            )));
        }
        Ok(Self { counts })
    }

    /// Builds the type whose cycle lengths are `lengths` (any order). Zero
    /// lengths are rejected.
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        if lengths.contains(&0) {
            return Err(Error::InvalidInput("cycle lengths must be positive".into()));
        }
        let k = lengths.iter().sum();
        let mut counts = vec![0; k];
        for &l in lengths {
            counts[l - 1] += 1;
        }
        Ok(Self { counts })
    }

    pub fn degree(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `c_i`, zero when `i` is out of range.
    pub fn count(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.counts.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Total number of cycles `c(τ) = Σ c_i`.
    pub fn cycle_count(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Cycle lengths in non-increasing order.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cycle_count());
        for (i, &c) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i + 1, c));
        }
        out
    }

    /// `(-1)^(k - c(τ))`.
    pub fn sign(&self) -> i32 {
        if (self.degree() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All cycle types of degree `k`, each exactly once, in reverse-lexicographic
/// order of the partition written with decreasing parts: `[k]`, `[k-1, 1]`,
/// …, `[1, …, 1]`. For `k = 0` the single empty type is returned.
pub fn integer_partitions(k: usize) -> Vec<CycleType> {
    fn walk(rem: usize, max: usize, parts: &mut Vec<usize>, k: usize, out: &mut Vec<CycleType>) {
        if rem == 0 {
            let mut counts = vec![0; k];
            for &p in parts.iter() {
                counts[p - 1] += 1;
            }
            out.push(CycleType { counts });
            return;
        }
        for first in (1..=rem.min(max)).rev() {
            parts.push(first);
            walk(rem - first, first, parts, k, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    walk(k, k, &mut Vec::new(), k, &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `binom(n, r)` for any integer `n` (negative upper arguments follow the
/// generalized definition `n(n-1)…(n-r+1)/r!`).
pub fn binomial(n: &BigInt, r: usize) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..r {
        num *= n - BigInt::from(i);
    }
    // r! always divides a product of r consecutive integers
    num / factorial(r)
}

/// Exact integer division, failing with an integrity error naming `what`.
pub fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::Integrity(format!("{what}: division by zero")));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Integrity(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(q)
}

/// Exact rational to integer conversion.
pub fn rational_to_integer(x: &BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Integrity(format!("{what}: {x} is not an integer")));
    }
    Ok(x.to_integer())
}

/// `k! / Π i^{c_i} c_i!`: the number of permutations of the given type.
pub fn conjugacy_class_size(t: &CycleType) -> BigInt {
    let mut den = BigInt::one();
    for (idx, &c) in t.counts.iter().enumerate() {
        let i = BigInt::from(idx + 1);
        den *= num_traits::pow(i, c) * factorial(c);
    }
    factorial(t.degree()) / den
}

/// `k! / Π (i!)^{a_i} a_i!`: the number of set partitions of `{1, …, k}` with
/// `a_i` blocks of size `i`.
pub fn set_partition_type_count(a: &CycleType) -> BigInt {
    let mut den = BigInt::one();
    for (idx, &c) in a.counts.iter().enumerate() {
        den *= num_traits::pow(factorial(idx + 1), c) * factorial(c);
    }
    factorial(a.degree()) / den
}

/// Unsigned Stirling number of the first kind: permutations of `S_k` with
/// exactly `i` cycles. Zero when `i > k`, or `i = 0 < k`.
pub fn stirling_first_unsigned(k: usize, i: usize) -> BigInt {
    if i > k {
        return BigInt::zero();
    }
    // row[j] = c(n, j)
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for n in 1..=k {
        for j in (1..=n).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = &row[j - 1] + prev * (n - 1);
        }
        row[0] = BigInt::zero();
    }
    row.swap_remove(i)
}

/// Number of permutations of `S_k` with exactly `i` cycles, all of length
/// divisible by `p`. Zero unless `p | k`.
pub fn divisible_cycle_count(k: usize, p: usize, i: usize) -> Result<BigInt> {
    if p == 0 {
        return Err(Error::InvalidInput("divisor p must be positive".into()));
    }
    if !k.is_multiple_of(p) {
        return Ok(BigInt::zero());
    }
    Ok(integer_partitions(k)
        .iter()
        .filter(|t| t.cycle_count() == i)
        .filter(|t| (1..=k).all(|len| t.count(len) == 0 || len % p == 0))
        .map(conjugacy_class_size)
        .sum())
}

fn check_weights(k: usize, weights: &[BigRational]) -> Result<()> {
    if weights.len() < k {
        return Err(Error::InvalidInput(format!(
            "cycle index of degree {k} needs {k} weights, got {}",
            weights.len()
        )));
    }
    Ok(())
}

/// `Σ_{Σ i c_i = k} N(c) t_1^{c_1} ⋯ t_k^{c_k}` by direct summation over the
/// cycle types of degree `k`. `weights[i - 1]` is `t_i`.
pub fn cycle_index_eval(k: usize, weights: &[BigRational]) -> Result<BigRational> {
    check_weights(k, weights)?;
    let mut total = BigRational::zero();
    for t in integer_partitions(k) {
        let mut term = BigRational::from_integer(conjugacy_class_size(&t));
        for (idx, &c) in t.counts().iter().enumerate() {
            if c > 0 {
                term *= num_traits::pow(weights[idx].clone(), c);
            }
        }
        total += term;
    }
    Ok(total)
}

/// The same quantity as [`cycle_index_eval`], computed as
/// `k! · [u^k] exp(t_1 u + t_2 u^2/2 + ⋯)` with truncated series arithmetic.
pub fn cycle_index_eval_egf(k: usize, weights: &[BigRational]) -> Result<BigRational> {
    check_weights(k, weights)?;
    let mut inner = vec![BigRational::zero(); k + 1];
    for i in 1..=k {
        inner[i] = &weights[i - 1] / BigRational::from_integer(BigInt::from(i));
    }
    let series = Polynomial::new(inner).truncated(k).exp_series(k)?;
    Ok(series.coeff(k)? * BigRational::from_integer(factorial(k)))
}

/// Euler's totient by trial factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut f = 2;
    while f * f <= m {
        if m.is_multiple_of(f) {
            while m.is_multiple_of(f) {
                m /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Sign helper: `(-1)^e` as a `BigInt`.
pub(crate) fn neg_one_pow(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
