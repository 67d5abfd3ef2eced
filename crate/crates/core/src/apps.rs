//! Two applications of the sieve: partitions of field elements into nonzero
//! parts, and the equinumerosity of necklaces with zero-sum multisets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial, cycle_index_eval, divisors, euler_phi, exact_div, factorial, rational_to_integer,
};
use crate::error::{Error, Result};
use crate::field::{linear_solution_count, FieldSpec, FqElement};
use crate::poly::Polynomial;
use crate::sieve::{
    count_multisets, numeric_labels, CycleTypeOracle, ExplicitSet, SymmetricSet,
    ENUMERATION_CEILING,
};

/// `v(b) = q - 1` if `b = 0`, else `-1`.
pub fn v_of(field: &FieldSpec, b: &FqElement) -> BigInt {
    if b.is_zero() {
        BigInt::from(field.q() - 1)
    } else {
        BigInt::from(-1)
    }
}

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

/// Correction term `binom(q/p + m - 1, m)` with `m = ⌊k/p⌋`.
fn divisible_term(field: &FieldSpec, k: usize) -> BigInt {
    let p = field.p() as usize;
    let m = k / p;
    binomial(&big(field.q() as usize / p + m - 1), m)
}

/// `P_k(b)`: multisets of `k` nonzero elements of `F_q` summing to `b`, by
/// the closed formula
///
/// ```text
/// P_k(b) = ( binom(q+k-2, k) + s · v(b) · binom(q/p + ⌊k/p⌋ - 1, ⌊k/p⌋) ) / q
/// ```
///
/// with `s = 1` when `k ≡ 0 (mod p)`, `s = -1` when `k ≡ 1 (mod p)`, else 0.
pub fn partition_count_closed(field: &FieldSpec, k: usize, b: &FqElement) -> Result<BigInt> {
    let q = field.q() as usize;
    let p = field.p() as usize;
    let mut num = binomial(&big(q + k - 2), k);
    match k % p {
        0 => num += v_of(field, b) * divisible_term(field, k),
        1 => num -= v_of(field, b) * divisible_term(field, k),
        _ => {}
    }
    exact_div(&num, &big(q), "partition count over q")
}

/// `P̂_k(b)` (zero parts allowed) in closed form:
/// `( binom(q+k-1, k) + [p | k] · v(b) · binom(q/p + k/p - 1, k/p) ) / q`.
pub fn partition_count_hat_closed(field: &FieldSpec, k: usize, b: &FqElement) -> Result<BigInt> {
    let q = field.q() as usize;
    let mut num = binomial(&big(q + k - 1), k);
    if k.is_multiple_of(field.p() as usize) {
        num += v_of(field, b) * divisible_term(field, k);
    }
    exact_div(&num, &big(q), "hat partition count over q")
}

/// `P̂_k(b)` by the sieve: `X = {x ∈ F_q^k : Σ x_i = b}`, and for a
/// permutation with cycle lengths `ℓ_1, …, ℓ_m`, `|X_τ|` is the number of
/// solutions of `Σ ℓ_i y_i = b` over `F_q`. Cross-checked against
/// [`partition_count_hat_closed`].
pub fn partition_count_hat_sieve(field: &FieldSpec, k: usize, b: &FqElement) -> Result<BigInt> {
    let (f, target) = (field.clone(), b.clone());
    let oracle = CycleTypeOracle::new(k, move |lengths| {
        let coeffs: Vec<i64> = lengths.iter().map(|&l| l as i64).collect();
        linear_solution_count(&f, &coeffs, &target)
    });
    let sieve = count_multisets(&SymmetricSet::Oracle(oracle))?;
    let closed = partition_count_hat_closed(field, k, b)?;
    if sieve != closed {
        return Err(Error::Integrity(format!(
            "sieve gives P̂_{k}({b}) = {sieve}, closed form gives {closed}"
        )));
    }
    Ok(sieve)
}

/// `P_k(b) = P̂_k(b) - P̂_{k-1}(b)` with both terms from the sieve.
pub fn partition_count_sieve(field: &FieldSpec, k: usize, b: &FqElement) -> Result<BigInt> {
    let hat = partition_count_hat_sieve(field, k, b)?;
    if k == 0 {
        return Ok(hat);
    }
    Ok(hat - partition_count_hat_sieve(field, k - 1, b)?)
}

/// `P_k(b)` by listing every multiset of `k` nonzero elements.
pub fn partition_count_brute(field: &FieldSpec, k: usize, b: &FqElement) -> Result<BigInt> {
    let nonzero = field.q() as usize - 1;
    let size = if nonzero == 0 {
        BigInt::from(u8::from(k == 0))
    } else {
        binomial(&big(nonzero + k - 1), k)
    };
    if size > BigInt::from(ENUMERATION_CEILING) {
        return Err(Error::Refused(format!(
            "{size} multisets exceed the enumeration ceiling"
        )));
    }
    let elements = field.enumerate_elements();
    // non-decreasing index sequences over 1..q
    let mut count = 0u64;
    let mut idx = vec![1usize; k];
    if k > 0 && nonzero == 0 {
        return Ok(BigInt::zero());
    }
    loop {
        let sum = idx
            .iter()
            .fold(field.zero(), |acc, &i| field.add(&acc, &elements[i]));
        if sum == *b {
            count += 1;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < nonzero) else {
            break;
        };
        idx[pos] += 1;
        let v = idx[pos];
        for x in &mut idx[pos + 1..] {
            *x = v;
        }
    }
    Ok(BigInt::from(count))
}

fn check_power_ceiling(base: u64, exp: u64, what: &str) -> Result<()> {
    match base.checked_pow(exp as u32) {
        Some(v) if exp <= u32::MAX as u64 && (v as u128) <= ENUMERATION_CEILING => Ok(()),
        _ => Err(Error::Refused(format!(
            "{what}: {base}^{exp} exceeds the enumeration ceiling of {ENUMERATION_CEILING}"
        ))),
    }
}

/// Necklaces of length `n` over `q` colours:
/// `(1/n) Σ_{e | n} φ(e) q^{n/e}`.
pub fn necklace_count(n: u64, q: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidInput("necklace length must be positive".into()));
    }
    let sum: BigInt = divisors(n)
        .into_iter()
        .map(|e| big(euler_phi(e)) * num_traits::pow(big(q), (n / e) as usize))
        .sum();
    exact_div(&sum, &big(n), "necklace sum over n")
}

/// Necklaces counted as strings that are lexicographically minimal among
/// their rotations.
pub fn necklace_count_brute(n: u64, q: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidInput("necklace length must be positive".into()));
    }
    check_power_ceiling(q, n, "necklace enumeration")?;
    if q == 0 {
        return Ok(BigInt::zero());
    }
    let n = n as usize;
    let total = q.pow(n as u32);
    let mut count = 0u64;
    let mut s = vec![0u64; n];
    for idx in 0..total {
        let mut rest = idx;
        for slot in s.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        let minimal = (1..n).all(|r| {
            let rotated = s[r..].iter().chain(&s[..r]);
            s.iter().le(rotated)
        });
        if minimal {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

fn check_zerosum_args(n: u64, q: u64) -> Result<()> {
    if n == 0 || q == 0 {
        return Err(Error::InvalidInput("n and q must be positive".into()));
    }
    Ok(())
}

/// `k`-multisets over `Z/nZ` summing to zero with every multiplicity at most
/// `q - 1`:
///
/// ```text
/// (1/n) Σ_{e | n, e | k} φ(e) [u^k] (1 - u^e)^{-n/e} (1 - u^{lcm(e,q)})^{gcd(e,q)·n/e}
/// ```
pub fn zerosum_bounded_count(n: u64, q: u64, k: u64) -> Result<BigInt> {
    check_zerosum_args(n, q)?;
    if k > n * (q - 1) {
        return Ok(BigInt::zero());
    }
    let kk = k as usize;
    let mut sum = BigInt::zero();
    for e in divisors(n).into_iter().filter(|e| k.is_multiple_of(*e)) {
        let lcm = e.lcm(&q);
        let series = &Polynomial::binomial_series(e as usize, -((n / e) as i64), kk)?
            * &Polynomial::binomial_series(lcm as usize, (e.gcd(&q) * n / e) as i64, kk)?;
        sum += big(euler_phi(e)) * series.integer_coeff(kk)?;
    }
    exact_div(&sum, &big(n), "zero-sum character sum over n")
}

fn multiplicity_vectors(n: u64, q: u64, mut visit: impl FnMut(u64, u64)) -> Result<()> {
    check_power_ceiling(q, n, "multiplicity-vector enumeration")?;
    let total = q.pow(n as u32);
    for idx in 0..total {
        let mut rest = idx;
        let (mut size, mut weighted) = (0u64, 0u64);
        for element in 0..n {
            let m = rest % q;
            rest /= q;
            size += m;
            weighted += m * element;
        }
        visit(size, weighted % n);
    }
    Ok(())
}

/// [`zerosum_bounded_count`] by enumerating multiplicity vectors.
pub fn zerosum_bounded_brute(n: u64, q: u64, k: u64) -> Result<BigInt> {
    check_zerosum_args(n, q)?;
    let mut count = 0u64;
    multiplicity_vectors(n, q, |size, residue| {
        if size == k && residue == 0 {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

/// Total number of zero-sum multisets with multiplicities below `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSumTotal {
    pub count: BigInt,
    /// `gcd(n, q) = 1`. Only then does the count equal the necklace count.
    pub coprime: bool,
}

/// `(1/n) Σ_{e | n, gcd(e, q) = 1} φ(e) q^{n/e}`. This counts zero-sum
/// multisets for every `n`, `q`; when `gcd(n, q) = 1` the restriction on `e`
/// is vacuous and the value is the necklace count.
pub fn zerosum_total(n: u64, q: u64) -> Result<ZeroSumTotal> {
    check_zerosum_args(n, q)?;
    let sum: BigInt = divisors(n)
        .into_iter()
        .filter(|e| e.gcd(&q) == 1)
        .map(|e| big(euler_phi(e)) * num_traits::pow(big(q), (n / e) as usize))
        .sum();
    Ok(ZeroSumTotal {
        count: exact_div(&sum, &big(n), "zero-sum total over n")?,
        coprime: n.gcd(&q) == 1,
    })
}

/// Zero-sum multisets with multiplicities below `q`, by enumerating
/// multiplicity vectors.
pub fn zerosum_brute(n: u64, q: u64) -> Result<BigInt> {
    check_zerosum_args(n, q)?;
    let mut count = 0u64;
    multiplicity_vectors(n, q, |_, residue| {
        if residue == 0 {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

/// `{x ∈ (Z/nZ)^k : Σ x_i ≡ 0}` as an explicit set labelled `"0"…"n-1"`.
pub fn zero_sum_set(n: usize, k: usize) -> Result<ExplicitSet> {
    if n == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    ExplicitSet::from_predicate(numeric_labels(n), k, |t| t.iter().sum::<usize>() % n == 0)
}

/// Both sides of the cycle-index identity behind the zero-sum count: with
/// `t_i = (1 - (j+1)[(j+1) | i]) · n · [e | i]`,
///
/// ```text
/// Σ_{Σ i c_i = k} N(c) Π t_i^{c_i}  =  k! [u^k] (1 - u^e)^{-n/e} (1 - u^{lcm(e,j+1)})^{gcd(e,j+1)·n/e}
/// ```
///
/// Returns `(cycle-index side, series side)`.
pub fn character_gf_check(n: u64, e: u64, j: u64, k: usize) -> Result<(BigInt, BigInt)> {
    if e == 0 || !n.is_multiple_of(e) {
        return Err(Error::InvalidInput(format!("e = {e} must divide n = {n}")));
    }
    if j == 0 {
        return Err(Error::InvalidInput("j must be at least 1".into()));
    }
    let jj = j + 1;
    let weights: Vec<BigRational> = (1..=k as u64)
        .map(|i| {
            let bound = if i % jj == 0 { big(1) - big(jj) } else { big(1) };
            let divisible = if i % e == 0 { big(n) } else { big(0) };
            BigRational::from_integer(bound * divisible)
        })
        .collect();
    let lhs = rational_to_integer(&cycle_index_eval(k, &weights)?, "cycle index")?;
    let lcm = e.lcm(&jj);
    let series = &Polynomial::binomial_series(e as usize, -((n / e) as i64), k)?
        * &Polynomial::binomial_series(lcm as usize, (e.gcd(&jj) * n / e) as i64, k)?;
    let rhs = factorial(k) * series.integer_coeff(k)?;
    Ok((lhs, rhs))
}

/// `Σ_i p(k, i) q^i` against `k! · binom(q/p + k/p - 1, k/p)`, where
/// `p(k, i)` counts permutations with `i` cycles all of length divisible by
/// `p`. Requires `p | k` and `p | q`.
pub fn divisible_cycle_gf_check(k: usize, p: usize, q: usize) -> Result<(BigInt, BigInt)> {
    if p == 0 || !k.is_multiple_of(p) || !q.is_multiple_of(p) {
        return Err(Error::InvalidInput(format!(
            "need p | k and p | q (k = {k}, p = {p}, q = {q})"
        )));
    }
    let mut lhs = BigInt::zero();
    let mut qi = BigInt::one();
    for i in 1..=k {
        qi *= q;
        lhs += crate::combinatorics::divisible_cycle_count(k, p, i)? * &qi;
    }
    let rhs = factorial(k) * binomial(&big(q / p + k / p - 1), k / p);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::count_multisets_bounded;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn v_values() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(v_of(&f, &f.zero()), b(4));
        assert_eq!(v_of(&f, &f.one()), b(-1));
        let total: BigInt = f.enumerate_elements().iter().map(|x| v_of(&f, x) + 1).sum();
        assert_eq!(total, b(5));
    }

    #[test]
    fn partition_examples() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        for x in f5.enumerate_elements() {
            assert_eq!(partition_count_closed(&f5, 2, &x).unwrap(), b(2));
            assert_eq!(partition_count_brute(&f5, 2, &x).unwrap(), b(2));
        }
        let f3 = FieldSpec::new(3, 1).unwrap();
        let zero = f3.zero();
        assert_eq!(partition_count_closed(&f3, 3, &zero).unwrap(), b(2));
        assert_eq!(partition_count_closed(&f3, 4, &zero).unwrap(), b(1));
        assert_eq!(partition_count_brute(&f3, 4, &zero).unwrap(), b(1));
        assert_eq!(partition_count_hat_sieve(&f3, 3, &zero).unwrap(), b(4));
        assert_eq!(partition_count_hat_sieve(&f3, 4, &zero).unwrap(), b(5));
        assert_eq!(partition_count_sieve(&f3, 4, &zero).unwrap(), b(1));
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(partition_count_brute(&f2, 3, &f2.one()).unwrap(), b(1));
        assert_eq!(partition_count_brute(&f2, 0, &f2.zero()).unwrap(), b(1));
        assert_eq!(partition_count_brute(&f2, 0, &f2.one()).unwrap(), b(0));
        assert_eq!(partition_count_hat_sieve(&f2, 0, &f2.zero()).unwrap(), b(1));
        assert_eq!(partition_count_hat_sieve(&f2, 0, &f2.one()).unwrap(), b(0));
    }

    #[test]
    fn partitions_agree_on_small_fields() {
        for (p, a) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
            let f = FieldSpec::new(p, a).unwrap();
            for k in 0..=5 {
                for x in f.enumerate_elements() {
                    let closed = partition_count_closed(&f, k, &x).unwrap();
                    assert_eq!(partition_count_sieve(&f, k, &x).unwrap(), closed);
                    assert_eq!(partition_count_brute(&f, k, &x).unwrap(), closed, "q={} k={k} b={x}", f.q());
                }
            }
        }
    }

    #[test]
    fn necklaces() {
        assert_eq!(necklace_count(3, 2).unwrap(), b(4));
        assert_eq!(necklace_count(4, 3).unwrap(), b(24));
        assert_eq!(necklace_count(1, 7).unwrap(), b(7));
        assert_eq!(necklace_count_brute(3, 2).unwrap(), b(4));
        assert_eq!(necklace_count_brute(2, 2).unwrap(), b(3));
        assert_eq!(necklace_count_brute(1, 5).unwrap(), b(5));
        assert_eq!(necklace_count_brute(4, 3).unwrap(), b(24));
        assert!(necklace_count(0, 2).is_err());
        assert!(matches!(necklace_count_brute(30, 2), Err(Error::Refused(_))));
    }

    #[test]
    fn zero_sum_counts() {
        assert_eq!(zerosum_bounded_count(3, 2, 2).unwrap(), b(1));
        assert_eq!(zerosum_bounded_count(5, 3, 0).unwrap(), b(1));
        assert_eq!(zerosum_bounded_count(4, 3, 4).unwrap(), b(6));
        assert_eq!(zerosum_bounded_brute(4, 3, 4).unwrap(), b(6));
        assert_eq!(zerosum_bounded_count(3, 2, 9).unwrap(), b(0));
        assert_eq!(zerosum_total(3, 2).unwrap(), ZeroSumTotal { count: b(4), coprime: true });
        assert_eq!(zerosum_total(4, 3).unwrap().count, b(24));
        assert_eq!(zerosum_brute(3, 2).unwrap(), b(4));
        assert_eq!(zerosum_brute(2, 3).unwrap(), b(6));
        for q in 1..=5 {
            assert_eq!(zerosum_brute(1, q).unwrap(), b(q as i64));
            assert_eq!(zerosum_total(1, q).unwrap().count, b(q as i64));
        }
    }

    #[test]
    fn non_coprime_total_differs_from_necklaces() {
        let t = zerosum_total(2, 2).unwrap();
        assert!(!t.coprime);
        assert_eq!(t.count, b(2));
        assert_eq!(zerosum_brute(2, 2).unwrap(), b(2));
        assert_eq!(necklace_count(2, 2).unwrap(), b(3));
        // the coprime-restricted sum still counts zero-sum multisets
        for (n, q) in [(4, 2), (6, 3), (6, 4), (4, 4)] {
            assert_eq!(zerosum_total(n, q).unwrap().count, zerosum_brute(n, q).unwrap());
        }
    }

    #[test]
    fn explicit_sieve_matches_series_formula() {
        for n in 1..=4usize {
            for q in 2..=3u64 {
                for k in 0..=4usize {
                    let x = SymmetricSet::Explicit(zero_sum_set(n, k).unwrap());
                    let sieve = count_multisets_bounded(&x, (q - 1) as usize)
                        .or_else(|_| count_multisets(&x))
                        .unwrap();
                    assert_eq!(sieve, zerosum_bounded_count(n as u64, q, k as u64).unwrap(), "n={n} q={q} k={k}");
                }
            }
        }
    }

    #[test]
    fn character_gf_examples() {
        let (l, r) = character_gf_check(4, 2, 1, 0).unwrap();
        assert_eq!((l, r), (b(1), b(1)));
        assert_eq!(character_gf_check(1, 1, 5, 3).unwrap(), (b(6), b(6)));
        assert_eq!(character_gf_check(6, 2, 1, 4).unwrap(), (b(72), b(72)));
        assert!(character_gf_check(6, 4, 1, 4).is_err());
        assert!(character_gf_check(6, 2, 0, 4).is_err());
    }

    #[test]
    fn divisible_cycle_gf() {
        assert_eq!(divisible_cycle_gf_check(4, 2, 2).unwrap().0, b(6 * 2 + 3 * 4));
        let (l, r) = divisible_cycle_gf_check(6, 3, 9).unwrap();
        assert_eq!(l, r);
        assert!(divisible_cycle_gf_check(5, 2, 2).is_err());
    }
}
