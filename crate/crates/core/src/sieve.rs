//! Sieve formulas for restricted multisets.
//!
//! For a symmetric `X ⊆ D^k` and a permutation `τ`, `X_τ` is the set of tuples
//! in `X` that are constant on every cycle of `τ`. Its size depends only on the
//! cycle type of `τ`, so every count below is a sum of `p(k)` terms
//!
//! ```text
//!   (1/k!) Σ_{cycle types τ}  weight(τ) · C(τ) · |X_τ|
//! ```
//!
//! with the weight selecting which multisets are counted:
//! - all multisets: weight 1
//! - every multiplicity at most `j`: `w_j(τ) = Π_i (1 - (j+1)·[(j+1) | ℓ_i])`
//! - exactly `d` distinct elements: `w̄_d(τ) = [x^d] Π_i (1 - (1-x)^{ℓ_i})`
//!
//! and `Σ sign(τ) C(τ) |X_τ|` counts the tuples with pairwise distinct entries.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    conjugacy_class_size, exact_div, factorial, integer_partitions, CycleType,
};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_set_partitions, mobius_closed, refines, SetPartition};
use crate::poly::Polynomial;
use crate::ring::ExactRing;

/// Largest `|D|^k` that will be enumerated.
pub const ENUMERATION_CEILING: u128 = 10_000_000;

pub(crate) fn check_ceiling(ground: usize, k: usize) -> Result<()> {
    let size = (ground as u128).checked_pow(k as u32);
    match size {
        Some(s) if s <= ENUMERATION_CEILING => Ok(()),
        _ => Err(Error::Refused(format!(
            "|D|^k = {ground}^{k} exceeds the enumeration ceiling of {ENUMERATION_CEILING}"
        ))),
    }
}

/// Labels `"0"`, `"1"`, …, `"n-1"`.
pub fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every distinct rearrangement of `t`, in lexicographic order.
pub fn orbit(t: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = t.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `true` if `t` takes one value on each run of coordinates whose lengths are
/// `lengths` (the index blocks of a canonical permutation of that type).
fn constant_on_runs(t: &[usize], lengths: &[usize]) -> bool {
    let mut start = 0;
    for &l in lengths {
        let first = t[start];
        if t[start + 1..start + l].iter().any(|&v| v != first) {
            return false;
        }
        start += l;
    }
    true
}

fn constant_on_labels(t: &[usize], labels: &[usize], n_blocks: usize) -> bool {
    let mut rep: Vec<Option<usize>> = vec![None; n_blocks];
    for (x, &b) in t.iter().zip(labels) {
        match rep[b] {
            None => rep[b] = Some(*x),
            Some(v) if v != *x => return false,
            _ => {}
        }
    }
    true
}

fn sorted_lengths(lengths: &[usize]) -> Vec<usize> {
    let mut l = lengths.to_vec();
    l.sort_unstable_by(|a, b| b.cmp(a));
    l
}

/// A symmetric subset of `D^k` listed tuple by tuple. Tuples are stored as
/// indices into the ground set, whose declaration order is the total order
/// used for canonical multiset representatives.
pub struct ExplicitSet {
    ground_set: Vec<String>,
    k: usize,
    tuples: BTreeSet<Vec<usize>>,
    fixed: OnceLock<HashMap<Vec<usize>, BigInt>>,
}

impl Clone for ExplicitSet {
    fn clone(&self) -> Self {
        Self {
            ground_set: self.ground_set.clone(),
            k: self.k,
            tuples: self.tuples.clone(),
            fixed: OnceLock::new(),
        }
    }
}

impl PartialEq for ExplicitSet {
    fn eq(&self, other: &Self) -> bool {
        self.ground_set == other.ground_set && self.k == other.k && self.tuples == other.tuples
    }
}

impl Eq for ExplicitSet {}

impl fmt::Debug for ExplicitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExplicitSet")
            .field("ground_set", &self.ground_set)
            .field("k", &self.k)
            .field("tuples", &self.tuples.len())
            .finish()
    }
}

impl ExplicitSet {
    fn validated(
        ground_set: Vec<String>,
        k: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<(Vec<String>, BTreeSet<Vec<usize>>)> {
        let labels: BTreeSet<&String> = ground_set.iter().collect();
        if labels.len() != ground_set.len() {
            return Err(Error::InvalidInput("ground set has repeated labels".into()));
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != k {
                return Err(Error::InvalidInput(format!(
                    "tuple {t:?} has length {}, expected {k}",
                    t.len()
                )));
            }
            if let Some(&bad) = t.iter().find(|&&x| x >= ground_set.len()) {
                return Err(Error::InvalidInput(format!(
                    "tuple {t:?} uses index {bad} outside the ground set of size {}",
                    ground_set.len()
                )));
            }
            set.insert(t);
        }
        Ok((ground_set, set))
    }

    /// Builds the set and verifies symmetry by closure under the generators
    /// `(0 1)` and `(0 1 … k-1)` of `S_k`.
    pub fn new(
        ground_set: Vec<String>,
        k: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let (ground_set, tuples) = Self::validated(ground_set, k, tuples)?;
        let set = Self { ground_set, k, tuples, fixed: OnceLock::new() };
        set.check_symmetric()?;
        Ok(set)
    }

    /// Builds the orbit union of `tuples` under coordinate permutation.
    pub fn symmetrized(
        ground_set: Vec<String>,
        k: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let (ground_set, seeds) = Self::validated(ground_set, k, tuples)?;
        let mut closed = BTreeSet::new();
        for t in &seeds {
            if !closed.contains(t) {
                closed.extend(orbit(t));
            }
        }
        Ok(Self { ground_set, k, tuples: closed, fixed: OnceLock::new() })
    }

    /// Like [`ExplicitSet::new`] / [`ExplicitSet::symmetrized`] but with
    /// tuples spelled as labels.
    pub fn from_labels(
        ground_set: Vec<String>,
        k: usize,
        tuples: &[Vec<String>],
        symmetrize: bool,
    ) -> Result<Self> {
        let index: HashMap<&str, usize> = ground_set
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut idx_tuples = Vec::with_capacity(tuples.len());
        for t in tuples {
            let row = t
                .iter()
                .map(|l| {
                    index.get(l.as_str()).copied().ok_or_else(|| {
                        Error::InvalidInput(format!("label {l:?} is not in the ground set"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            idx_tuples.push(row);
        }
        if symmetrize {
            Self::symmetrized(ground_set, k, idx_tuples)
        } else {
            Self::new(ground_set, k, idx_tuples)
        }
    }

    /// `D^k` over the labels `"0"`, …, `"m-1"`.
    pub fn full(m: usize, k: usize) -> Result<Self> {
        Self::from_predicate(numeric_labels(m), k, |_| true)
    }

    /// The tuples of `D^k` satisfying `keep`, which must be a symmetric
    /// predicate (checked).
    pub fn from_predicate(
        ground_set: Vec<String>,
        k: usize,
        keep: impl Fn(&[usize]) -> bool,
    ) -> Result<Self> {
        let m = ground_set.len();
        check_ceiling(m, k)?;
        let mut tuples = Vec::new();
        if k == 0 || m > 0 {
            let mut t = vec![0usize; k];
            loop {
                if keep(&t) {
                    tuples.push(t.clone());
                }
                let Some(pos) = (0..k).rev().find(|&i| t[i] + 1 < m) else {
                    break;
                };
                t[pos] += 1;
                for x in &mut t[pos + 1..] {
                    *x = 0;
                }
            }
        }
        Self::new(ground_set, k, tuples)
    }

    fn check_symmetric(&self) -> Result<()> {
        if self.k < 2 {
            return Ok(());
        }
        for t in &self.tuples {
            let mut swapped = t.clone();
            swapped.swap(0, 1);
            let mut rotated = t.clone();
            rotated.rotate_left(1);
            if !self.tuples.contains(&swapped) || !self.tuples.contains(&rotated) {
                return Err(Error::InvalidInput(format!(
                    "set is not symmetric: tuple ({}) has a rearrangement outside the set",
                    self.render(t).join(", ")
                )));
            }
        }
        Ok(())
    }

    pub fn ground_set(&self) -> &[String] {
        &self.ground_set
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        self.tuples.contains(t)
    }

    /// Tuples in lexicographic order of ground-set indices.
    pub fn tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter()
    }

    pub fn render(&self, t: &[usize]) -> Vec<String> {
        t.iter().map(|&i| self.ground_set[i].clone()).collect()
    }

    /// The elements of `X_τ` for a permutation with the given cycle lengths.
    pub fn fixed_points<'a>(&'a self, lengths: &'a [usize]) -> impl Iterator<Item = &'a Vec<usize>> {
        self.tuples.iter().filter(move |t| constant_on_runs(t, lengths))
    }

    /// Tuples constant on every block of `s`.
    pub fn fixed_by_partition(&self, s: &SetPartition) -> usize {
        let labels = s.labels();
        self.tuples
            .iter()
            .filter(|t| constant_on_labels(t, &labels, s.block_count()))
            .count()
    }

    fn fixed_table(&self) -> &HashMap<Vec<usize>, BigInt> {
        self.fixed.get_or_init(|| {
            integer_partitions(self.k)
                .into_iter()
                .map(|t| {
                    let lengths = t.lengths();
                    let n = self.fixed_points(&lengths).count();
                    (lengths, BigInt::from(n))
                })
                .collect()
        })
    }
}

type CountFn = dyn Fn(&[usize]) -> BigInt + Send + Sync;

/// A symmetric set known only through `|X_τ|` as a function of the cycle
/// lengths of `τ` (passed in non-increasing order).
#[derive(Clone)]
pub struct CycleTypeOracle {
    k: usize,
    count_fn: Arc<CountFn>,
}

impl CycleTypeOracle {
    pub fn new(k: usize, count_fn: impl Fn(&[usize]) -> BigInt + Send + Sync + 'static) -> Self {
        Self { k, count_fn: Arc::new(count_fn) }
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Debug for CycleTypeOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycleTypeOracle").field("k", &self.k).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum SymmetricSet {
    Explicit(ExplicitSet),
    Oracle(CycleTypeOracle),
}

impl From<ExplicitSet> for SymmetricSet {
    fn from(x: ExplicitSet) -> Self {
        Self::Explicit(x)
    }
}

impl From<CycleTypeOracle> for SymmetricSet {
    fn from(x: CycleTypeOracle) -> Self {
        Self::Oracle(x)
    }
}

impl SymmetricSet {
    pub fn k(&self) -> usize {
        match self {
            Self::Explicit(x) => x.k,
            Self::Oracle(o) => o.k,
        }
    }

    pub fn as_explicit(&self) -> Result<&ExplicitSet> {
        match self {
            Self::Explicit(x) => Ok(x),
            Self::Oracle(_) => Err(Error::InvalidInput(
                "this operation enumerates X_τ and needs an explicit set, not a cycle-type oracle"
                    .into(),
            )),
        }
    }
}

/// `|X_τ|` for any `τ` whose cycle lengths are `lengths`.
pub fn fixed_point_count(x: &SymmetricSet, lengths: &[usize]) -> Result<BigInt> {
    let k = x.k();
    if lengths.iter().sum::<usize>() != k || lengths.contains(&0) {
        return Err(Error::InvalidInput(format!(
            "cycle lengths {lengths:?} are not a partition of {k}"
        )));
    }
    let key = sorted_lengths(lengths);
    match x {
        SymmetricSet::Explicit(e) => Ok(e.fixed_table()[&key].clone()),
        SymmetricSet::Oracle(o) => {
            let n = (o.count_fn)(&key);
            if n.is_negative() {
                return Err(Error::Integrity(format!(
                    "fixed-point oracle returned {n} for cycle lengths {key:?}"
                )));
            }
            Ok(n)
        }
    }
}

/// `w_j(τ) = Π (1 - (j+1)·[(j+1) | ℓ_i])`. Equals 1 when `j` is at least the
/// longest cycle; `w_1(τ)` is the sign of `τ`.
pub fn weight_bounded(lengths: &[usize], j: usize) -> BigInt {
    let jj = j + 1;
    let factor = BigInt::one() - BigInt::from(jj);
    lengths
        .iter()
        .filter(|&&l| l % jj == 0)
        .fold(BigInt::one(), |acc, _| acc * &factor)
}

/// `w̄_d(τ) = [x^d] Π (1 - (1-x)^{ℓ_i})`, by exact polynomial multiplication.
pub fn weight_distinct(lengths: &[usize], d: usize) -> BigInt {
    let one_minus_x = Polynomial::from_integers([1, -1]);
    let product = lengths.iter().fold(Polynomial::one(), |acc, &l| {
        let factor = &Polynomial::one() - &one_minus_x.pow(l as u32);
        &acc * &factor
    });
    let w = product
        .integer_coeff(d)
        .expect("integer polynomial has integer coefficients");
    // each factor is divisible by x
    debug_assert!(d >= lengths.len() || w.is_zero());
    w
}

/// Number of terms in every cycle-type sum of degree `k`, i.e. `p(k)`.
pub fn sieve_term_count(k: usize) -> usize {
    integer_partitions(k).len()
}

/// `Σ_τ weight(τ) C(τ) |X_τ|` over cycle types with nonzero weight.
fn class_sum(x: &SymmetricSet, weight: impl Fn(&CycleType) -> BigInt) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for t in integer_partitions(x.k()) {
        let w = weight(&t);
        if w.is_zero() {
            continue;
        }
        total += w * conjugacy_class_size(&t) * fixed_point_count(x, &t.lengths())?;
    }
    Ok(total)
}

fn divide_by_k_factorial(sum: &BigInt, k: usize) -> Result<BigInt> {
    let q = exact_div(
        sum,
        &factorial(k),
        "sieve sum over k! (X is not symmetric or |X_τ| is wrong)",
    )?;
    if q.is_negative() {
        return Err(Error::Integrity(format!("sieve produced a negative count {q}")));
    }
    Ok(q)
}

/// `|M(X)|`: the number of `k`-multisets satisfying `X`.
pub fn count_multisets(x: &SymmetricSet) -> Result<BigInt> {
    let sum = class_sum(x, |_| BigInt::one())?;
    divide_by_k_factorial(&sum, x.k())
}

/// `|M_j(X)|`: multisets satisfying `X` with every multiplicity at most `j`.
pub fn count_multisets_bounded(x: &SymmetricSet, j: usize) -> Result<BigInt> {
    if j == 0 {
        return Err(Error::InvalidInput("multiplicity bound j must be at least 1".into()));
    }
    let sum = class_sum(x, |t| weight_bounded(&t.lengths(), j))?;
    divide_by_k_factorial(&sum, x.k())
}

/// `|M̄_d(X)|`: multisets satisfying `X` with exactly `d` distinct elements.
/// Zero for `d > k`.
pub fn count_multisets_distinct(x: &SymmetricSet, d: usize) -> Result<BigInt> {
    if d > x.k() {
        return Ok(BigInt::zero());
    }
    let sum = class_sum(x, |t| weight_distinct(&t.lengths(), d))?;
    divide_by_k_factorial(&sum, x.k())
}

/// `|X̄|`: tuples of `X` with pairwise distinct coordinates,
/// `Σ_τ sign(τ) C(τ) |X_τ|`. Cross-checked against `k! · |M̄_k(X)|`.
pub fn count_distinct_tuples(x: &SymmetricSet) -> Result<BigInt> {
    let k = x.k();
    let signed = class_sum(x, |t| BigInt::from(t.sign()))?;
    let via_multisets = factorial(k) * count_multisets_distinct(x, k)?;
    if signed != via_multisets {
        return Err(Error::Integrity(format!(
            "signed class sum {signed} differs from k!·|M̄_k(X)| = {via_multisets}"
        )));
    }
    Ok(signed)
}

type TupleFn<'a, R> = Box<dyn Fn(&[usize]) -> R + 'a>;

/// A symmetric function on the tuples of an explicit set, valued in an exact
/// ring.
pub struct SymmetricFunction<'a, R> {
    eval: TupleFn<'a, R>,
}

impl<'a, R: ExactRing> SymmetricFunction<'a, R> {
    /// Wraps `f`, spot-checking symmetry on up to 64 tuples of `x` with
    /// random transpositions (fixed seed).
    pub fn new(x: &ExplicitSet, f: impl Fn(&[usize]) -> R + 'a) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
        let tuples: Vec<&Vec<usize>> = x.tuples().collect();
        if x.k >= 2 {
            for _ in 0..tuples.len().min(64) {
                let t = *tuples.choose(&mut rng).expect("non-empty");
                let a = rng.random_range(0..x.k);
                let b = rng.random_range(0..x.k);
                let mut s = t.clone();
                s.swap(a, b);
                if f(t) != f(&s) {
                    return Err(Error::InvalidInput(format!(
                        "function is not symmetric: values differ on ({}) and ({})",
                        x.render(t).join(", "),
                        x.render(&s).join(", ")
                    )));
                }
            }
        }
        Ok(Self { eval: Box::new(f) })
    }

    /// Wraps `f` without any symmetry check.
    pub fn unchecked(f: impl Fn(&[usize]) -> R + 'a) -> Self {
        Self { eval: Box::new(f) }
    }

    pub fn eval(&self, t: &[usize]) -> R {
        (self.eval)(t)
    }
}

const SPOT_CHECK_SEED: u64 = 0x5EED_5E1F;

fn weighted_class_sum<R: ExactRing>(
    x: &SymmetricSet,
    f: &SymmetricFunction<'_, R>,
    weight: impl Fn(&CycleType) -> BigInt,
) -> Result<R> {
    let e = x.as_explicit()?;
    let k = e.k;
    let mut total = R::ring_zero();
    for t in integer_partitions(k) {
        let w = weight(&t);
        if w.is_zero() {
            continue;
        }
        let lengths = t.lengths();
        let inner = e
            .fixed_points(&lengths)
            .fold(R::ring_zero(), |acc, tuple| acc.add(&f.eval(tuple)));
        total = total.add(&inner.scale(&(w * conjugacy_class_size(&t))));
    }
    total.div_exact(&factorial(k)).ok_or_else(|| {
        Error::Integrity("weighted sieve sum is not divisible by k!".into())
    })
}

/// `Σ_{[x] ∈ M_j(X)} f(x)`.
pub fn weighted_sum_bounded<R: ExactRing>(
    x: &SymmetricSet,
    f: &SymmetricFunction<'_, R>,
    j: usize,
) -> Result<R> {
    if j == 0 {
        return Err(Error::InvalidInput("multiplicity bound j must be at least 1".into()));
    }
    weighted_class_sum(x, f, |t| weight_bounded(&t.lengths(), j))
}

/// `Σ_{[x] ∈ M̄_d(X)} f(x)`.
pub fn weighted_sum_distinct<R: ExactRing>(
    x: &SymmetricSet,
    f: &SymmetricFunction<'_, R>,
    d: usize,
) -> Result<R> {
    x.as_explicit()?;
    if d > x.k() {
        return Ok(R::ring_zero());
    }
    weighted_class_sum(x, f, |t| weight_distinct(&t.lengths(), d))
}

/// The partition-lattice route: with `X°_τ` the tuples whose equal-coordinate
/// pattern is exactly `τ`, Möbius inversion gives
/// `|X°_τ| = Σ_{σ ≥ τ} μ(τ, σ) |X_σ|`, and each such tuple class contributes
/// `Π m_i! / k!` multisets. `select` picks the admissible block patterns.
fn lattice_count(x: &ExplicitSet, select: impl Fn(&SetPartition) -> bool) -> Result<BigInt> {
    let parts = enumerate_set_partitions(x.k);
    let fixed: Vec<BigInt> = parts.iter().map(|s| BigInt::from(x.fixed_by_partition(s))).collect();
    let mut total = BigInt::zero();
    for tau in parts.iter().filter(|t| select(t)) {
        let mut exact = BigInt::zero();
        for (sigma, fs) in parts.iter().zip(&fixed) {
            if !fs.is_zero() && refines(tau, sigma)? {
                exact += mobius_closed(tau, sigma)? * fs;
            }
        }
        let block_factorials: BigInt = tau.blocks().iter().map(|b| factorial(b.len())).product();
        total += block_factorials * exact;
    }
    divide_by_k_factorial(&total, x.k)
}

/// `|M_j(X)|` through the set-partition lattice instead of cycle types.
pub fn count_multisets_bounded_lattice(x: &ExplicitSet, j: usize) -> Result<BigInt> {
    lattice_count(x, |t| t.blocks().iter().all(|b| b.len() <= j))
}

/// `|M̄_d(X)|` through the set-partition lattice instead of cycle types.
pub fn count_multisets_distinct_lattice(x: &ExplicitSet, d: usize) -> Result<BigInt> {
    lattice_count(x, |t| t.block_count() == d)
}
