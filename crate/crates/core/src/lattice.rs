//! The lattice of set partitions of `{0, …, k-1}` ordered by refinement.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial, neg_one_pow, CycleType};
use crate::error::{Error, Result};

/// A set partition of `{0, …, k-1}` in canonical form: every block sorted,
/// blocks ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; k];
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block in set partition".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= k || seen[x] {
                    return Err(Error::InvalidInput(format!(
                        "element {x} is out of range or repeated in a partition of {k} elements"
                    )));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput("blocks do not cover the ground set".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { k, blocks })
    }

    /// Builds the partition whose restricted-growth string is `rgs`
    /// (`rgs[x]` is the index of the block containing `x`).
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let n_blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); n_blocks];
        for (x, &b) in rgs.iter().enumerate() {
            blocks[b].push(x);
        }
        Self { k: rgs.len(), blocks }
    }

    /// All singletons (`0̂`).
    pub fn finest(k: usize) -> Self {
        Self { k, blocks: (0..k).map(|x| vec![x]).collect() }
    }

    /// One block (`1̂`); empty for `k = 0`.
    pub fn coarsest(k: usize) -> Self {
        let blocks = if k == 0 { Vec::new() } else { vec![(0..k).collect()] };
        Self { k, blocks }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `labels[x]` = index of the block containing `x`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.k];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x] = i;
            }
        }
        labels
    }

    /// Block-size type `(a_1, …, a_k)`.
    pub fn type_vector(&self) -> CycleType {
        let sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        CycleType::from_lengths(&sizes).expect("blocks are non-empty")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Every set partition of `{0, …, k-1}`, in lexicographic order of
/// restricted-growth strings. There are `Bell(k)` of them; beyond `k = 9`
/// this gets slow.
pub fn enumerate_set_partitions(k: usize) -> Vec<SetPartition> {
    fn walk(rgs: &mut Vec<usize>, max: usize, k: usize, out: &mut Vec<SetPartition>) {
        if rgs.len() == k {
            out.push(SetPartition::from_rgs(rgs));
            return;
        }
        let limit = if rgs.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            walk(rgs, max.max(b), k, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    walk(&mut Vec::with_capacity(k), 0, k, &mut out);
    out
}

fn same_ground(t: &SetPartition, s: &SetPartition) -> Result<()> {
    if t.k != s.k {
        return Err(Error::InvalidInput(format!(
            "partitions of different ground sets ({} vs {})",
            t.k, s.k
        )));
    }
    Ok(())
}

/// `t ≤ s`: every block of `t` lies inside a block of `s`.
pub fn refines(t: &SetPartition, s: &SetPartition) -> Result<bool> {
    same_ground(t, s)?;
    Ok(refines_unchecked(t, &s.labels()))
}

fn refines_unchecked(t: &SetPartition, s_labels: &[usize]) -> bool {
    t.blocks
        .iter()
        .all(|b| b.iter().all(|&x| s_labels[x] == s_labels[b[0]]))
}

fn require_interval(t: &SetPartition, s: &SetPartition) -> Result<()> {
    if !refines(t, s)? {
        return Err(Error::InvalidInput(format!(
            "Möbius function undefined: {t} does not refine {s}"
        )));
    }
    Ok(())
}

/// Closed form: if block `B_i` of `s` splits into `λ_i` blocks of `t`, then
/// `μ(t, s) = Π (-1)^{λ_i - 1} (λ_i - 1)!`.
pub fn mobius_closed(t: &SetPartition, s: &SetPartition) -> Result<BigInt> {
    require_interval(t, s)?;
    let s_labels = s.labels();
    let mut split = vec![0usize; s.block_count()];
    for b in &t.blocks {
        split[s_labels[b[0]]] += 1;
    }
    Ok(split
        .into_iter()
        .map(|lambda| neg_one_pow(lambda - 1) * factorial(lambda - 1))
        .product())
}

/// `μ(t, z)` for every `z` in `candidates` with `t ≤ z`, by the defining
/// recursion `μ(t, t) = 1`, `μ(t, z) = -Σ_{t ≤ y < z} μ(t, y)`.
fn mobius_table(t: &SetPartition, candidates: &[SetPartition]) -> HashMap<SetPartition, BigInt> {
    let mut upset: Vec<&SetPartition> = candidates
        .iter()
        .filter(|z| refines_unchecked(t, &z.labels()))
        .collect();
    // finer partitions first: y < z implies y has more blocks than z
    upset.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then(a.cmp(b)));
    let labels: Vec<Vec<usize>> = upset.iter().map(|z| z.labels()).collect();
    let mut values: Vec<BigInt> = Vec::with_capacity(upset.len());
    for (zi, z) in upset.iter().enumerate() {
        let mu = if *z == t {
            BigInt::one()
        } else {
            let mut s = BigInt::zero();
            for (yi, y) in upset[..zi].iter().enumerate() {
                if y.block_count() > z.block_count() && refines_unchecked(y, &labels[zi]) {
                    s += &values[yi];
                }
            }
            -s
        };
        values.push(mu);
    }
    upset.into_iter().cloned().zip(values).collect()
}

/// `μ(t, s)` by the recursive definition over the explicitly enumerated
/// interval `[t, s]`, memoized within the call.
pub fn mobius_recursive(t: &SetPartition, s: &SetPartition) -> Result<BigInt> {
    require_interval(t, s)?;
    let s_labels = s.labels();
    let interval: Vec<SetPartition> = enumerate_set_partitions(t.k)
        .into_iter()
        .filter(|z| refines_unchecked(z, &s_labels))
        .collect();
    let table = mobius_table(t, &interval);
    Ok(table[s].clone())
}

/// `μ(t, s)` for every `s ≥ t`, by the recursive definition.
pub fn mobius_recursive_upset(t: &SetPartition) -> HashMap<SetPartition, BigInt> {
    mobius_table(t, &enumerate_set_partitions(t.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{integer_partitions, set_partition_type_count};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn part(k: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(k, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn bell_counts() {
        assert_eq!(enumerate_set_partitions(1).len(), 1);
        assert_eq!(enumerate_set_partitions(3).len(), 5);
        assert_eq!(enumerate_set_partitions(5).len(), 52);
        assert_eq!(enumerate_set_partitions(0).len(), 1);
        let all = enumerate_set_partitions(6);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = part(3, &[&[2, 0], &[1]]);
        let b = part(3, &[&[1], &[0, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.blocks(), &[vec![0, 2], vec![1]]);
        assert!(SetPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(SetPartition::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(SetPartition::new(2, vec![vec![0, 1], vec![]]).is_err());
    }

    #[test]
    fn refinement_examples() {
        let fine = SetPartition::finest(3);
        let ab_c = part(3, &[&[0, 1], &[2]]);
        let ac_b = part(3, &[&[0, 2], &[1]]);
        assert!(refines(&fine, &ab_c).unwrap());
        assert!(!refines(&ab_c, &ac_b).unwrap());
        assert!(!refines(&ac_b, &ab_c).unwrap());
        assert!(refines(&ab_c, &ab_c).unwrap());
        assert!(refines(&fine, &SetPartition::finest(4)).is_err());
    }

    #[test]
    fn refinement_is_a_partial_order() {
        let all = enumerate_set_partitions(4);
        for a in &all {
            assert!(refines(a, a).unwrap());
            for b in &all {
                let ab = refines(a, b).unwrap();
                if ab && refines(b, a).unwrap() {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if ab && refines(b, c).unwrap() {
                        assert!(refines(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_bottom_to_top() {
        let (f2, c2) = (SetPartition::finest(2), SetPartition::coarsest(2));
        assert_eq!(mobius_recursive(&f2, &c2).unwrap(), BigInt::from(-1));
        let (f3, c3) = (SetPartition::finest(3), SetPartition::coarsest(3));
        assert_eq!(mobius_closed(&f3, &c3).unwrap(), BigInt::from(2));
        assert_eq!(mobius_recursive(&f3, &c3).unwrap(), BigInt::from(2));
        let (f4, c4) = (SetPartition::finest(4), SetPartition::coarsest(4));
        assert_eq!(mobius_closed(&f4, &c4).unwrap(), BigInt::from(-6));
        assert_eq!(mobius_recursive(&f4, &c4).unwrap(), BigInt::from(-6));
        let t = part(4, &[&[0, 1], &[2], &[3]]);
        assert_eq!(mobius_closed(&t, &t).unwrap(), BigInt::one());
        assert_eq!(mobius_recursive(&t, &t).unwrap(), BigInt::one());
    }

    #[test]
    fn mobius_off_interval_is_error() {
        let a = part(3, &[&[0, 1], &[2]]);
        let b = part(3, &[&[0, 2], &[1]]);
        assert!(mobius_closed(&a, &b).is_err());
        assert!(mobius_recursive(&a, &b).is_err());
    }

    #[test]
    fn closed_matches_recursive_up_to_five() {
        for k in 1..=5 {
            let all = enumerate_set_partitions(k);
            for t in &all {
                let row = mobius_recursive_upset(t);
                for (s, mu) in &row {
                    assert_eq!(mobius_closed(t, s).unwrap(), *mu, "{t} {s}");
                }
            }
        }
        let all4 = enumerate_set_partitions(4);
        for t in &all4 {
            for s in &all4 {
                if refines(t, s).unwrap() {
                    assert_eq!(mobius_recursive(t, s).unwrap(), mobius_closed(t, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn mobius_sums_vanish_on_nontrivial_intervals() {
        let all = enumerate_set_partitions(4);
        for t in &all {
            for s in &all {
                if t != s && refines(t, s).unwrap() {
                    let sum: BigInt = all
                        .iter()
                        .filter(|z| refines(t, z).unwrap() && refines(z, s).unwrap())
                        .map(|z| mobius_closed(t, z).unwrap())
                        .sum();
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn mobius_inversion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for k in 1..=5 {
            let all = enumerate_set_partitions(k);
            for _ in 0..3 {
                let g: Vec<BigInt> = all.iter().map(|_| BigInt::from(rng.random_range(-50..50))).collect();
                let f: Vec<BigInt> = all
                    .iter()
                    .map(|x| {
                        all.iter()
                            .zip(&g)
                            .filter(|(y, _)| refines(x, y).unwrap())
                            .map(|(y, gy)| mobius_closed(x, y).unwrap() * gy)
                            .sum()
                    })
                    .collect();
                for (xi, x) in all.iter().enumerate() {
                    let back: BigInt = all
                        .iter()
                        .zip(&f)
                        .filter(|(y, _)| refines(x, y).unwrap())
                        .map(|(_, fy)| fy.clone())
                        .sum();
                    assert_eq!(back, g[xi]);
                }
            }
        }
    }

    #[test]
    fn type_counts_match_formula() {
        for k in 1..=7 {
            let all = enumerate_set_partitions(k);
            for t in integer_partitions(k) {
                let n = all.iter().filter(|p| p.type_vector() == t).count();
                assert_eq!(set_partition_type_count(&t), BigInt::from(n));
            }
        }
    }

    #[test]
    fn display_lists_blocks() {
        assert_eq!(part(3, &[&[0, 2], &[1]]).to_string(), "{{0,2},{1}}");
    }
}
