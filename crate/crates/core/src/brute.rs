//! Ground truth by direct enumeration, and classical inclusion-exclusion over
//! the `2^(k choose 2)` pair constraints.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::SetPartition;
use crate::ring::ExactRing;
use crate::sieve::{check_ceiling, numeric_labels, ExplicitSet, SymmetricFunction};

/// Which multisets a brute-force count keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    /// Every multiplicity at most `j`.
    Bounded(usize),
    /// Exactly `d` distinct elements.
    Distinct(usize),
}

fn multiplicities(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let run = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        out.push(run);
        i += run;
    }
    out
}

impl Selection {
    fn keeps(self, sorted: &[usize]) -> bool {
        match self {
            Selection::All => true,
            Selection::Bounded(j) => multiplicities(sorted).into_iter().all(|m| m <= j),
            Selection::Distinct(d) => multiplicities(sorted).len() == d,
        }
    }
}

/// One sorted representative per multiset satisfying `x`, in lexicographic
/// order of ground-set indices.
pub fn enumerate_restricted_multisets(x: &ExplicitSet) -> Result<Vec<Vec<usize>>> {
    check_ceiling(x.ground_set().len(), x.k())?;
    let reps: BTreeSet<Vec<usize>> = x
        .tuples()
        .map(|t| {
            let mut s = t.clone();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(reps.into_iter().collect())
}

pub fn brute_count(x: &ExplicitSet, sel: Selection) -> Result<BigInt> {
    let n = enumerate_restricted_multisets(x)?
        .iter()
        .filter(|m| sel.keeps(m))
        .count();
    Ok(BigInt::from(n))
}

pub fn brute_count_multisets(x: &ExplicitSet) -> Result<BigInt> {
    brute_count(x, Selection::All)
}

pub fn brute_count_bounded(x: &ExplicitSet, j: usize) -> Result<BigInt> {
    brute_count(x, Selection::Bounded(j))
}

pub fn brute_count_distinct(x: &ExplicitSet, d: usize) -> Result<BigInt> {
    brute_count(x, Selection::Distinct(d))
}

/// Tuples of `x` with pairwise distinct coordinates, counted one by one.
pub fn brute_count_distinct_tuples(x: &ExplicitSet) -> Result<BigInt> {
    check_ceiling(x.ground_set().len(), x.k())?;
    let n = x
        .tuples()
        .filter(|t| {
            let mut s = (*t).clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        })
        .count();
    Ok(BigInt::from(n))
}

/// `Σ f` over the selected multisets, evaluating `f` on sorted representatives.
pub fn brute_weighted<R: ExactRing>(
    x: &ExplicitSet,
    f: &SymmetricFunction<'_, R>,
    sel: Selection,
) -> Result<R> {
    Ok(enumerate_restricted_multisets(x)?
        .iter()
        .filter(|m| sel.keeps(m))
        .fold(R::ring_zero(), |acc, m| acc.add(&f.eval(m))))
}

/// Result of the inclusion-exclusion count, with the number of intersection
/// terms it evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionExclusion {
    pub value: BigInt,
    pub terms: usize,
}

/// Largest `k` accepted by [`inclusion_exclusion_distinct`].
pub const INCLUSION_EXCLUSION_MAX_K: usize = 5;

/// `|X̄| = Σ_{S ⊆ pairs} (-1)^{|S|} |∩_{(i,j) ∈ S} X_{ij}|`. Each intersection
/// is the set of tuples constant on the blocks generated by the pairs in `S`.
pub fn inclusion_exclusion_distinct(x: &ExplicitSet) -> Result<InclusionExclusion> {
    let k = x.k();
    if k > INCLUSION_EXCLUSION_MAX_K {
        let pairs = k * (k - 1) / 2;
        return Err(Error::Refused(format!(
            "inclusion-exclusion over k = {k} needs 2^{pairs} intersection terms; \
             limit is k = {INCLUSION_EXCLUSION_MAX_K}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let terms = 1usize << pairs.len();
    let mut value = BigInt::from(0);
    for mask in 0..terms {
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_block = vec![usize::MAX; k];
        for a in 0..k {
            let r = find(&mut parent, a);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[root_block[r]].push(a);
        }
        let induced = SetPartition::new(k, blocks)?;
        let n = BigInt::from(x.fixed_by_partition(&induced));
        if mask.count_ones() % 2 == 0 {
            value += n;
        } else {
            value -= n;
        }
    }
    Ok(InclusionExclusion { value, terms })
}

/// A random symmetric set: the orbit union of a few random tuples over a
/// ground set of `1..=max_ground` labels, with `1..=max_k` coordinates.
pub fn random_symmetric_set(rng: &mut impl Rng, max_ground: usize, max_k: usize) -> ExplicitSet {
    let m = rng.random_range(1..=max_ground);
    let k = rng.random_range(1..=max_k);
    let n_seeds = rng.random_range(0..=6);
    let seeds: Vec<Vec<usize>> = (0..n_seeds)
        .map(|_| (0..k).map(|_| rng.random_range(0..m)).collect())
        .collect();
    ExplicitSet::symmetrized(numeric_labels(m), k, seeds).expect("seeds are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{count_distinct_tuples, count_multisets_bounded, SymmetricSet};
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn zero_sum(n: usize, k: usize) -> ExplicitSet {
        ExplicitSet::from_predicate(numeric_labels(n), k, |t| t.iter().sum::<usize>() % n == 0)
            .unwrap()
    }

    #[test]
    fn enumerates_full_square() {
        let x = ExplicitSet::from_labels(
            vec!["a".into(), "b".into()],
            2,
            &[vec!["a".into(), "a".into()], vec!["a".into(), "b".into()], vec!["b".into(), "b".into()]],
            true,
        )
        .unwrap();
        let ms = enumerate_restricted_multisets(&x).unwrap();
        let rendered: Vec<String> = ms.iter().map(|m| x.render(m).concat()).collect();
        assert_eq!(rendered, vec!["aa", "ab", "bb"]);
        let empty = ExplicitSet::new(numeric_labels(2), 2, []).unwrap();
        assert!(enumerate_restricted_multisets(&empty).unwrap().is_empty());
    }

    #[test]
    fn zero_sum_mod_three_fixture() {
        let ms = enumerate_restricted_multisets(&zero_sum(3, 3)).unwrap();
        assert_eq!(ms, vec![vec![0, 0, 0], vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]);
    }

    #[test]
    fn filtered_counts() {
        assert_eq!(brute_count_bounded(&ExplicitSet::full(3, 3).unwrap(), 1).unwrap(), big(1));
        assert_eq!(brute_count_distinct(&zero_sum(4, 2), 1).unwrap(), big(2));
        assert_eq!(brute_count_distinct(&zero_sum(5, 3), 2).unwrap(), big(4));
        let x = zero_sum(4, 3);
        let one = SymmetricFunction::new(&x, |_| BigInt::from(1)).unwrap();
        for sel in [Selection::All, Selection::Bounded(2), Selection::Distinct(2)] {
            assert_eq!(brute_weighted(&x, &one, sel).unwrap(), brute_count(&x, sel).unwrap());
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        // 10^8 candidate tuples would be needed
        let x = ExplicitSet::new(numeric_labels(10), 8, []).unwrap();
        assert!(matches!(enumerate_restricted_multisets(&x), Err(Error::Refused(_))));
    }

    #[test]
    fn inclusion_exclusion_small_cases() {
        let ie = inclusion_exclusion_distinct(&ExplicitSet::full(3, 3).unwrap()).unwrap();
        assert_eq!(ie, InclusionExclusion { value: big(6), terms: 8 });
        let x2 = ExplicitSet::full(4, 2).unwrap();
        let ie2 = inclusion_exclusion_distinct(&x2).unwrap();
        // |X| - |X_12|
        assert_eq!(ie2.value, big(16 - 4));
        assert_eq!(ie2.terms, 2);
        let z = zero_sum(5, 3);
        assert_eq!(
            inclusion_exclusion_distinct(&z).unwrap().value,
            count_distinct_tuples(&SymmetricSet::Explicit(z)).unwrap()
        );
        let err = inclusion_exclusion_distinct(&ExplicitSet::full(2, 6).unwrap()).unwrap_err();
        assert!(err.to_string().contains("2^15"));
    }

    #[test]
    fn distinct_tuples_by_enumeration() {
        assert_eq!(brute_count_distinct_tuples(&zero_sum(4, 3)).unwrap(), big(6));
        assert_eq!(brute_count_distinct_tuples(&ExplicitSet::full(4, 2).unwrap()).unwrap(), big(12));
    }

    #[test]
    fn weighted_power_sum_over_pairs() {
        let x = ExplicitSet::full(3, 2).unwrap();
        let f = SymmetricFunction::new(&x, |t| {
            BigRational::from_integer(big(t.iter().sum::<usize>() as i64))
        })
        .unwrap();
        assert_eq!(
            brute_weighted(&x, &f, Selection::Bounded(1)).unwrap(),
            BigRational::from_integer(big(6))
        );
    }

    #[test]
    fn random_sets_are_symmetric_and_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let x = random_symmetric_set(&mut rng, 4, 4);
            // re-validating via the checked constructor must succeed
            let again = ExplicitSet::new(x.ground_set().to_vec(), x.k(), x.tuples().cloned()).unwrap();
            assert_eq!(again, x);
            let s = SymmetricSet::Explicit(x.clone());
            for j in 1..=x.k() {
                assert_eq!(count_multisets_bounded(&s, j).unwrap(), brute_count_bounded(&x, j).unwrap());
            }
        }
    }
}
