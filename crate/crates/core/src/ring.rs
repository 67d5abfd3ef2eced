//! Exact commutative rings that weighted sieve sums can take values in.
//!
//! Weighted sums divide an integer combination of values by `k!`, so a ring
//! here must support exact division by a nonzero integer when the quotient
//! exists. Floating-point types deliberately do not implement [`ExactRing`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

pub trait ExactRing: Clone + PartialEq + Debug {
    fn ring_zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    /// Multiplication by an integer.
    fn scale(&self, n: &BigInt) -> Self;
    /// `self / n` if the quotient exists in the ring.
    fn div_exact(&self, n: &BigInt) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn scale(&self, n: &BigInt) -> Self {
        self * n
    }

    fn div_exact(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(n);
        r.is_zero().then_some(q)
    }
}

impl ExactRing for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn scale(&self, n: &BigInt) -> Self {
        self * BigRational::from_integer(n.clone())
    }

    fn div_exact(&self, n: &BigInt) -> Option<Self> {
        (!n.is_zero()).then(|| self / BigRational::from_integer(n.clone()))
    }
}

/// An element `Σ a_g [g]` of the integral group ring `Z[Z/nZ]`.
///
/// Additive characters of `Z/nZ` land here exactly: `χ(x) = ζ^x` is the basis
/// element `[x]`, and products of character values add the exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGroupRing {
    coeffs: Vec<BigInt>,
}

impl CyclicGroupRing {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); n] }
    }

    /// The basis element `[g mod n]`.
    pub fn basis(n: usize, g: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[g % n] = BigInt::from(1);
        e
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().max(other.order());
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[(i + j) % n] += a * b;
            }
        }
        out
    }
}

impl ExactRing for CyclicGroupRing {
    /// The order-free zero; it adapts to the order of whatever it is added to.
    fn ring_zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.order().max(other.order());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            if let Some(a) = self.coeffs.get(i) {
                *c += a;
            }
            if let Some(b) = other.coeffs.get(i) {
                *c += b;
            }
        }
        Self { coeffs }
    }

    fn scale(&self, n: &BigInt) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    fn div_exact(&self, n: &BigInt) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(n))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_division_is_checked() {
        let x = BigInt::from(12);
        assert_eq!(ExactRing::div_exact(&x, &BigInt::from(4)), Some(BigInt::from(3)));
        assert_eq!(ExactRing::div_exact(&x, &BigInt::from(5)), None);
        assert_eq!(ExactRing::div_exact(&x, &BigInt::zero()), None);
    }

    #[test]
    fn group_ring_multiplies_exponents() {
        let a = CyclicGroupRing::basis(5, 3);
        let b = CyclicGroupRing::basis(5, 4);
        assert_eq!(a.mul(&b), CyclicGroupRing::basis(5, 2));
        let s = ExactRing::add(&a, &a).scale(&BigInt::from(3));
        assert_eq!(s.coeffs()[3], BigInt::from(6));
        assert_eq!(s.div_exact(&BigInt::from(6)), Some(a.clone()));
        assert_eq!(s.div_exact(&BigInt::from(4)), None);
        assert_eq!(CyclicGroupRing::ring_zero().add(&a), a);
    }
}
