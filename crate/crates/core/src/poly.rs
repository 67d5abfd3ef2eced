//! Dense univariate polynomials and truncated power series over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// A polynomial with exact rational coefficients, or a power series known
/// up to (and including) degree `truncation`.
///
/// Trailing zero coefficients are always trimmed; for a truncated series the
/// coefficients between the stored length and `truncation` are known zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
    truncation: Option<usize>,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs, truncation: None };
        p.normalize();
        p
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(rat).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    /// `c · x^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// Drops every term above degree `n` and records the truncation.
    pub fn truncated(mut self, n: usize) -> Self {
        let n = self.truncation.map_or(n, |t| t.min(n));
        self.coeffs.truncate(n + 1);
        self.truncation = Some(n);
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        if let Some(n) = self.truncation {
            self.coeffs.truncate(n + 1);
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the stored part; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `[x^n]` of this polynomial. Asking a truncated series for a degree it
    /// does not know is an error, not zero.
    pub fn coeff(&self, n: usize) -> Result<BigRational> {
        if let Some(t) = self.truncation {
            if n > t {
                return Err(Error::BeyondTruncation { requested: n, truncation: t });
            }
        }
        Ok(self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero))
    }

    /// `[x^n]` as an integer; fails if the coefficient is not integral.
    pub fn integer_coeff(&self, n: usize) -> Result<BigInt> {
        crate::combinatorics::rational_to_integer(&self.coeff(n)?, "series coefficient")
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            truncation: self.truncation,
        }
        .renormalized()
    }

    fn renormalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Non-negative integer power, respecting truncation.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = match self.truncation {
            Some(t) => Self::one().truncated(t),
            None => Self::one(),
        };
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse as a series truncated at degree `n`. Requires a
    /// nonzero constant term.
    pub fn inverse_series(&self, n: usize) -> Result<Self> {
        let a0 = self.coeff(0)?;
        if a0.is_zero() {
            return Err(Error::InvalidInput(
                "series inverse needs a nonzero constant term".into(),
            ));
        }
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = a0.recip();
        for m in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=m {
                let ai = self.coeff(i)?;
                if !ai.is_zero() {
                    s += ai * &inv[m - i];
                }
            }
            inv[m] = -s / &a0;
        }
        Ok(Self::new(inv).truncated(n))
    }

    /// `self^r` truncated at degree `n`. Negative `r` needs a nonzero
    /// constant term.
    pub fn pow_series(&self, r: i64, n: usize) -> Result<Self> {
        let base = if r < 0 {
            self.inverse_series(n)?
        } else {
            self.clone().truncated(n)
        };
        let e = u32::try_from(r.unsigned_abs())
            .map_err(|_| Error::InvalidInput(format!("exponent {r} too large")))?;
        Ok(base.pow(e))
    }

    /// `exp(self)` truncated at degree `n`. The constant term must be zero.
    pub fn exp_series(&self, n: usize) -> Result<Self> {
        if !self.coeff(0)?.is_zero() {
            return Err(Error::InvalidInput(
                "exp of a series needs a zero constant term".into(),
            ));
        }
        // n f_n = Σ_{i=1}^{n} i g_i f_{n-i}
        let mut f = vec![BigRational::zero(); n + 1];
        f[0] = BigRational::one();
        for m in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=m {
                let gi = self.coeff(i)?;
                if !gi.is_zero() {
                    s += gi * rat(i) * &f[m - i];
                }
            }
            f[m] = s / rat(m);
        }
        Ok(Self::new(f).truncated(n))
    }

    /// `(1 - u^e)^r` as a series truncated at degree `n`, by the generalized
    /// binomial theorem: the coefficient of `u^{e·m}` is `(-1)^m binom(r, m)`.
    pub fn binomial_series(e: usize, r: i64, n: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidInput("inner exponent must be positive".into()));
        }
        let r = BigInt::from(r);
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for m in 0..=n / e {
            let c = binomial(&r, m);
            coeffs[e * m] = BigRational::from_integer(if m % 2 == 0 { c } else { -c });
        }
        Ok(Self::new(coeffs).truncated(n))
    }
}

fn min_truncation(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                match rhs.coeffs.get(i) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Polynomial {
            coeffs,
            truncation: min_truncation(self.truncation, rhs.truncation),
        }
        .renormalized()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            truncation: self.truncation,
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let truncation = min_truncation(self.truncation, rhs.truncation);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial { coeffs: Vec::new(), truncation };
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(t) = truncation {
            len = len.min(t + 1);
        }
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial { coeffs, truncation }.renormalized()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        if let Some(t) = self.truncation {
            write!(f, " + O(x^{})", t + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(c: &[i64]) -> Polynomial {
        Polynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn canonical_form_trims_zeros() {
        let p = int_poly(&[1, 2, 0, 0]);
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p, int_poly(&[1, 2]));
        assert!(int_poly(&[0, 0]).is_zero());
    }

    #[test]
    fn square_of_x() {
        // (1 - (1 - x))^2 = x^2
        let one_minus_x = int_poly(&[1, -1]);
        let p = (&Polynomial::one() - &one_minus_x).pow(2);
        assert_eq!(p.coeff(2).unwrap(), rat(1));
        assert_eq!(p, int_poly(&[0, 0, 1]));
    }

    #[test]
    fn inverse_square_coefficients() {
        let s = Polynomial::binomial_series(1, -2, 10).unwrap();
        for n in 0..=10 {
            assert_eq!(s.coeff(n).unwrap(), rat(n as i64 + 1));
        }
        assert_eq!(s.coeff(4).unwrap(), rat(5));
        let general = int_poly(&[1, -1]).pow_series(-2, 10).unwrap();
        assert_eq!(general, s);
    }

    #[test]
    fn mixed_binomial_product_matches_long_multiplication() {
        let series = &Polynomial::binomial_series(2, -3, 12).unwrap()
            * &Polynomial::binomial_series(6, 2, 12).unwrap();
        // (1 + u^2 + u^4 + u^6)^3 (1 - 2u^6 + u^12) agrees with the series up to u^6
        let geo = [1i64, 0, 1, 0, 1, 0, 1];
        let mut cube = [0i64; 19];
        for (i, a) in geo.iter().enumerate() {
            for (j, b) in geo.iter().enumerate() {
                for (l, c) in geo.iter().enumerate() {
                    cube[i + j + l] += a * b * c;
                }
            }
        }
        let tail = [1i64, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 1];
        let mut prod = vec![0i64; 32];
        for (i, a) in cube.iter().enumerate() {
            for (j, b) in tail.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        assert_eq!(prod[6], 8);
        for (n, &c) in prod.iter().enumerate().take(7) {
            assert_eq!(series.coeff(n).unwrap(), rat(c), "n={n}");
        }
    }

    #[test]
    fn beyond_truncation_is_error() {
        let s = Polynomial::binomial_series(1, -1, 5).unwrap();
        assert!(s.coeff(5).is_ok());
        assert_eq!(
            s.coeff(6),
            Err(Error::BeyondTruncation { requested: 6, truncation: 5 })
        );
        // exact polynomials answer zero beyond their degree
        assert_eq!(int_poly(&[1, 1]).coeff(9).unwrap(), rat(0));
    }

    #[test]
    fn negative_power_needs_constant_term() {
        assert!(int_poly(&[0, 1]).pow_series(-1, 4).is_err());
        assert!(int_poly(&[1, 1]).exp_series(4).is_err());
    }

    #[test]
    fn exp_of_log_one_plus_u() {
        // log(1 + u) = u - u^2/2 + u^3/3 - ...
        let n = 8;
        let coeffs: Vec<_> = (0..=n)
            .map(|i| {
                if i == 0 {
                    rat(0)
                } else {
                    let s = if i % 2 == 1 { 1 } else { -1 };
                    BigRational::new(BigInt::from(s), BigInt::from(i))
                }
            })
            .collect();
        let e = Polynomial::new(coeffs).truncated(n).exp_series(n).unwrap();
        assert_eq!(e, int_poly(&[1, 1]).truncated(n));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let p = int_poly(&[2, -3, 5, 7]);
        let inv = p.inverse_series(9).unwrap();
        assert_eq!(&p * &inv, Polynomial::one().truncated(9));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(int_poly(&[1, 0, -2]).to_string(), "1 + -2*x^2");
        assert_eq!(int_poly(&[0, 1]).truncated(3).to_string(), "1*x + O(x^4)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn product_coefficients_are_convolutions(
                a in proptest::collection::vec(-20i64..20, 0..8),
                b in proptest::collection::vec(-20i64..20, 0..8),
                n in 0usize..16,
            ) {
                let p = &int_poly(&a) * &int_poly(&b);
                let mut want = 0i64;
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        if i + j == n {
                            want += x * y;
                        }
                    }
                }
                prop_assert_eq!(p.coeff(n).unwrap(), rat(want));
            }

            #[test]
            fn evaluation_is_a_ring_map(
                a in proptest::collection::vec(-9i64..9, 0..6),
                b in proptest::collection::vec(-9i64..9, 0..6),
                x in -5i64..5,
            ) {
                let (pa, pb, xr) = (int_poly(&a), int_poly(&b), rat(x));
                prop_assert_eq!((&pa * &pb).evaluate(&xr), pa.evaluate(&xr) * pb.evaluate(&xr));
                prop_assert_eq!((&pa + &pb).evaluate(&xr), pa.evaluate(&xr) + pb.evaluate(&xr));
            }
        }
    }
}
