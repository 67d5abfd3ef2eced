//! Arithmetic in `F_q`, `q = p^a`, with elements stored as coefficient vectors
//! modulo a fixed monic irreducible polynomial of degree `a`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest field size accepted by [`FieldSpec::new`].
pub const FIELD_SIZE_CEILING: u64 = 10_000;

/// An element of `F_{p^a}`: residues `c_0, …, c_{a-1}` in `[0, p)`, low degree
/// first. Ordering compares `c_0` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement {
    coeffs: Vec<u32>,
}

impl FqElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FqElement {
    /// Comma-separated residues, low degree first: `c0,c1,…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`
/// (coefficient vectors, low degree first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p64;
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                // subtract lead * m_i
                r[shift + i] = (r[shift + i] + p64 - (lead * mc as u64) % p64) % p64;
            }
        }
    }
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Residues of the `i`-th vector of length `len` in lexicographic order with
/// the first entry most significant.
fn digits(mut i: u64, len: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (i % p as u64) as u32;
        i /= p as u64;
    }
    out
}

/// Irreducibility of a monic polynomial over `F_p` by trial division against
/// every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for i in 0..count {
            let mut divisor = digits(i, d, p);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The field `F_{p^a}` together with its defining modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    a: u32,
    q: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Constructs `F_{p^a}`. The modulus is the lexicographically smallest
    /// monic irreducible of degree `a` (coefficients compared from the
    /// constant term up); for `a = 1` it is `x`.
    pub fn new(p: u32, a: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidInput(format!("characteristic {p} is not prime")));
        }
        if a == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(a)
            .filter(|&q| q <= FIELD_SIZE_CEILING)
            .ok_or_else(|| {
                Error::Refused(format!(
                    "field of size {p}^{a} exceeds the ceiling {FIELD_SIZE_CEILING}"
                ))
            })?;
        let modulus = if a == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|i| {
                    let mut m = digits(i, a as usize, p);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        Ok(Self { p, a, q: q as u32, modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low degree first (length `a + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement { coeffs: vec![0; self.a as usize] }
    }

    pub fn one(&self) -> FqElement {
        self.from_int(1)
    }

    /// The image of the integer `m` in the prime field.
    pub fn from_int(&self, m: i64) -> FqElement {
        let mut e = self.zero();
        e.coeffs[0] = m.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Element from residues, low degree first; missing high coefficients are
    /// zero.
    pub fn element(&self, coeffs: &[u32]) -> Result<FqElement> {
        if coeffs.len() > self.a as usize {
            return Err(Error::InvalidInput(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.a
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidInput(format!(
                "residue {c} is not reduced modulo {}",
                self.p
            )));
        }
        let mut e = self.zero();
        e.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(e)
    }

    /// Parses `"c0,c1,…"`.
    pub fn parse_element(&self, s: &str) -> Result<FqElement> {
        let coeffs = s
            .split(',')
            .map(|part| {
                part.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidInput(format!("cannot parse field element {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(&coeffs)
    }

    fn check(&self, x: &FqElement) {
        debug_assert_eq!(x.coeffs.len(), self.a as usize, "element of a different field");
    }

    pub fn add(&self, x: &FqElement, y: &FqElement) -> FqElement {
        self.check(x);
        self.check(y);
        FqElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FqElement) -> FqElement {
        self.check(x);
        FqElement {
            coeffs: x.coeffs.iter().map(|&a| (self.p - a) % self.p).collect(),
        }
    }

    pub fn sub(&self, x: &FqElement, y: &FqElement) -> FqElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FqElement, y: &FqElement) -> FqElement {
        self.check(x);
        self.check(y);
        let a = self.a as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * a - 1];
        for (i, &xi) in x.coeffs.iter().enumerate() {
            for (j, &yj) in y.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut coeffs = if prod.len() > a {
            poly_rem(&prod, &self.modulus, self.p)
        } else {
            prod
        };
        coeffs.resize(a, 0);
        FqElement { coeffs }
    }

    pub fn pow(&self, x: &FqElement, mut e: u64) -> FqElement {
        let mut result = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// `x^{-1} = x^{q-2}`.
    pub fn inv(&self, x: &FqElement) -> Result<FqElement> {
        if x.is_zero() {
            return Err(Error::InvalidInput("zero has no multiplicative inverse".into()));
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    /// `(m mod p) · x`.
    pub fn int_scale(&self, m: i64, x: &FqElement) -> FqElement {
        let r = m.rem_euclid(self.p as i64) as u32;
        FqElement {
            coeffs: x.coeffs.iter().map(|&c| (c * r) % self.p).collect(),
        }
    }

    /// Position of `x` in [`FieldSpec::enumerate_elements`].
    pub fn index_of(&self, x: &FqElement) -> usize {
        x.coeffs
            .iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn element_at(&self, i: usize) -> FqElement {
        FqElement { coeffs: digits(i as u64, self.a as usize, self.p) }
    }

    /// All `q` elements in increasing order (zero first).
    pub fn enumerate_elements(&self) -> Vec<FqElement> {
        (0..self.q as usize).map(|i| self.element_at(i)).collect()
    }
}

/// Number of `(x_1, …, x_m) ∈ F_q^m` with `Σ ℓ_i x_i = b`, counted by dynamic
/// programming over the distribution of partial sums.
pub fn linear_solution_count(field: &FieldSpec, coeffs: &[i64], b: &FqElement) -> BigInt {
    let elements = field.enumerate_elements();
    let q = elements.len();
    let mut dist = vec![BigInt::from(0); q];
    dist[field.index_of(&field.zero())] = BigInt::from(1);
    for &l in coeffs {
        // image[x] = index of l·x
        let image: Vec<usize> = elements
            .iter()
            .map(|x| field.index_of(&field.int_scale(l, x)))
            .collect();
        let mut next = vec![BigInt::from(0); q];
        for (s, count) in dist.iter().enumerate() {
            if count == &BigInt::from(0) {
                continue;
            }
            for &lx in &image {
                let t = field.index_of(&field.add(&elements[s], &elements[lx]));
                next[t] += count;
            }
        }
        dist = next;
    }
    dist.swap_remove(field.index_of(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields_up_to(max_q: u32) -> Vec<FieldSpec> {
        let mut out = Vec::new();
        for p in 2..=max_q {
            if !is_prime(p as u64) {
                continue;
            }
            let mut a = 1;
            while p.pow(a) <= max_q {
                out.push(FieldSpec::new(p, a).unwrap());
                a += 1;
            }
        }
        out
    }

    #[test]
    fn construction() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        // x^2 + 1 over F_3: the constant-first scan rejects c0 = 0 and finds c1 = 0
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // x^3 + 1 has the root 1; x^3 + x^2 + 1 is next
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::new(2, 0).is_err());
        assert!(matches!(FieldSpec::new(2, 14), Err(Error::Refused(_))));
    }

    #[test]
    fn irreducibility_by_root_check_for_small_degrees() {
        // degree 2 and 3 are irreducible iff root-free
        for p in [2u32, 3, 5] {
            for deg in 2..=3usize {
                for i in 0..(p as u64).pow(deg as u32) {
                    let mut poly = digits(i, deg, p);
                    poly.push(1);
                    let has_root = (0..p).any(|x| {
                        poly.iter()
                            .rev()
                            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                            == 0
                    });
                    assert_eq!(is_irreducible(&poly, p), !has_root, "{poly:?} over F_{p}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustively() {
        for f in fields_up_to(49) {
            let els = f.enumerate_elements();
            assert_eq!(els.len() as u32, f.q());
            let (zero, one) = (f.zero(), f.one());
            for x in &els {
                assert_eq!(f.add(x, &zero), *x);
                assert_eq!(f.mul(x, &one), *x);
                assert!(f.add(x, &f.neg(x)).is_zero());
                assert!(f.int_scale(f.p() as i64, x).is_zero());
                if !x.is_zero() {
                    assert_eq!(f.mul(x, &f.inv(x).unwrap()), one);
                }
                // small fields: full associativity and distributivity
                if f.q() <= 16 {
                    for y in &els {
                        assert_eq!(f.mul(x, y), f.mul(y, x));
                        for z in &els {
                            assert_eq!(f.mul(&f.mul(x, y), z), f.mul(x, &f.mul(y, z)));
                            assert_eq!(f.add(&f.add(x, y), z), f.add(x, &f.add(y, z)));
                            assert_eq!(
                                f.mul(x, &f.add(y, z)),
                                f.add(&f.mul(x, y), &f.mul(x, z))
                            );
                        }
                    }
                }
            }
            // no zero divisors
            for x in els.iter().filter(|x| !x.is_zero()) {
                for y in els.iter().filter(|y| !y.is_zero()) {
                    assert!(!f.mul(x, y).is_zero());
                }
            }
            assert!(f.inv(&zero).is_err());
        }
    }

    #[test]
    fn distributivity_and_associativity_up_to_49() {
        for f in fields_up_to(49).into_iter().filter(|f| f.q() > 16) {
            let els = f.enumerate_elements();
            for x in &els {
                for y in &els {
                    let xy = f.mul(x, y);
                    for z in els.iter().step_by(3) {
                        assert_eq!(f.mul(&xy, z), f.mul(x, &f.mul(y, z)));
                        assert_eq!(f.mul(x, &f.add(y, z)), f.add(&xy, &f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in [FieldSpec::new(2, 3).unwrap(), FieldSpec::new(3, 2).unwrap()] {
            let els = f.enumerate_elements();
            let p = f.p() as u64;
            for x in &els {
                for y in &els {
                    assert_eq!(
                        f.pow(&f.add(x, y), p),
                        f.add(&f.pow(x, p), &f.pow(y, p))
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_order_and_indexing() {
        let f = FieldSpec::new(3, 2).unwrap();
        let els = f.enumerate_elements();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        for (i, e) in els.iter().enumerate() {
            assert_eq!(f.index_of(e), i);
        }
        assert!(els[0].is_zero());
    }

    #[test]
    fn parse_and_render() {
        let f = FieldSpec::new(3, 2).unwrap();
        let e = f.parse_element("2,1").unwrap();
        assert_eq!(e.to_string(), "2,1");
        assert_eq!(f.parse_element("1").unwrap(), f.one());
        assert!(f.parse_element("3").is_err());
        assert!(f.parse_element("1,1,1").is_err());
        assert!(f.parse_element("x").is_err());
    }

    #[test]
    fn linear_equation_solution_counts() {
        for f in fields_up_to(9) {
            let q = f.q() as i64;
            let els = f.enumerate_elements();
            for m in 1..=3usize {
                let coeff_range: Vec<i64> = (0..=2 * f.p() as i64).collect();
                let mut coeff_sets = vec![vec![]];
                for _ in 0..m {
                    coeff_sets = coeff_sets
                        .into_iter()
                        .flat_map(|c: Vec<i64>| {
                            coeff_range.iter().map(move |&l| {
                                let mut c = c.clone();
                                c.push(l);
                                c
                            })
                        })
                        .collect();
                }
                for ls in coeff_sets.iter().step_by(if m == 3 { 7 } else { 1 }) {
                    for b in &els {
                        // brute force over F_q^m
                        let mut brute = 0i64;
                        let total = (q as usize).pow(m as u32);
                        for idx in 0..total {
                            let mut rest = idx;
                            let mut s = f.zero();
                            for &l in ls {
                                let x = f.element_at(rest % q as usize);
                                rest /= q as usize;
                                s = f.add(&s, &f.int_scale(l, &x));
                            }
                            if s == *b {
                                brute += 1;
                            }
                        }
                        let dp = linear_solution_count(&f, ls, b);
                        assert_eq!(dp, BigInt::from(brute));
                        let all_vanish = ls.iter().all(|l| l % f.p() as i64 == 0);
                        let v_plus_1 = if b.is_zero() { q } else { 0 };
                        let want = if all_vanish { v_plus_1 * q.pow(m as u32 - 1) } else { q.pow(m as u32 - 1) };
                        assert_eq!(dp, BigInt::from(want), "{ls:?} b={b} q={q}");
                    }
                }
            }
        }
    }
}
