use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::{CoeffDomain, Ring};

/// Weighted degree of a nonzero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(u64),
    NonHomogeneous,
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a BTreeMap under the exponentwise-lexicographic storage
/// order, so equal polynomials are structurally equal. No zero coefficient is
/// ever stored; in mod-p rings every coefficient is normalized into [0, p).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Ring, c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::one(ring.num_vars()), c.into());
        p
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::var(ring.num_vars(), index), BigInt::one());
        p
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::ConfigError(format!("unknown variable {name:?}")))?;
        Ok(Polynomial::var(ring, idx))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_coefficient(&self) -> BigInt {
        self.coefficient(&Monomial::one(self.ring.num_vars()))
    }

    fn normalize_coeff(&self, c: BigInt) -> BigInt {
        match self.ring.domain() {
            CoeffDomain::Integers => c,
            CoeffDomain::IntegersModP => c.mod_floor(&self.ring.p_bigint()),
        }
    }

    /// Adds `c * m` in place, normalizing and dropping zeros.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.len(), self.ring.num_vars());
        let c = self.normalize_coeff(c);
        if c.is_zero() {
            return;
        }
        let modulus = match self.ring.domain() {
            CoeffDomain::Integers => None,
            CoeffDomain::IntegersModP => Some(self.ring.p_bigint()),
        };
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let mut sum = e.get() + c;
                if let Some(p) = &modulus {
                    sum = sum.mod_floor(p);
                }
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (mm, c) in &self.terms {
            out.add_term(mm.mul(m), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn checked_pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact division of every coefficient by a nonzero integer.
    ///
    /// Failure signals a broken Frobenius-lift invariant upstream.
    pub fn exact_div_int(&self, c: &BigInt) -> Result<Polynomial> {
        if c.is_zero() {
            return Err(Error::NonExactDivision {
                coeff: "0".into(),
                divisor: "0".into(),
            });
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return Err(Error::NonExactDivision {
                    coeff: k.to_string(),
                    divisor: c.to_string(),
                });
            }
            out.add_term(m.clone(), q);
        }
        Ok(out)
    }

    /// Weighted degree; the zero polynomial has none.
    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let w = self.ring.weights();
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degrees.next().unwrap();
        if degrees.all(|d| d == first) {
            Ok(WeightedDegree::Homogeneous(first))
        } else {
            Ok(WeightedDegree::NonHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(
            self.weighted_degree(),
            Ok(WeightedDegree::Homogeneous(_)) | Err(Error::ZeroPolynomial)
        )
    }

    /// Largest weighted degree over all terms (zero polynomial has none).
    pub fn max_weighted_degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    /// Splits into (degree, homogeneous component) pairs, ascending.
    pub fn homogeneous_components(&self) -> Vec<(u64, Polynomial)> {
        let w = self.ring.weights();
        let mut buckets: BTreeMap<u64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.weighted_degree(w);
            buckets
                .entry(d)
                .or_insert_with(|| Polynomial::zero(&self.ring))
                .add_term(m.clone(), c.clone());
        }
        buckets.into_iter().collect()
    }

    /// Substitution homomorphism: `x_i -> images[i]`, coefficients fixed.
    pub fn apply_endomorphism(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.num_vars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.num_vars(),
                got: images.len(),
            });
        }
        for img in images {
            if !img.ring.same_ring(&self.ring) {
                return Err(Error::RingMismatch);
            }
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&self.ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let e32 = u32::try_from(e).map_err(|_| Error::DegreeOverflow)?;
                    term = term.checked_mul(&images[i].checked_pow(e32)?)?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Coefficientwise reduction into the mod-p twin ring.
    pub fn reduce_mod_p(&self) -> Polynomial {
        let target = self.ring.mod_p_twin();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Lifts a mod-p polynomial to integer coefficients in [0, p).
    pub fn lift_to_integers(&self) -> Polynomial {
        let target = self.ring.integral_twin();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Reduces every coefficient modulo `modulus` into [0, modulus), staying
    /// in the same ring. Used by truncated p-derivation chains.
    pub fn reduce_coeffs_mod(&self, modulus: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mod_floor(modulus));
        }
        out
    }

    /// Largest power of p dividing every coefficient (content valuation).
    /// Returns None for the zero polynomial.
    pub fn p_content_valuation(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let p = self.ring.p_bigint();
        let mut best: Option<u64> = None;
        for c in self.terms.values() {
            let mut v = 0u64;
            let mut c = c.clone();
            loop {
                if best.is_some() && v >= best.unwrap() {
                    break;
                }
                let (q, r) = c.div_rem(&p);
                if r.is_zero() {
                    v += 1;
                    c = q;
                } else {
                    break;
                }
            }
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
            if best == Some(0) {
                return Some(0);
            }
        }
        best
    }

    /// Moves the polynomial into `target`, mapping variable i of `self` to
    /// variable `map[i]` of the target ring.
    pub fn map_variables(&self, target: &Ring, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            out.add_term(m.embed(target.num_vars(), map), c.clone());
        }
        out
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::format_polynomial(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::format_polynomial(self))
    }
}


#[cfg(test)]
mod cross_ring_tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn cross_ring_operations_error() {
        let a = Ring::standard(&["x"], 2).unwrap();
        let b = Ring::standard(&["y"], 2).unwrap();
        let fa = Polynomial::var(&a, 0);
        let fb = Polynomial::var(&b, 0);
        assert_eq!(fa.checked_add(&fb), Err(Error::RingMismatch));
        assert_eq!(fa.checked_mul(&fb), Err(Error::RingMismatch));
        // Integer ring and its mod-p twin are distinct rings.
        let fm = fa.reduce_mod_p();
        assert_eq!(fa.checked_add(&fm), Err(Error::RingMismatch));
    }
}
