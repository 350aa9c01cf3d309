//! Divided-power differential operators and the A-linear differential power.
//!
//! For a polynomial ring over ZZ the divided partials of order <= b generate
//! the differential operators of order <= b as a module, so the membership
//! quantifier over all operators reduces to this finite family.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::groebner::IdealHandle;
use crate::monomial::{monomials_up_to_weighted_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A divided-power partial derivative, acting by
/// x^beta -> prod_i C(beta_i, alpha_i) * x^(beta - alpha).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedPartial {
    alpha: Monomial,
}

impl DividedPartial {
    pub fn new(alpha: Monomial) -> Self {
        DividedPartial { alpha }
    }

    pub fn identity(num_vars: usize) -> Self {
        DividedPartial {
            alpha: Monomial::one(num_vars),
        }
    }

    pub fn alpha(&self) -> &Monomial {
        &self.alpha
    }

    /// The operator order |alpha|.
    pub fn order(&self) -> u64 {
        self.alpha.total_degree()
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        apply_divided_partial(self.alpha.clone(), f)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Applies the divided partial with multi-exponent `alpha` to `f`.
/// Divided powers keep integer coefficients: the scalars are binomials.
pub fn apply_divided_partial(alpha: Monomial, f: &Polynomial) -> Polynomial {
    assert_eq!(alpha.len(), f.ring().num_vars(), "operator arity mismatch");
    let mut out = Polynomial::zero(f.ring());
    for (m, c) in f.terms() {
        if !alpha.divides(m) {
            continue;
        }
        let mut scalar = BigInt::one();
        for (&b, &a) in m.exponents().iter().zip(alpha.exponents()) {
            if a > 0 {
                scalar *= binomial(b, a);
            }
        }
        out.add_term(alpha.divide_into(m), c * scalar);
    }
    out
}

/// All divided partials of order at most `max_order`; there are
/// C(m + b, b) of them for m variables.
pub fn enumerate_operators(max_order: u64, ring: &Ring) -> Vec<DividedPartial> {
    let ones = vec![1u64; ring.num_vars()];
    monomials_up_to_weighted_degree(ring.num_vars(), &ones, max_order)
        .into_iter()
        .map(DividedPartial::new)
        .collect()
}

/// Membership in the n-th A-linear differential power of `ideal`:
/// every divided partial of order < n must send `f` into the ideal.
pub fn differential_power_member(f: &Polynomial, ideal: &IdealHandle, n: u32) -> Result<bool> {
    assert!(n >= 1, "differential powers are indexed from 1");
    for op in enumerate_operators(u64::from(n) - 1, f.ring()) {
        if !ideal.member(&op.apply(f))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    #[test]
    fn binomial_scalars() {
        // alpha = (2) on x^5 gives C(5,2) x^3 = 10 x^3.
        let r = Ring::standard(&["x"], 2).unwrap();
        let f = parse_polynomial(&r, "x^5").unwrap();
        let d = apply_divided_partial(Monomial::new(vec![2]), &f);
        assert_eq!(d, parse_polynomial(&r, "10*x^3").unwrap());
    }

    #[test]
    fn zero_operator_is_identity() {
        let r = Ring::standard(&["x", "y"], 2).unwrap();
        let f = parse_polynomial(&r, "x^2*y - 7*y^3 + 4").unwrap();
        let id = DividedPartial::identity(2);
        assert_eq!(id.apply(&f), f);
    }

    #[test]
    fn mixed_partial_on_product() {
        let r = Ring::standard(&["x", "y"], 2).unwrap();
        let f = parse_polynomial(&r, "x*y").unwrap();
        let d = apply_divided_partial(Monomial::new(vec![1, 1]), &f);
        assert_eq!(d, Polynomial::one(&r));
    }

    #[test]
    fn operator_counts() {
        let r2 = Ring::standard(&["x", "y"], 2).unwrap();
        assert_eq!(enumerate_operators(1, &r2).len(), 3);
        let r1 = Ring::standard(&["x"], 2).unwrap();
        assert_eq!(enumerate_operators(3, &r1).len(), 4);
        let r3 = Ring::standard(&["x", "y", "z"], 2).unwrap();
        assert_eq!(enumerate_operators(2, &r3).len(), 10);
    }

    #[test]
    fn differential_power_examples() {
        let r = Ring::standard(&["x"], 2).unwrap();
        let x = Polynomial::var(&r, 0);
        let ideal = IdealHandle::new(vec![x.clone()]).unwrap();
        // d/dx(x^2) = 2x lies in (x), so x^2 is in the 2nd differential power.
        assert!(differential_power_member(&x.pow(2), &ideal, 2).unwrap());
        // d/dx(x) = 1 does not.
        assert!(!differential_power_member(&x, &ideal, 2).unwrap());
    }
}
