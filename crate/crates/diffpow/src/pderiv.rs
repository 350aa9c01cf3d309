//! The p-derivation delta attached to the Frobenius lift x_i -> x_i^p,
//! iterated and mixed operators, and mixed differential powers.
//!
//! delta(f) = (phi(f) - f^p) / p, which is exact because phi is a lift of
//! Frobenius. With this choice delta(x_i) = 0 for every variable.

use num_bigint::BigInt;
use num_traits::One;

use crate::diffops::{enumerate_operators, DividedPartial};
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{CoeffDomain, Ring};

/// Default cap on delta iteration depth; coefficient growth is doubly
/// exponential, so deep chains are a configuration decision, not a default.
pub const DEFAULT_DELTA_CAP: u32 = 4;

/// The p-derivation on a polynomial ring over the integers, determined by
/// the Frobenius lift that sends every variable to its p-th power and fixes
/// integer coefficients.
#[derive(Debug, Clone)]
pub struct PDerivation {
    ring: Ring,
    cap: u32,
}

impl PDerivation {
    pub fn new(ring: &Ring) -> Result<Self> {
        if ring.domain() != CoeffDomain::Integers {
            return Err(Error::ConfigError(
                "p-derivations act on integer-coefficient rings".into(),
            ));
        }
        Ok(PDerivation {
            ring: ring.clone(),
            cap: DEFAULT_DELTA_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    /// The Frobenius lift: monomials map to their p-th powers, coefficients
    /// are fixed.
    pub fn frobenius(&self, f: &Polynomial) -> Result<Polynomial> {
        let p = self.ring.p();
        let mut out = Polynomial::zero(f.ring());
        for (m, c) in f.terms() {
            let scaled: Vec<u64> = m
                .exponents()
                .iter()
                .map(|&e| e.checked_mul(p).ok_or(Error::DegreeOverflow))
                .collect::<Result<_>>()?;
            out.add_term(Monomial::new(scaled), c.clone());
        }
        Ok(out)
    }

    pub fn delta(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_ring(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let p32 =
            u32::try_from(self.ring.p()).map_err(|_| Error::ConfigError("p too large".into()))?;
        let phi = self.frobenius(f)?;
        let fp = f.checked_pow(p32)?;
        (phi - fp).exact_div_int(&self.ring.p_bigint())
    }

    /// Literal a-fold iteration of delta. Depth is capped.
    pub fn delta_iter(&self, f: &Polynomial, a: u32) -> Result<Polynomial> {
        if a > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "delta iteration depth {a} exceeds cap {}",
                self.cap
            )));
        }
        let mut g = f.clone();
        for _ in 0..a {
            g = self.delta(&g)?;
        }
        Ok(g)
    }

    /// The carry term C_p(x, y) = (x^p + y^p - (x+y)^p) / p, which measures
    /// the failure of additivity: delta(x+y) = delta(x) + delta(y) + C_p(x,y).
    pub fn carry_term(&self, x: &Polynomial, y: &Polynomial) -> Result<Polynomial> {
        let p32 =
            u32::try_from(self.ring.p()).map_err(|_| Error::ConfigError("p too large".into()))?;
        let num = x.checked_pow(p32)? + y.checked_pow(p32)? - x.checked_add(y)?.checked_pow(p32)?;
        num.exact_div_int(&self.ring.p_bigint())
    }

    /// delta^a(f) modulo p for a = 0..=a_max, via a truncated chain with
    /// coefficients carried modulo p^(a_max + 1 - i) at step i. Far cheaper
    /// than the exact iterate when only mod-p verdicts are needed.
    pub fn delta_chain_mod_p(&self, f: &Polynomial, a_max: u32) -> Result<Vec<Polynomial>> {
        if !f.ring().same_ring(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let p = self.ring.p_bigint();
        let p32 =
            u32::try_from(self.ring.p()).map_err(|_| Error::ConfigError("p too large".into()))?;
        let mut out = Vec::with_capacity(a_max as usize + 1);
        let mut modulus = p.pow(a_max + 1);
        let mut g = f.reduce_coeffs_mod(&modulus);
        out.push(g.reduce_mod_p());
        for _ in 0..a_max {
            let phi = self.frobenius(&g)?.reduce_coeffs_mod(&modulus);
            let fp = pow_mod(&g, p32, &modulus)?;
            let h = (phi - fp).reduce_coeffs_mod(&modulus);
            let quot = h.exact_div_int(&p)?;
            modulus /= &p;
            g = quot.reduce_coeffs_mod(&modulus);
            out.push(g.reduce_mod_p());
        }
        Ok(out)
    }

    /// delta^a(f) modulo p, as a polynomial in the mod-p twin ring.
    pub fn delta_iter_mod_p(&self, f: &Polynomial, a: u32) -> Result<Polynomial> {
        Ok(self.delta_chain_mod_p(f, a)?.pop().expect("nonempty chain"))
    }
}

fn pow_mod(f: &Polynomial, e: u32, modulus: &BigInt) -> Result<Polynomial> {
    let mut acc = Polynomial::constant(f.ring(), BigInt::one());
    let mut base = f.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.checked_mul(&base)?.reduce_coeffs_mod(modulus);
        }
        e >>= 1;
        if e > 0 {
            base = base.checked_mul(&base)?.reduce_coeffs_mod(modulus);
        }
    }
    Ok(acc)
}

/// A composite operator delta^a after a divided partial.
#[derive(Debug, Clone)]
pub struct MixedOperator {
    pub delta_iterations: u32,
    pub partial: DividedPartial,
}

impl MixedOperator {
    pub fn new(delta_iterations: u32, partial: DividedPartial) -> Self {
        MixedOperator {
            delta_iterations,
            partial,
        }
    }

    /// Total order a + |alpha|.
    pub fn order(&self) -> u64 {
        u64::from(self.delta_iterations) + self.partial.order()
    }

    /// delta^a(partial(f)), exact.
    pub fn apply(&self, pd: &PDerivation, f: &Polynomial) -> Result<Polynomial> {
        pd.delta_iter(&self.partial.apply(f), self.delta_iterations)
    }

    /// delta^a(partial(f)) modulo p.
    pub fn apply_mod_p(&self, pd: &PDerivation, f: &Polynomial) -> Result<Polynomial> {
        pd.delta_iter_mod_p(&self.partial.apply(f), self.delta_iterations)
    }
}

/// Membership in the n-th mixed differential power of an ideal containing p:
/// every composite delta^a . partial with a + order(partial) <= n-1 must send
/// `f` into the ideal. Verdicts are decided mod p, which is equivalent since
/// the ideal contains p.
pub fn mixed_power_member(f: &Polynomial, ideal: &IdealHandle, n: u32) -> Result<bool> {
    assert!(n >= 1, "mixed powers are indexed from 1");
    if !ideal.contains_p()? {
        return Err(Error::PNotInIdeal);
    }
    let pd = PDerivation::new(ideal.ring())?.with_cap(n);
    let reduced = ideal.reduce_mod_p()?;
    for partial in enumerate_operators(u64::from(n) - 1, f.ring()) {
        let b = u32::try_from(partial.order()).expect("operator order fits u32");
        let df = partial.apply(f);
        let chain = pd.delta_chain_mod_p(&df, n - 1 - b)?;
        for value in &chain {
            if !reduced.member(value)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership verdicts produced by one sweep, for all indices 1..=n.
///
/// Index k holds iff every composite of order <= k-1 maps `f` into the ideal,
/// so one enumeration up to order n-1 yields the whole column.
pub fn mixed_power_profile(f: &Polynomial, ideal: &IdealHandle, n: u32) -> Result<Vec<bool>> {
    assert!(n >= 1);
    if !ideal.contains_p()? {
        return Err(Error::PNotInIdeal);
    }
    let pd = PDerivation::new(ideal.ring())?.with_cap(n);
    let reduced = ideal.reduce_mod_p()?;
    // max_violation_order[k] = some composite of order k escapes the ideal.
    let mut violated = vec![false; n as usize];
    for partial in enumerate_operators(u64::from(n) - 1, f.ring()) {
        let b = partial.order() as u32;
        let df = partial.apply(f);
        let chain = pd.delta_chain_mod_p(&df, n - 1 - b)?;
        for (a, value) in chain.iter().enumerate() {
            let order = a as u32 + b;
            if !violated[order as usize] && !reduced.member(value)? {
                violated[order as usize] = true;
            }
        }
    }
    let mut out = Vec::with_capacity(n as usize);
    let mut ok = true;
    for v in violated.iter().take(n as usize) {
        ok = ok && !v;
        out.push(ok);
    }
    Ok(out)
}

/// The identities from the iterated-delta lemma; each item names the element
/// and the ideal it must fall into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaLemmaItem {
    /// delta^n(x+y) - delta^n(x) in (y, delta(y), ..., delta^n(y)).
    SumShift,
    /// delta^n(phi(x)) in (x, delta(x), ..., delta^n(x), p*delta^(n+1)(x)).
    FrobeniusImage,
    /// delta^n(xy) - x^(p^n) delta^n(y)
    /// in (y, delta(y), ..., delta^(n-1)(y), p*delta^n(y)).
    ProductTwist,
    /// delta^n(xy) in (y, delta(y), ..., delta^n(y)).
    ProductEnvelope,
    /// delta^n(py) in (y, delta(y), ..., delta^(n-1)(y), p*delta^n(y)).
    PMultipleEnvelope,
}

impl DeltaLemmaItem {
    pub const ALL: [DeltaLemmaItem; 5] = [
        DeltaLemmaItem::SumShift,
        DeltaLemmaItem::FrobeniusImage,
        DeltaLemmaItem::ProductTwist,
        DeltaLemmaItem::ProductEnvelope,
        DeltaLemmaItem::PMultipleEnvelope,
    ];
}

/// Evaluates one lemma item at concrete x, y, n and decides the stated
/// membership over ZZ. Returns the verdict (expected true for a correct
/// p-derivation).
pub fn lemma_propdelta_check(
    pd: &PDerivation,
    item: DeltaLemmaItem,
    x: &Polynomial,
    y: &Polynomial,
    n: u32,
) -> Result<bool> {
    assert!(n >= 1);
    let p = pd.ring().p_bigint();
    let deltas_of = |g: &Polynomial, up_to: u32| -> Result<Vec<Polynomial>> {
        let mut out = Vec::with_capacity(up_to as usize + 1);
        let mut cur = g.clone();
        out.push(cur.clone());
        for _ in 0..up_to {
            cur = pd.delta(&cur)?;
            out.push(cur.clone());
        }
        Ok(out)
    };

    let (element, ideal_gens): (Polynomial, Vec<Polynomial>) = match item {
        DeltaLemmaItem::SumShift => {
            let lhs = pd.delta_iter(&x.checked_add(y)?, n)? - pd.delta_iter(x, n)?;
            (lhs, deltas_of(y, n)?)
        }
        DeltaLemmaItem::FrobeniusImage => {
            let chain = deltas_of(x, n + 1)?;
            let mut gens: Vec<Polynomial> = chain[..=n as usize].to_vec();
            gens.push(chain[n as usize + 1].scale(&p));
            (pd.delta_iter(&pd.frobenius(x)?, n)?, gens)
        }
        DeltaLemmaItem::ProductTwist => {
            let pn = pow_u64(pd.p(), n);
            let twist = x.checked_pow(pn)?;
            let lhs =
                pd.delta_iter(&x.checked_mul(y)?, n)? - twist.checked_mul(&pd.delta_iter(y, n)?)?;
            let chain = deltas_of(y, n)?;
            let mut gens: Vec<Polynomial> = chain[..n as usize].to_vec();
            gens.push(chain[n as usize].scale(&p));
            (lhs, gens)
        }
        DeltaLemmaItem::ProductEnvelope => {
            (pd.delta_iter(&x.checked_mul(y)?, n)?, deltas_of(y, n)?)
        }
        DeltaLemmaItem::PMultipleEnvelope => {
            let chain = deltas_of(y, n)?;
            let mut gens: Vec<Polynomial> = chain[..n as usize].to_vec();
            gens.push(chain[n as usize].scale(&p));
            (pd.delta_iter(&y.scale(&p), n)?, gens)
        }
    };

    if element.is_zero() {
        return Ok(true);
    }
    let gens: Vec<Polynomial> = ideal_gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(false);
    }
    IdealHandle::new(gens)?.member(&element)
}

fn pow_u64(base: u64, exp: u32) -> u32 {
    let mut out: u64 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base);
    }
    u32::try_from(out).expect("p^n exponent fits u32")
}
