//! Ideal-membership oracles: Buchberger over F_p, strong bases over ZZ,
//! normal forms, elimination, saturation, and ideal powers.

pub mod order;

mod brute;
mod buchberger;
mod elim;
mod reduce;

use std::sync::OnceLock;

use num_bigint::BigInt;

pub(crate) use brute::integer_kernel;
pub use brute::member_bruteforce;
pub use elim::{elimination_ideal, saturate};
pub use order::{MonomialOrder, OrderKind};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{CoeffDomain, Ring};

/// Resource limits for basis computation and reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of critical pairs processed per basis computation.
    pub max_pairs: u64,
    /// Maximum reduction steps for a single normal form.
    pub reduction_steps: u64,
}

static BUDGET_SCALE: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(1);
static TRACE_PAIRS: std::sync::atomic::AtomicBool = std::sync::atomic::AtomicBool::new(false);

/// Scales every subsequently created default budget; the CLI --budget flag
/// lands here.
pub fn set_budget_scale(factor: u64) {
    BUDGET_SCALE.store(factor.max(1), std::sync::atomic::Ordering::Relaxed);
}

/// Enables a stderr trace of critical-pair processing. Also switched on by
/// the DIFFPOW_GB_TRACE environment variable.
pub fn set_trace(enabled: bool) {
    TRACE_PAIRS.store(enabled, std::sync::atomic::Ordering::Relaxed);
}

pub(crate) fn trace_enabled() -> bool {
    TRACE_PAIRS.load(std::sync::atomic::Ordering::Relaxed)
        || std::env::var_os("DIFFPOW_GB_TRACE").is_some()
}

impl Default for Budget {
    fn default() -> Self {
        let scale = BUDGET_SCALE.load(std::sync::atomic::Ordering::Relaxed);
        Budget {
            max_pairs: 200_000u64.saturating_mul(scale),
            reduction_steps: 20_000_000u64.saturating_mul(scale),
        }
    }
}

impl Budget {
    pub fn scaled(&self, factor: u64) -> Budget {
        Budget {
            max_pairs: self.max_pairs.saturating_mul(factor),
            reduction_steps: self.reduction_steps.saturating_mul(factor),
        }
    }
}

/// Kind of basis held in the cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Reduced Groebner basis over F_p.
    FieldGb,
    /// Strong basis over ZZ (S- and GCD-polynomials all reduce to zero).
    StrongZGb,
}

#[derive(Debug, Clone)]
pub struct Basis {
    pub elements: Vec<Polynomial>,
    pub kind: BasisKind,
}

/// An ideal given by generators, with a lazily computed basis cache.
///
/// The cache is written once; afterwards concurrent reads are safe.
#[derive(Debug)]
pub struct IdealHandle {
    ring: Ring,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    budget: Budget,
    cache: OnceLock<std::result::Result<Basis, Error>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(b) = self.cache.get() {
            let _ = cache.set(b.clone());
        }
        IdealHandle {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            order: self.order.clone(),
            budget: self.budget,
            cache,
        }
    }
}

impl IdealHandle {
    pub fn new(generators: Vec<Polynomial>) -> Result<Self> {
        let ring = generators
            .first()
            .map(|g| g.ring().clone())
            .ok_or_else(|| Error::ConfigError("ideal needs at least one generator".into()))?;
        let order = MonomialOrder::weighted_grevlex(&ring);
        Self::with_order(generators, order)
    }

    pub fn with_order(generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        let ring = generators
            .first()
            .map(|g| g.ring().clone())
            .ok_or_else(|| Error::ConfigError("ideal needs at least one generator".into()))?;
        for g in &generators {
            if !g.ring().same_ring(&ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(IdealHandle {
            ring,
            generators,
            order,
            budget: Budget::default(),
            cache: OnceLock::new(),
        })
    }

    /// The zero ideal in `ring`.
    pub fn zero(ring: &Ring) -> Self {
        IdealHandle {
            ring: ring.clone(),
            generators: Vec::new(),
            order: MonomialOrder::weighted_grevlex(ring),
            budget: Budget::default(),
            cache: OnceLock::new(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// Computes (or returns the cached) basis: reduced Groebner over F_p,
    /// strong basis over ZZ.
    pub fn basis(&self) -> Result<&Basis> {
        let entry = self.cache.get_or_init(|| {
            let gens: Vec<Polynomial> = self
                .generators
                .iter()
                .filter(|g| !g.is_zero())
                .cloned()
                .collect();
            if gens.is_empty() {
                return Ok(Basis {
                    elements: Vec::new(),
                    kind: match self.ring.domain() {
                        CoeffDomain::IntegersModP => BasisKind::FieldGb,
                        CoeffDomain::Integers => BasisKind::StrongZGb,
                    },
                });
            }
            match self.ring.domain() {
                CoeffDomain::IntegersModP => {
                    buchberger::field_basis(&gens, &self.order, &self.ring, &self.budget).map(
                        |elements| Basis {
                            elements,
                            kind: BasisKind::FieldGb,
                        },
                    )
                }
                CoeffDomain::Integers => {
                    buchberger::strong_z_basis(&gens, &self.order, &self.ring, &self.budget).map(
                        |elements| Basis {
                            elements,
                            kind: BasisKind::StrongZGb,
                        },
                    )
                }
            }
        });
        entry.as_ref().map_err(|e| e.clone())
    }

    /// Normal form of `f` against the basis. Zero iff `f` is a member.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_ring(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let basis = self.basis()?;
        let prepared: Vec<reduce::PreparedReducer> = basis
            .elements
            .iter()
            .map(|g| reduce::prepare(g, &self.order))
            .collect();
        reduce::normal_form(f, &prepared, &self.order, &self.ring, &self.budget)
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Membership of `p` itself.
    pub fn contains_p(&self) -> Result<bool> {
        let p = Polynomial::constant(&self.ring, self.ring.p_bigint());
        self.member(&p)
    }

    /// The n-th power: all n-fold products of generators, deduplicated.
    pub fn power(&self, n: u32) -> Result<IdealHandle> {
        if n == 0 {
            return IdealHandle::with_order(vec![Polynomial::one(&self.ring)], self.order.clone());
        }
        let mut gens: Vec<Polynomial> = self.generators.clone();
        for _ in 1..n {
            let mut next: Vec<Polynomial> = Vec::new();
            for a in &gens {
                for b in &self.generators {
                    let prod = a.checked_mul(b)?;
                    if !next.contains(&prod) {
                        next.push(prod);
                    }
                }
            }
            gens = next;
        }
        let mut deduped: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !deduped.contains(&g) {
                deduped.push(g);
            }
        }
        IdealHandle::with_order(deduped, self.order.clone()).map(|h| h.with_budget(self.budget))
    }

    /// Sum of two ideals: concatenated generators.
    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        IdealHandle::with_order(gens, self.order.clone()).map(|h| h.with_budget(self.budget))
    }

    /// Reduces every generator mod p, producing the image ideal in the twin
    /// field ring.
    pub fn reduce_mod_p(&self) -> Result<IdealHandle> {
        let twin = self.ring.mod_p_twin();
        let gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.reduce_mod_p())
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            return Ok(IdealHandle::zero(&twin).with_budget(self.budget));
        }
        let order = self.order.clone();
        IdealHandle::with_order(gens, order).map(|h| h.with_budget(self.budget))
    }

    /// Leading term of `f` under this ideal's order.
    pub fn leading_term_of(&self, f: &Polynomial) -> Option<(crate::monomial::Monomial, BigInt)> {
        reduce::leading_term(f, &self.order)
    }
}
