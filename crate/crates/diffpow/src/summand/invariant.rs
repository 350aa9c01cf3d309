//! Finite group actions on polynomial rings: diagonal sign actions and
//! variable permutations, with the Reynolds averaging operator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A single group element acting on the ambient variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// `x_i -> signs[i] * x_i` with signs in {+1, -1}.
    Diagonal(Vec<i8>),
    /// `x_i -> x_perm(i)`.
    Permutation(Vec<usize>),
}

impl GroupElement {
    fn compose(&self, other: &GroupElement) -> Option<GroupElement> {
        match (self, other) {
            (GroupElement::Diagonal(a), GroupElement::Diagonal(b)) => Some(GroupElement::Diagonal(
                a.iter().zip(b).map(|(&x, &y)| x * y).collect(),
            )),
            (GroupElement::Permutation(a), GroupElement::Permutation(b)) => {
                // (a . b)(i) = a(b(i))
                Some(GroupElement::Permutation(b.iter().map(|&i| a[i]).collect()))
            }
            _ => None,
        }
    }

    fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Diagonal(s) => GroupElement::Diagonal(vec![1; s.len()]),
            GroupElement::Permutation(p) => GroupElement::Permutation((0..p.len()).collect()),
        }
    }

    pub fn apply_monomial(&self, m: &Monomial) -> (BigInt, Monomial) {
        match self {
            GroupElement::Diagonal(signs) => {
                let mut sign = BigInt::one();
                for (&s, &e) in signs.iter().zip(m.exponents()) {
                    if s < 0 && e % 2 == 1 {
                        sign = -sign;
                    }
                }
                (sign, m.clone())
            }
            GroupElement::Permutation(perm) => {
                let mut e = vec![0u64; m.len()];
                for (i, &exp) in m.exponents().iter().enumerate() {
                    e[perm[i]] = exp;
                }
                (BigInt::one(), Monomial::new(e))
            }
        }
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.ring());
        for (m, c) in f.terms() {
            let (sign, image) = self.apply_monomial(m);
            out.add_term(image, c * sign);
        }
        out
    }
}

/// A finite group given by generators, closed under composition.
#[derive(Debug, Clone)]
pub struct GroupAction {
    elements: Vec<GroupElement>,
}

impl GroupAction {
    /// Closes the generators under composition. Errors if the closure
    /// exceeds 10_000 elements or mixes element kinds.
    pub fn from_generators(generators: Vec<GroupElement>, num_vars: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ConfigError(
                "group needs at least one generator".into(),
            ));
        }
        for g in &generators {
            let len = match g {
                GroupElement::Diagonal(s) => {
                    if s.iter().any(|&x| x != 1 && x != -1) {
                        return Err(Error::ConfigError("diagonal signs must be +1/-1".into()));
                    }
                    s.len()
                }
                GroupElement::Permutation(p) => {
                    let mut seen = vec![false; p.len()];
                    for &i in p {
                        if i >= p.len() || seen[i] {
                            return Err(Error::ConfigError("invalid permutation".into()));
                        }
                        seen[i] = true;
                    }
                    p.len()
                }
            };
            if len != num_vars {
                return Err(Error::ConfigError(
                    "group element arity does not match the ring".into(),
                ));
            }
        }
        let identity = generators[0].identity_like();
        let mut elements = vec![identity];
        let mut frontier = generators.clone();
        while let Some(g) = frontier.pop() {
            if elements.contains(&g) {
                continue;
            }
            elements.push(g.clone());
            if elements.len() > 10_000 {
                return Err(Error::ConfigError("group closure too large".into()));
            }
            for h in elements.clone() {
                for prod in [g.compose(&h), h.compose(&g)] {
                    match prod {
                        Some(p) => {
                            if !elements.contains(&p) {
                                frontier.push(p);
                            }
                        }
                        None => {
                            return Err(Error::ConfigError(
                                "cannot mix diagonal and permutation elements".into(),
                            ))
                        }
                    }
                }
            }
        }
        Ok(GroupAction { elements })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn is_diagonal(&self) -> bool {
        self.elements
            .iter()
            .all(|g| matches!(g, GroupElement::Diagonal(_)))
    }

    /// Whether a monomial is fixed by every group element (diagonal actions
    /// only flip signs, so this asks for sign +1 throughout).
    pub fn monomial_invariant(&self, m: &Monomial) -> bool {
        self.elements.iter().all(|g| {
            let (sign, image) = g.apply_monomial(m);
            sign.is_one() && image == *m
        })
    }

    /// The orbit sum of a monomial (each orbit member once, coefficient one).
    pub fn orbit_sum(&self, ring: &Ring, m: &Monomial) -> Polynomial {
        let mut seen: Vec<Monomial> = Vec::new();
        for g in &self.elements {
            let (_, image) = g.apply_monomial(m);
            if !seen.contains(&image) {
                seen.push(image);
            }
        }
        let mut out = Polynomial::zero(ring);
        for mm in seen {
            out.add_term(mm, BigInt::one());
        }
        out
    }

    /// Reynolds operator over the integers: averages the orbit and divides
    /// by |G| exactly; errors when the average is not integral.
    pub fn reynolds_integral(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut total = Polynomial::zero(f.ring());
        for g in &self.elements {
            total = total.checked_add(&g.apply(f))?;
        }
        total
            .exact_div_int(&BigInt::from(self.order()))
            .map_err(|_| Error::ReynoldsNotDefined)
    }

    /// Reynolds operator modulo p: requires gcd(|G|, p) = 1.
    pub fn reynolds_mod_p(&self, f: &Polynomial) -> Result<Polynomial> {
        let p = f.ring().p_bigint();
        let order = BigInt::from(self.order());
        let e = order.extended_gcd(&p);
        if !e.gcd.is_one() {
            return Err(Error::ReynoldsNotDefined);
        }
        let inv = e.x.mod_floor(&p);
        let mut total = Polynomial::zero(f.ring());
        for g in &self.elements {
            total = total.checked_add(&g.apply(f))?;
        }
        Ok(total.scale(&inv))
    }
}
