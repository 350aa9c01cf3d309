use std::collections::BinaryHeap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::order::MonomialOrder;
use super::reduce::{leading_term, normal_form, prepare, PreparedReducer};
use super::Budget;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Pending critical pair, ordered so the smallest lcm degree pops first.
#[derive(Debug, PartialEq, Eq)]
struct Pair {
    // BinaryHeap is a max-heap; store negated degree via Reverse-style cmp.
    lcm_degree: u64,
    i: usize,
    j: usize,
    kind: PairKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PairKind {
    SPoly,
    GPoly,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .lcm_degree
            .cmp(&self.lcm_degree)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
            .then_with(|| other.kind.cmp(&self.kind))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct State<'a> {
    ring: &'a Ring,
    order: &'a MonomialOrder,
    basis: Vec<Polynomial>,
    prepared: Vec<PreparedReducer>,
    pairs: BinaryHeap<Pair>,
    processed: u64,
}

impl<'a> State<'a> {
    fn push_pairs(&mut self, new_index: usize, with_gpolys: bool) {
        let (lm_new, _) = (
            self.prepared[new_index].lead_monomial.clone(),
            &self.prepared[new_index].lead_coeff,
        );
        for i in 0..new_index {
            let lm_i = &self.prepared[i].lead_monomial;
            let lcm = lm_i.lcm(&lm_new);
            let deg = lcm.weighted_degree(self.ring.weights());
            self.pairs.push(Pair {
                lcm_degree: deg,
                i,
                j: new_index,
                kind: PairKind::SPoly,
            });
            if with_gpolys {
                self.pairs.push(Pair {
                    lcm_degree: deg,
                    i,
                    j: new_index,
                    kind: PairKind::GPoly,
                });
            }
        }
    }

    fn add_element(&mut self, f: Polynomial, with_gpolys: bool) {
        self.prepared.push(prepare(&f, self.order));
        self.basis.push(f);
        self.push_pairs(self.basis.len() - 1, with_gpolys);
    }
}

fn normalize_sign(f: Polynomial, order: &MonomialOrder) -> Polynomial {
    match leading_term(&f, order) {
        Some((_, c)) if c.is_negative() => f.neg_ref(),
        _ => f,
    }
}

/// Buchberger over F_p; returns the unique reduced basis.
pub(crate) fn field_basis(
    generators: &[Polynomial],
    order: &MonomialOrder,
    ring: &Ring,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let mut st = State {
        ring,
        order,
        basis: Vec::new(),
        prepared: Vec::new(),
        pairs: BinaryHeap::new(),
        processed: 0,
    };
    for g in generators {
        if !g.is_zero() {
            st.add_element(g.clone(), false);
        }
    }

    while let Some(pair) = st.pairs.pop() {
        st.processed += 1;
        if st.processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "basis computation exceeded {} critical pairs",
                budget.max_pairs
            )));
        }
        let gi = &st.prepared[pair.i];
        let gj = &st.prepared[pair.j];
        // Product criterion: coprime lead monomials reduce to zero over a field.
        if gi.lead_monomial.coprime(&gj.lead_monomial) {
            continue;
        }
        let s = s_polynomial_field(gi, gj, ring);
        let r = normal_form(&s, &st.prepared, order, ring, budget)?;
        if super::trace_enabled() {
            eprintln!(
                "gb[fp] pair ({}, {}) deg {} -> {}",
                pair.i,
                pair.j,
                pair.lcm_degree,
                if r.is_zero() { "0" } else { "new element" }
            );
        }
        if !r.is_zero() {
            st.add_element(r, false);
        }
    }

    reduce_field_basis(st.basis, order, ring, budget)
}

fn s_polynomial_field(a: &PreparedReducer, b: &PreparedReducer, ring: &Ring) -> Polynomial {
    let lcm = a.lead_monomial.lcm(&b.lead_monomial);
    let sa = a.lead_monomial.divide_into(&lcm);
    let sb = b.lead_monomial.divide_into(&lcm);
    let fa = reducer_to_poly(a, ring)
        .mul_monomial(&sa)
        .scale(&b.lead_coeff);
    let fb = reducer_to_poly(b, ring)
        .mul_monomial(&sb)
        .scale(&a.lead_coeff);
    fa - fb
}

fn reducer_to_poly(r: &PreparedReducer, ring: &Ring) -> Polynomial {
    let mut terms = r.tail.clone();
    terms.push((r.lead_monomial.clone(), r.lead_coeff.clone()));
    Polynomial::from_terms(ring, terms)
}

/// Minimalizes and tail-reduces a field basis; makes every element monic.
fn reduce_field_basis(
    mut basis: Vec<Polynomial>,
    order: &MonomialOrder,
    ring: &Ring,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let p = ring.p_bigint();
    // Make monic.
    for f in basis.iter_mut() {
        let (_, c) = leading_term(f, order).expect("nonzero basis element");
        let e = c.extended_gcd(&p);
        *f = f.scale(&e.x.mod_floor(&p));
    }
    // Drop elements whose lead monomial is divisible by another lead.
    let mut keep: Vec<Polynomial> = Vec::new();
    'cand: for (i, f) in basis.iter().enumerate() {
        let (lm_f, _) = leading_term(f, order).unwrap();
        for (j, g) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let (lm_g, _) = leading_term(g, order).unwrap();
            if lm_g.divides(&lm_f) && (lm_g != lm_f || j < i) {
                continue 'cand;
            }
        }
        keep.push(f.clone());
    }
    // Tail-reduce each element against the others.
    let mut reduced: Vec<Polynomial> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<PreparedReducer> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| prepare(g, order))
            .collect();
        let r = normal_form(&keep[i], &others, order, ring, budget)?;
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| {
        let (la, _) = leading_term(a, order).unwrap();
        let (lb, _) = leading_term(b, order).unwrap();
        order.cmp(&la, &lb)
    });
    Ok(reduced)
}

/// Euclidean Buchberger over ZZ: processes S-polynomials and GCD-polynomials
/// for every pair, so the result is a strong basis and exact-division
/// reduction decides ideal membership.
pub(crate) fn strong_z_basis(
    generators: &[Polynomial],
    order: &MonomialOrder,
    ring: &Ring,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let mut st = State {
        ring,
        order,
        basis: Vec::new(),
        prepared: Vec::new(),
        pairs: BinaryHeap::new(),
        processed: 0,
    };
    for g in generators {
        if !g.is_zero() {
            st.add_element(normalize_sign(g.clone(), order), true);
        }
    }

    while let Some(pair) = st.pairs.pop() {
        st.processed += 1;
        if st.processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "basis computation exceeded {} critical pairs",
                budget.max_pairs
            )));
        }
        let gi = &st.prepared[pair.i];
        let gj = &st.prepared[pair.j];
        let candidate = match pair.kind {
            PairKind::SPoly => s_polynomial_z(gi, gj, ring),
            PairKind::GPoly => match g_polynomial_z(gi, gj, ring) {
                Some(g) => g,
                None => continue,
            },
        };
        let r = normal_form(&candidate, &st.prepared, order, ring, budget)?;
        if super::trace_enabled() {
            eprintln!(
                "gb[zz] {:?} pair ({}, {}) deg {} -> {}",
                pair.kind,
                pair.i,
                pair.j,
                pair.lcm_degree,
                if r.is_zero() { "0" } else { "new element" }
            );
        }
        if !r.is_zero() {
            st.add_element(normalize_sign(r, order), true);
        }
    }

    // Prune elements that reduce to zero against the rest. Safe: the first
    // reduction step of such an element covers its lead term exactly.
    let mut kept: Vec<Polynomial> = st.basis.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for i in (0..kept.len()).rev() {
            let others: Vec<PreparedReducer> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| prepare(g, order))
                .collect();
            if others.is_empty() {
                break;
            }
            let r = normal_form(&kept[i], &others, order, ring, budget)?;
            if r.is_zero() {
                kept.remove(i);
                changed = true;
            }
        }
    }
    kept.sort_by(|a, b| {
        let (la, _) = leading_term(a, order).unwrap();
        let (lb, _) = leading_term(b, order).unwrap();
        order.cmp(&la, &lb)
    });
    Ok(kept)
}

fn s_polynomial_z(a: &PreparedReducer, b: &PreparedReducer, ring: &Ring) -> Polynomial {
    let lcm_m = a.lead_monomial.lcm(&b.lead_monomial);
    let lcm_c = a.lead_coeff.lcm(&b.lead_coeff);
    let sa = a.lead_monomial.divide_into(&lcm_m);
    let sb = b.lead_monomial.divide_into(&lcm_m);
    let ca = &lcm_c / &a.lead_coeff;
    let cb = &lcm_c / &b.lead_coeff;
    reducer_to_poly(a, ring).mul_monomial(&sa).scale(&ca)
        - reducer_to_poly(b, ring).mul_monomial(&sb).scale(&cb)
}

/// Bezout combination achieving gcd of the lead coefficients on the lcm
/// monomial. Returns None when one lead coefficient divides the other (the
/// combination is then a trivial multiple of one generator).
fn g_polynomial_z(a: &PreparedReducer, b: &PreparedReducer, ring: &Ring) -> Option<Polynomial> {
    if (&b.lead_coeff % &a.lead_coeff).is_zero() || (&a.lead_coeff % &b.lead_coeff).is_zero() {
        return None;
    }
    let e = a.lead_coeff.extended_gcd(&b.lead_coeff);
    let lcm_m = a.lead_monomial.lcm(&b.lead_monomial);
    let sa = a.lead_monomial.divide_into(&lcm_m);
    let sb = b.lead_monomial.divide_into(&lcm_m);
    let fa = reducer_to_poly(a, ring).mul_monomial(&sa).scale(&e.x);
    let fb = reducer_to_poly(b, ring).mul_monomial(&sb).scale(&e.y);
    let g = fa + fb;
    debug_assert!(!g.is_zero());
    Some(g)
}
