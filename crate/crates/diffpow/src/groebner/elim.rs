use super::order::MonomialOrder;
use super::IdealHandle;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Generators of the contraction of `ideal` to the subring on `keep`.
///
/// Computes a basis under an order whose top block is the eliminated
/// variables; basis elements free of those variables generate the contraction
/// (this holds for strong bases over ZZ as well as field bases).
pub fn elimination_ideal(ideal: &IdealHandle, keep: &[usize]) -> Result<IdealHandle> {
    let ring = ideal.ring();
    let eliminated: Vec<usize> = (0..ring.num_vars()).filter(|i| !keep.contains(i)).collect();
    let order = MonomialOrder::elimination(ring, eliminated.clone());
    let handle =
        IdealHandle::with_order(ideal.generators().to_vec(), order)?.with_budget(*ideal.budget());
    let basis = handle.basis()?;
    let kept: Vec<Polynomial> = basis
        .elements
        .iter()
        .filter(|f| {
            f.terms()
                .all(|(m, _)| eliminated.iter().all(|&i| m.exponents()[i] == 0))
        })
        .cloned()
        .collect();
    if kept.is_empty() {
        return Ok(IdealHandle::zero(ring).with_budget(*ideal.budget()));
    }
    IdealHandle::new(kept).map(|h| h.with_budget(*ideal.budget()))
}

/// Saturation (I : w^infinity), computed by eliminating a fresh variable t
/// from I + (1 - t*w).
pub fn saturate(ideal: &IdealHandle, w: &Polynomial) -> Result<IdealHandle> {
    if w.is_zero() {
        return Err(Error::ConfigError("cannot saturate by zero".into()));
    }
    if !w.ring().same_ring(ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = ideal.ring();
    let n = ring.num_vars();

    let mut fresh = "t_sat".to_string();
    while ring.var_index(&fresh).is_some() {
        fresh.push('_');
    }
    let extended = ring.extended(&[(&fresh, 1)])?;
    let id_map: Vec<usize> = (0..n).collect();

    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.map_variables(&extended, &id_map))
        .collect();
    let t = Polynomial::var(&extended, n);
    let w_ext = w.map_variables(&extended, &id_map);
    gens.push(Polynomial::one(&extended) - (&t * &w_ext));

    let big = IdealHandle::with_order(gens, MonomialOrder::elimination(&extended, vec![n]))?
        .with_budget(*ideal.budget());
    let basis = big.basis()?;
    let kept: Vec<Polynomial> = basis
        .elements
        .iter()
        .filter(|f| f.terms().all(|(m, _)| m.exponents()[n] == 0))
        .map(|f| {
            Polynomial::from_terms(
                ring,
                f.terms().map(|(m, c)| (m.restrict(&id_map), c.clone())),
            )
        })
        .collect();
    if kept.is_empty() {
        return Ok(IdealHandle::zero(ring).with_budget(*ideal.budget()));
    }
    IdealHandle::with_order(kept, ideal.order().clone()).map(|h| h.with_budget(*ideal.budget()))
}
