//! Mixed differential powers restricted to a summand R.
//!
//! The p-derivation on S restricts to monomial subrings (they are closed
//! under the Frobenius lift), so mixed powers of ideals of R make sense
//! there. Two regimes are computable:
//!   - a free presentation (empty kernel): R is itself a polynomial ring and
//!     the presentation-side machinery applies at any index;
//!   - a singular presentation: supported for the homogeneous maximal ideal
//!     at index <= 2, where order-one operators are multiplications plus
//!     derivations, and derivations are solved for by linear algebra mod p.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{PresentedAlgebra, SummandSpec};
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::monomial::{monomials_of_weighted_degree, Monomial};
use crate::pderiv::{mixed_power_profile, PDerivation};
use crate::poly::Polynomial;

/// Membership of `probe` (ambient form) in the mixed differential powers
/// `Q^<k>_mix` of R for k = 1..=n, where Q is generated in presentation
/// coordinates by `q_gens` (the kernel is added automatically) and must
/// contain p.
pub fn summand_mixed_power_profile(
    spec: &SummandSpec,
    q_gens: &[Polynomial],
    probe: &Polynomial,
    n: u32,
) -> Result<Vec<bool>> {
    assert!(n >= 1);
    if !spec.is_monomial_family() {
        return Err(Error::MixedPowerUnavailable { n });
    }
    let presented = spec.presentation()?;
    let rep = spec.subalgebra_member(probe)?.ok_or(Error::NotInSummand)?;
    let ideal_z = presented.ideal_with_kernel(q_gens)?;
    let p_poly = Polynomial::constant(&presented.ring, presented.ring.p_bigint());
    if !ideal_z.member(&p_poly)? {
        return Err(Error::PNotInIdeal);
    }

    if presented.kernel.is_empty() {
        // R is a polynomial ring on the presentation variables; the ambient
        // delta restricts to the canonical one there (delta(y_i) = 0).
        return mixed_power_profile(&rep, &ideal_z, n);
    }

    if n > 2 {
        return Err(Error::MixedPowerUnavailable { n });
    }
    // The singular route covers the homogeneous maximal ideal only.
    for i in 0..presented.ring.num_vars() {
        if !ideal_z.member(&Polynomial::var(&presented.ring, i))? {
            return Err(Error::MixedPowerUnavailable { n });
        }
    }

    let ideal_p = presented.ideal_with_kernel_mod_p(q_gens)?;
    let mut out = Vec::with_capacity(n as usize);
    let in_q = ideal_p.member(&rep.reduce_mod_p())?;
    out.push(in_q);
    if n == 2 {
        let mut ok = in_q;
        if ok {
            // delta(r * probe) lands in Q for every r once delta(probe) does,
            // because the product rule only adds Q-multiples when probe is
            // already in Q.
            let pd = PDerivation::new(spec.ambient())?.with_cap(2);
            let d_probe = pd.delta_iter_mod_p(probe, 1)?;
            if !d_probe.is_zero() {
                let d_rep = spec
                    .subalgebra_member(&d_probe)?
                    .ok_or_else(|| Error::ConfigError("delta image escaped the summand".into()))?;
                ok = ideal_p.member(&d_rep)?;
            }
        }
        if ok {
            ok = !derivation_violation(presented, &rep.reduce_mod_p(), &ideal_p)?;
        }
        out.push(ok);
    }
    Ok(out)
}

/// Searches for an integer-linear derivation v of R with v(h) outside the
/// ideal (membership decided mod p, valid because the ideal contains p).
///
/// Derivations are found degree piece by degree piece: v(y_j) is an unknown
/// integer form of degree w_j - drop, constrained by v(J) lying in (J). The
/// constraint is a lattice condition over ZZ; solving it mod p instead would
/// admit derivations of R/(p) that do not lift, and those are not legal test
/// operators for the mixed power.
fn derivation_violation(
    presented: &PresentedAlgebra,
    h: &Polynomial,
    ideal_p: &IdealHandle,
) -> Result<bool> {
    let ring = &presented.ring;
    let weights = ring.weights().to_vec();
    let max_w = weights.iter().copied().max().unwrap_or(1);
    let h_lift = h.lift_to_integers();

    for drop in 1..=max_w {
        // Unknowns: a coefficient for every (variable j, monomial of degree
        // w_j - drop).
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for (j, &w) in weights.iter().enumerate() {
            if w < drop {
                continue;
            }
            for m in monomials_of_weighted_degree(ring.num_vars(), &weights, w - drop) {
                unknowns.push((j, m));
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        // v(G) = sum_j dG/dy_j * v_j must land in the span of
        // (monomial) * (kernel generator) in each matching degree, so the
        // kernel of [unknown columns | span columns] over ZZ captures exactly
        // the liftable derivations.
        let mut coord_index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for &(j, ref m) in &unknowns {
            let mut col: Vec<(usize, BigInt)> = Vec::new();
            for (k, g) in presented.kernel.iter().enumerate() {
                let dg = formal_partial(g, j);
                if dg.is_zero() {
                    continue;
                }
                for (mono, c) in dg.mul_monomial(m).terms() {
                    push_coord(&mut coord_index, &mut col, k, mono.clone(), c.clone());
                }
            }
            columns.push(col);
        }
        // Span columns: for each kernel generator pair (G_k target, J_l
        // source), monomial multiples of J_l in the degree of v(G_k).
        for (k, g) in presented.kernel.iter().enumerate() {
            let Ok(crate::poly::WeightedDegree::Homogeneous(gd)) = g.weighted_degree() else {
                continue;
            };
            if gd < drop {
                continue;
            }
            let target_degree = gd - drop;
            for src in &presented.kernel {
                let Ok(crate::poly::WeightedDegree::Homogeneous(sd)) = src.weighted_degree() else {
                    continue;
                };
                if sd > target_degree {
                    continue;
                }
                for m in monomials_of_weighted_degree(ring.num_vars(), &weights, target_degree - sd)
                {
                    let mut col: Vec<(usize, BigInt)> = Vec::new();
                    for (mono, c) in src.mul_monomial(&m).terms() {
                        push_coord(&mut coord_index, &mut col, k, mono.clone(), c.clone());
                    }
                    columns.push(col);
                }
            }
        }

        let rows = coord_index.len();
        let dense: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|col| {
                let mut v = vec![BigInt::from(0); rows];
                for (r, c) in col {
                    v[*r] += c;
                }
                v
            })
            .collect();
        for solution in crate::groebner::integer_kernel(dense, rows) {
            // Only the unknown block describes the derivation.
            let mut image = Polynomial::zero(ring);
            for (u, &(j, ref m)) in unknowns.iter().enumerate() {
                if num_traits::Zero::is_zero(&solution[u]) {
                    continue;
                }
                let dh = formal_partial(&h_lift, j);
                if dh.is_zero() {
                    continue;
                }
                let contrib = dh.mul_monomial(m).scale(&solution[u]);
                image = image.checked_add(&contrib)?;
            }
            let image_p = image.reduce_mod_p();
            if image_p.is_zero() {
                continue;
            }
            if !ideal_p.member(&image_p)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn push_coord(
    coord_index: &mut HashMap<(usize, Monomial), usize>,
    col: &mut Vec<(usize, BigInt)>,
    gen: usize,
    mono: Monomial,
    c: BigInt,
) {
    let next = coord_index.len();
    let idx = *coord_index.entry((gen, mono)).or_insert(next);
    col.push((idx, c));
}

/// Ordinary partial derivative with respect to presentation variable j.
fn formal_partial(f: &Polynomial, j: usize) -> Polynomial {
    let mut out = Polynomial::zero(f.ring());
    for (m, c) in f.terms() {
        let e = m.exponents()[j];
        if e == 0 {
            continue;
        }
        let mut exps = m.exponents().to_vec();
        exps[j] -= 1;
        out.add_term(Monomial::new(exps), c * BigInt::from(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn formal_partial_basic() {
        let r = Ring::standard(&["u", "v"], 3).unwrap();
        let f = crate::parse::parse_polynomial(&r, "u^3*v + 2*v").unwrap();
        let du = formal_partial(&f, 0);
        assert_eq!(du, crate::parse::parse_polynomial(&r, "3*u^2*v").unwrap());
        let dv = formal_partial(&f, 1);
        assert_eq!(dv, crate::parse::parse_polynomial(&r, "u^3 + 2").unwrap());
    }
}
