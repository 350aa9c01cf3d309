//! Symbolic powers: saturation in presentations, closed forms for the
//! built-in example families, and the differential characterizations as
//! cross-oracles in the ambient polynomial ring.

use crate::diffops::differential_power_member;
use crate::error::{Error, Result};
use crate::groebner::{saturate, IdealHandle};
use crate::pderiv::mixed_power_member;
use crate::poly::Polynomial;
use crate::summand::PresentedAlgebra;

/// How the generators of a symbolic power are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// The quadric-cone prime (x, y) in `A[x,y,z]/(xz - y^2)`:
    /// even symbolic powers are powers of x.
    QuadricConeXY,
    /// Symbolic powers equal ordinary powers (maximal ideals, or primes
    /// generated by a regular sequence in a free presentation).
    PowersEqual,
}

/// A prime of a presented algebra, with the data needed to compute its
/// symbolic powers.
#[derive(Debug, Clone)]
pub struct PrimeSpec {
    /// Generators in presentation coordinates.
    pub generators: Vec<Polynomial>,
    /// Whether p lies in the prime.
    pub contains_p: bool,
    /// Saturation witness outside the prime (None when a closed form or
    /// powers-equal route applies).
    pub witness: Option<Polynomial>,
    pub closed_form: Option<ClosedForm>,
    /// User-supplied primes carry a saturation caveat: correctness of the
    /// witness against embedded primes is the user's responsibility.
    pub user_supplied: bool,
    pub name: String,
}

/// Generators of a symbolic power, with provenance flags.
#[derive(Debug, Clone)]
pub struct SymbolicPower {
    pub index: u32,
    pub generators: Vec<Polynomial>,
    /// Set when the result relies on a user-supplied witness.
    pub saturation_caveat: bool,
    /// Set when the computation ran modulo p and the generators are integer
    /// lifts with coefficients in [0, p).
    pub computed_mod_p: bool,
}

impl PrimeSpec {
    pub fn validate(&self, presented: &PresentedAlgebra) -> Result<()> {
        for g in &self.generators {
            if !g.ring().same_ring(&presented.ring) {
                return Err(Error::RingMismatch);
            }
        }
        if let Some(w) = &self.witness {
            let handle = presented.ideal_with_kernel(&self.generators)?;
            if handle.member(w)? {
                return Err(Error::WitnessInPrime);
            }
        }
        Ok(())
    }
}

/// Generators of Q^(n) in the presentation of R.
///
/// Closed forms are used when declared; otherwise the result is the
/// saturation of Q^n + J at the witness, over F_p when the prime contains p
/// (generators are then lifted to integer coefficients in [0, p)) and over
/// ZZ otherwise.
pub fn symbolic_power_generators(
    presented: &PresentedAlgebra,
    prime: &PrimeSpec,
    n: u32,
) -> Result<SymbolicPower> {
    assert!(n >= 1, "symbolic powers are indexed from 1");
    if n == 1 {
        return Ok(SymbolicPower {
            index: 1,
            generators: prime.generators.clone(),
            saturation_caveat: false,
            computed_mod_p: false,
        });
    }
    match prime.closed_form {
        Some(ClosedForm::QuadricConeXY) if n.is_multiple_of(2) => {
            // Q = (x, y), Q^(2k) = (x^k).
            let x = prime.generators[0].clone();
            return Ok(SymbolicPower {
                index: n,
                generators: vec![x.pow(n / 2)],
                saturation_caveat: false,
                computed_mod_p: false,
            });
        }
        Some(ClosedForm::PowersEqual) => {
            let handle = IdealHandle::new(prime.generators.clone())?;
            return Ok(SymbolicPower {
                index: n,
                generators: handle.power(n)?.generators().to_vec(),
                saturation_caveat: false,
                computed_mod_p: false,
            });
        }
        _ => {}
    }
    saturation_symbolic_power(presented, prime, n)
}

/// The saturation route (Q^n + J) : w^infinity, always available given a
/// witness.
pub fn saturation_symbolic_power(
    presented: &PresentedAlgebra,
    prime: &PrimeSpec,
    n: u32,
) -> Result<SymbolicPower> {
    let witness = prime
        .witness
        .clone()
        .ok_or_else(|| Error::ConfigError(format!("prime {} has no witness", prime.name)))?;
    let power = IdealHandle::new(prime.generators.clone())?.power(n)?;
    let with_kernel = presented.ideal_with_kernel(power.generators())?;
    if prime.contains_p {
        let modp = with_kernel.reduce_mod_p()?;
        let sat = saturate(&modp, &witness.reduce_mod_p())?;
        let generators = sat
            .generators()
            .iter()
            .map(|g| g.lift_to_integers())
            .collect();
        Ok(SymbolicPower {
            index: n,
            generators,
            saturation_caveat: prime.user_supplied,
            computed_mod_p: true,
        })
    } else {
        let sat = saturate(&with_kernel, &witness)?;
        Ok(SymbolicPower {
            index: n,
            generators: sat.generators().to_vec(),
            saturation_caveat: prime.user_supplied,
            computed_mod_p: false,
        })
    }
}

/// Symbolic-power membership in the ambient polynomial ring S, decided by
/// the differential characterizations: the mixed power when p lies in the
/// prime, the A-linear differential power otherwise.
pub fn symbolic_member_via_differential(
    f: &Polynomial,
    prime_in_s: &IdealHandle,
    n: u32,
) -> Result<bool> {
    if prime_in_s.contains_p()? {
        mixed_power_member(f, prime_in_s, n)
    } else {
        differential_power_member(f, prime_in_s, n)
    }
}
