use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Coefficient domain of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffDomain {
    /// Arbitrary-precision integers.
    Integers,
    /// Integers modulo the designated prime p.
    IntegersModP,
}

/// Description of a graded polynomial ring A[x_1,...,x_m].
///
/// The designated prime `p` is always present: p-derivations and mod-p
/// reductions need it even while coefficients live in the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    variables: Vec<String>,
    weights: Vec<u64>,
    domain: CoeffDomain,
    p: u64,
}

impl RingDescriptor {
    pub fn new(
        variables: Vec<String>,
        weights: Vec<u64>,
        domain: CoeffDomain,
        p: u64,
    ) -> Result<Self> {
        if variables.len() != weights.len() {
            return Err(Error::ConfigError(format!(
                "{} variables but {} weights",
                variables.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::ConfigError("variable weights must be >= 1".into()));
        }
        if weights.iter().any(|&w| w > 1_000_000) {
            return Err(Error::ConfigError(
                "variable weights must be <= 10^6".into(),
            ));
        }
        if !is_prime_u64(p) {
            return Err(Error::ConfigError(format!("p = {p} is not prime")));
        }
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::ConfigError(format!("invalid variable name {v:?}")));
            }
            if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::ConfigError(format!("invalid variable name {v:?}")));
            }
            if variables[..i].contains(v) {
                return Err(Error::ConfigError(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(RingDescriptor {
            variables,
            weights,
            domain,
            p,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }
}

/// Shared handle to a ring descriptor. Cloning is cheap; equality is by value.
#[derive(Clone)]
pub struct Ring(Arc<RingDescriptor>);

impl Ring {
    pub fn new(desc: RingDescriptor) -> Self {
        Ring(Arc::new(desc))
    }

    /// Integer-coefficient ring with the given variables, weights and prime.
    pub fn integers(vars: &[&str], weights: &[u64], p: u64) -> Result<Self> {
        Ok(Ring::new(RingDescriptor::new(
            vars.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
            CoeffDomain::Integers,
            p,
        )?))
    }

    /// Like [`Ring::integers`] with all weights equal to one.
    pub fn standard(vars: &[&str], p: u64) -> Result<Self> {
        Ring::integers(vars, &vec![1; vars.len()], p)
    }

    /// The companion ring with coefficients reduced modulo p.
    pub fn mod_p_twin(&self) -> Ring {
        if self.domain() == CoeffDomain::IntegersModP {
            return self.clone();
        }
        Ring::new(RingDescriptor {
            variables: self.0.variables.clone(),
            weights: self.0.weights.clone(),
            domain: CoeffDomain::IntegersModP,
            p: self.0.p,
        })
    }

    /// The companion ring over the integers.
    pub fn integral_twin(&self) -> Ring {
        if self.domain() == CoeffDomain::Integers {
            return self.clone();
        }
        Ring::new(RingDescriptor {
            variables: self.0.variables.clone(),
            weights: self.0.weights.clone(),
            domain: CoeffDomain::Integers,
            p: self.0.p,
        })
    }

    /// Extends the ring with fresh variables appended after the existing ones.
    pub fn extended(&self, extra: &[(&str, u64)]) -> Result<Ring> {
        let mut vars = self.0.variables.clone();
        let mut weights = self.0.weights.clone();
        for (name, w) in extra {
            vars.push(name.to_string());
            weights.push(*w);
        }
        Ok(Ring::new(RingDescriptor::new(
            vars,
            weights,
            self.domain(),
            self.p(),
        )?))
    }

    pub fn p_bigint(&self) -> BigInt {
        BigInt::from(self.p())
    }

    pub fn same_ring(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl std::ops::Deref for Ring {
    type Target = RingDescriptor;
    fn deref(&self) -> &RingDescriptor {
        &self.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dom = match self.domain() {
            CoeffDomain::Integers => "ZZ".to_string(),
            CoeffDomain::IntegersModP => format!("F{}", self.p()),
        };
        write!(f, "{}[{}]", dom, self.variables().join(","))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_weight() {
        assert!(Ring::integers(&["x"], &[0], 2).is_err());
    }

    #[test]
    fn rejects_composite_p() {
        assert!(Ring::integers(&["x"], &[1], 6).is_err());
        assert!(Ring::integers(&["x"], &[1], 1).is_err());
    }

    #[test]
    fn rejects_duplicate_variables() {
        assert!(Ring::integers(&["x", "x"], &[1, 1], 2).is_err());
    }

    #[test]
    fn twins_share_structure() {
        let r = Ring::integers(&["x", "y"], &[2, 1], 3).unwrap();
        let m = r.mod_p_twin();
        assert_eq!(m.domain(), CoeffDomain::IntegersModP);
        assert_eq!(m.integral_twin(), r);
        assert_ne!(r, m);
    }
}
