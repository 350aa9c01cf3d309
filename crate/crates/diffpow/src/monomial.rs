use crate::error::{Error, Result};

/// Hard cap on any single exponent; keeps weighted degrees inside u64.
pub const MAX_EXPONENT: u64 = 1 << 40;

/// A monomial: one exponent per ring variable.
///
/// The derived `Ord` (exponentwise lexicographic) is only the canonical
/// storage order for term maps; Gröbner computations use `MonomialOrder`
/// from the groebner module instead.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Plain total degree (all weights one).
    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e * w).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            let s = a.checked_add(b).ok_or(Error::DegreeOverflow)?;
            if s > MAX_EXPONENT {
                return Err(Error::DegreeOverflow);
            }
            out.push(s);
        }
        Ok(Monomial(out))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn divide_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(&b, &a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Projects onto a subset of variable positions.
    pub fn restrict(&self, keep: &[usize]) -> Monomial {
        Monomial(keep.iter().map(|&i| self.0[i]).collect())
    }

    /// Re-embeds into a larger variable list: position `map[i]` receives
    /// exponent i.
    pub fn embed(&self, num_vars: usize, map: &[usize]) -> Monomial {
        let mut e = vec![0; num_vars];
        for (i, &pos) in map.iter().enumerate() {
            e[pos] = self.0[i];
        }
        Monomial(e)
    }
}

/// All monomials in `num_vars` variables of the given weighted degree.
pub fn monomials_of_weighted_degree(
    num_vars: usize,
    weights: &[u64],
    degree: u64,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u64; num_vars];
    fill(&mut out, &mut current, 0, weights, degree);
    out
}

fn fill(
    out: &mut Vec<Monomial>,
    current: &mut Vec<u64>,
    var: usize,
    weights: &[u64],
    remaining: u64,
) {
    if var == current.len() {
        if remaining == 0 {
            out.push(Monomial::new(current.clone()));
        }
        return;
    }
    if var + 1 == current.len() {
        if remaining.is_multiple_of(weights[var]) {
            current[var] = remaining / weights[var];
            out.push(Monomial::new(current.clone()));
            current[var] = 0;
        }
        return;
    }
    let max = remaining / weights[var];
    for e in 0..=max {
        current[var] = e;
        fill(out, current, var + 1, weights, remaining - e * weights[var]);
    }
    current[var] = 0;
}

/// All monomials of weighted degree at most `degree`.
pub fn monomials_up_to_weighted_degree(
    num_vars: usize,
    weights: &[u64],
    degree: u64,
) -> Vec<Monomial> {
    (0..=degree)
        .flat_map(|d| monomials_of_weighted_degree(num_vars, weights, d))
        .collect()
}
