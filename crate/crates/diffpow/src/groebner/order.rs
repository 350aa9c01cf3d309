use std::cmp::Ordering;

use crate::monomial::Monomial;
use crate::ring::Ring;

/// Total multiplicative monomial orders with 1 minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    WeightedGrevlex,
    /// Compares the designated block first (grevlex within the block), so
    /// basis elements free of block variables generate the elimination ideal.
    EliminationBlock {
        eliminated: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    weights: Vec<u64>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ring: &Ring) -> Self {
        MonomialOrder {
            kind,
            weights: ring.weights().to_vec(),
        }
    }

    pub fn lex(ring: &Ring) -> Self {
        Self::new(OrderKind::Lex, ring)
    }

    pub fn grevlex(ring: &Ring) -> Self {
        Self::new(OrderKind::Grevlex, ring)
    }

    pub fn weighted_grevlex(ring: &Ring) -> Self {
        Self::new(OrderKind::WeightedGrevlex, ring)
    }

    pub fn elimination(ring: &Ring, eliminated: Vec<usize>) -> Self {
        Self::new(OrderKind::EliminationBlock { eliminated }, ring)
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.kind {
            OrderKind::Lex => lex_cmp(a.exponents(), b.exponents()),
            OrderKind::Grevlex => grevlex_cmp(a.exponents(), b.exponents()),
            OrderKind::WeightedGrevlex => {
                let da: u64 = a.weighted_degree(&self.weights);
                let db: u64 = b.weighted_degree(&self.weights);
                da.cmp(&db)
                    .then_with(|| grevlex_cmp(a.exponents(), b.exponents()))
            }
            OrderKind::EliminationBlock { eliminated } => {
                let ea: Vec<u64> = eliminated.iter().map(|&i| a.exponents()[i]).collect();
                let eb: Vec<u64> = eliminated.iter().map(|&i| b.exponents()[i]).collect();
                grevlex_cmp(&ea, &eb).then_with(|| grevlex_cmp(a.exponents(), b.exponents()))
            }
        }
    }
}

fn lex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Reverse-lex tiebreak: smaller exponent in the last differing position wins.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lex_order() {
        let r = Ring::standard(&["z", "y", "x"], 2).unwrap();
        let o = MonomialOrder::lex(&r);
        // z > y^5 in lex with z first.
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_degree_first() {
        let r = Ring::standard(&["x", "y"], 2).unwrap();
        let o = MonomialOrder::grevlex(&r);
        assert_eq!(o.cmp(&m(&[2, 1]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn weighted_grevlex_uses_weights() {
        let r = Ring::integers(&["x", "y"], &[2, 1], 2).unwrap();
        let o = MonomialOrder::weighted_grevlex(&r);
        // x has weight 2, so x > y^1 but x < y^3.
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 3])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let r = Ring::standard(&["x", "y", "t"], 2).unwrap();
        let o = MonomialOrder::elimination(&r, vec![2]);
        // Any power of t beats any t-free monomial.
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[7, 7, 0])), Ordering::Greater);
    }
}
