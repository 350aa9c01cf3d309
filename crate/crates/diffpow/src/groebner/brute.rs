use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IdealHandle;
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_weighted_degree, Monomial};
use crate::poly::{Polynomial, WeightedDegree};
use crate::ring::CoeffDomain;

/// Degreewise integer-linear membership test, independent of any basis
/// computation.
///
/// For homogeneous `f` and homogeneous generators, decides whether `f` is a
/// ZZ-linear combination of monomial multiples of the generators in matching
/// degree, by solving the coefficient system in Hermite normal form.
pub fn member_bruteforce(f: &Polynomial, ideal: &IdealHandle, bound: u64) -> Result<bool> {
    let ring = ideal.ring();
    if !f.ring().same_ring(ring) {
        return Err(Error::RingMismatch);
    }
    if ring.domain() != CoeffDomain::Integers {
        return Err(Error::ConfigError(
            "brute-force membership runs over the integers".into(),
        ));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let degree = match f.weighted_degree()? {
        WeightedDegree::Homogeneous(d) => d,
        WeightedDegree::NonHomogeneous => {
            return Err(Error::ConfigError(
                "brute-force membership requires a homogeneous element".into(),
            ))
        }
    };
    if bound < degree {
        return Err(Error::Inconclusive {
            bound,
            needed: degree,
        });
    }

    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    let rows = monomials_of_weighted_degree(ring.num_vars(), ring.weights(), degree);
    let row_index = |m: &Monomial| rows.iter().position(|r| r == m);

    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        let gd = match g.weighted_degree()? {
            WeightedDegree::Homogeneous(d) => d,
            WeightedDegree::NonHomogeneous => {
                return Err(Error::ConfigError(
                    "brute-force membership requires homogeneous generators".into(),
                ))
            }
        };
        if gd > degree {
            continue;
        }
        for mult in monomials_of_weighted_degree(ring.num_vars(), ring.weights(), degree - gd) {
            let prod = g.mul_monomial(&mult);
            let mut col = vec![BigInt::zero(); rows.len()];
            for (m, c) in prod.terms() {
                let idx = row_index(m).expect("product stays in matching degree");
                col[idx] = c.clone();
            }
            columns.push(col);
        }
    }

    let mut target = vec![BigInt::zero(); rows.len()];
    for (m, c) in f.terms() {
        match row_index(m) {
            Some(idx) => target[idx] = c.clone(),
            None => return Ok(false),
        }
    }

    Ok(solve_in_column_lattice(columns, target))
}

/// Basis of the integer kernel {z : A z = 0} of a matrix given by columns,
/// via column Hermite reduction with a tracked transform.
#[allow(clippy::needless_range_loop)]
pub(crate) fn integer_kernel(mut cols: Vec<Vec<BigInt>>, rows: usize) -> Vec<Vec<BigInt>> {
    let n = cols.len();
    let mut transform: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut fixed = 0usize;
    for row in 0..rows {
        loop {
            let mut nonzero: Vec<usize> = (fixed..n).filter(|&c| !cols[c][row].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&c| cols[c][row].abs());
            let (small, big) = (nonzero[0], nonzero[1]);
            let q = &cols[big][row] / &cols[small][row];
            for r in 0..rows {
                let sub = &q * &cols[small][r];
                cols[big][r] -= sub;
            }
            for r in 0..n {
                let sub = &q * &transform[small][r];
                transform[big][r] -= sub;
            }
        }
        if let Some(c) = (fixed..n).find(|&c| !cols[c][row].is_zero()) {
            cols.swap(fixed, c);
            transform.swap(fixed, c);
            fixed += 1;
        }
    }
    (fixed..n).map(|c| transform[c].clone()).collect()
}

/// Decides whether `b` lies in the integer column lattice of `cols`, by
/// column-style Hermite reduction followed by a forward substitution.
#[allow(clippy::needless_range_loop)]
fn solve_in_column_lattice(mut cols: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> bool {
    let rows = b.len();
    let mut fixed = 0usize;
    // (row, column) positions of pivots, in increasing row order.
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for row in 0..rows {
        // Clear row entries across unfixed columns into one pivot column.
        loop {
            let mut nonzero: Vec<usize> = (fixed..cols.len())
                .filter(|&c| !cols[c][row].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            // Combine the two columns with smallest absolute entries.
            nonzero.sort_by_key(|&c| cols[c][row].abs());
            let (small, big) = (nonzero[0], nonzero[1]);
            let q = &cols[big][row] / &cols[small][row];
            if q.is_zero() {
                // |big entry| < |small entry| should not happen after sort.
                break;
            }
            for r in 0..rows {
                let sub = &q * &cols[small][r];
                cols[big][r] -= sub;
            }
        }
        if let Some(c) = (fixed..cols.len()).find(|&c| !cols[c][row].is_zero()) {
            if cols[c][row].is_negative() {
                for r in 0..rows {
                    cols[c][r] = -cols[c][r].clone();
                }
            }
            cols.swap(fixed, c);
            pivots.push((row, fixed));
            fixed += 1;
        }
    }

    // Forward substitution: fixed columns are zero above their pivot rows.
    let mut residual = b;
    let mut pi = 0usize;
    for row in 0..rows {
        if pi < pivots.len() && pivots[pi].0 == row {
            let col = pivots[pi].1;
            pi += 1;
            let (q, r) = residual[row].div_rem(&cols[col][row]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for rr in 0..rows {
                    let sub = &q * &cols[col][rr];
                    residual[rr] -= sub;
                }
            }
        } else if !residual[row].is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn ring() -> Ring {
        Ring::standard(&["x", "y"], 5).unwrap()
    }

    #[test]
    fn bezout_membership() {
        // xy in (2x, 3y): 2(xy)*a + 3(xy)*b with 2a + 3b = 1.
        let r = ring();
        let i = IdealHandle::new(vec![
            parse_polynomial(&r, "2*x").unwrap(),
            parse_polynomial(&r, "3*y").unwrap(),
        ])
        .unwrap();
        let xy = parse_polynomial(&r, "x*y").unwrap();
        assert!(member_bruteforce(&xy, &i, 2).unwrap());
    }

    #[test]
    fn two_a_equals_one_unsolvable() {
        let r = ring();
        let i = IdealHandle::new(vec![parse_polynomial(&r, "2*x").unwrap()]).unwrap();
        let x = parse_polynomial(&r, "x").unwrap();
        assert!(!member_bruteforce(&x, &i, 1).unwrap());
    }

    #[test]
    fn plain_monomial_membership() {
        let r = ring();
        let i = IdealHandle::new(vec![parse_polynomial(&r, "x").unwrap()]).unwrap();
        let x2 = parse_polynomial(&r, "x^2").unwrap();
        assert!(member_bruteforce(&x2, &i, 2).unwrap());
    }

    #[test]
    fn bound_too_small_is_inconclusive() {
        let r = ring();
        let i = IdealHandle::new(vec![parse_polynomial(&r, "x").unwrap()]).unwrap();
        let x2 = parse_polynomial(&r, "x^2").unwrap();
        assert!(matches!(
            member_bruteforce(&x2, &i, 1),
            Err(Error::Inconclusive { .. })
        ));
    }
}
