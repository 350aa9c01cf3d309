//! Shared samplers for the randomized suites. All draws go through a seeded
//! generator so runs are reproducible.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffpow::monomial::Monomial;
use diffpow::poly::Polynomial;
use diffpow::ring::Ring;

pub struct Sampler {
    pub rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coeff(&mut self, bound: i64) -> BigInt {
        loop {
            let c = self.rng.gen_range(-bound..=bound);
            if c != 0 {
                return BigInt::from(c);
            }
        }
    }

    pub fn monomial(&mut self, ring: &Ring, max_degree: u64) -> Monomial {
        let d = self.rng.gen_range(0..=max_degree);
        self.monomial_of_degree(ring, d)
    }

    pub fn monomial_of_degree(&mut self, ring: &Ring, degree: u64) -> Monomial {
        let n = ring.num_vars();
        let mut exps = vec![0u64; n];
        for _ in 0..degree {
            let i = self.rng.gen_range(0..n);
            exps[i] += 1;
        }
        Monomial::new(exps)
    }

    /// Nonzero polynomial with at most `max_terms` terms of plain degree at
    /// most `max_degree` and coefficients in [-bound, bound].
    pub fn poly(
        &mut self,
        ring: &Ring,
        max_terms: usize,
        max_degree: u64,
        bound: i64,
    ) -> Polynomial {
        loop {
            let mut f = Polynomial::zero(ring);
            let terms = self.rng.gen_range(1..=max_terms);
            for _ in 0..terms {
                f.add_term(self.monomial(ring, max_degree), self.coeff(bound));
            }
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Nonzero homogeneous polynomial of the exact plain degree.
    pub fn homogeneous(
        &mut self,
        ring: &Ring,
        degree: u64,
        max_terms: usize,
        bound: i64,
    ) -> Polynomial {
        loop {
            let mut f = Polynomial::zero(ring);
            let terms = self.rng.gen_range(1..=max_terms);
            for _ in 0..terms {
                f.add_term(self.monomial_of_degree(ring, degree), self.coeff(bound));
            }
            if !f.is_zero() {
                return f;
            }
        }
    }
}

pub fn ring_with_vars(count: usize, p: u64) -> Ring {
    let names = ["x", "y", "z"];
    Ring::standard(&names[..count], p).unwrap()
}
