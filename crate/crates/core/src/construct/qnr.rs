use rand::Rng;

use crate::error::{Error, Result};
use crate::factorize::binomial_roots;
use crate::field::{Field, PrimeField};
use crate::modmath::{valuation, Natural};
use crate::polyring::Poly;

/// Generalized Euler criterion: `alpha` is a `q`-th residue iff
/// `alpha^((Q-1)/q) = 1`.
pub fn qth_residue_test<F: Field>(field: &F, alpha: &F::Elem, q: u64) -> Result<bool> {
    let order = field.size() - 1u32;
    let q = Natural::from(q);
    if q < Natural::from(2u32) || (&order % &q) != Natural::default() {
        return Err(Error::invalid(format!("{q} does not divide the group order {order}")));
    }
    if field.is_zero(alpha) {
        return Err(Error::invalid("zero is neither a residue nor a non-residue"));
    }
    Ok(field.is_one(&field.pow(alpha, &(order / q))))
}

/// Outcome of the root-taking loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonResidueSearch<E> {
    /// The canonical `q`-th non-residue.
    pub alpha: E,
    /// Every value `alpha` took, from the start value to the result.
    pub chain: Vec<E>,
    /// Loop iterations, i.e. roots taken.
    pub iterations: usize,
    /// `v_q(Q - 1)`, the proven iteration bound.
    pub bound: u64,
}

/// Starting from `start` (whose order must be divisible by `q`), replaces
/// `alpha` by its lexicographically smallest `q`-th root until `alpha` is a
/// `q`-th non-residue. Each root multiplies the order by `q`, so the loop
/// stops after at most `v_q(Q - 1)` iterations; exceeding that is reported
/// as a verification error.
pub fn canonical_nonresidue<F: Field, R: Rng + ?Sized>(
    field: &F,
    start: F::Elem,
    q: u64,
    rng: &mut R,
) -> Result<NonResidueSearch<F::Elem>> {
    let bound = valuation(&(field.size() - 1u32), &Natural::from(q));
    let mut alpha = start;
    let mut chain = vec![alpha.clone()];
    let mut iterations = 0usize;
    while qth_residue_test(field, &alpha, q)? {
        if iterations as u64 >= bound {
            return Err(Error::verification(format!(
                "root-taking loop exceeded its bound of {bound} iterations"
            )));
        }
        let roots = super::internal(binomial_roots(field, q as usize, &alpha, rng))?;
        alpha = roots.into_iter().next().expect("q >= 2 roots");
        chain.push(alpha.clone());
        iterations += 1;
    }
    Ok(NonResidueSearch {
        alpha,
        chain,
        iterations,
        bound,
    })
}

/// A canonical quadratic non-residue and the irreducible `X^2 - alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalQnr<P: PrimeField> {
    /// `-1`, then each lex-min square root taken.
    pub chain: Vec<P::Elem>,
    pub poly: Poly<P>,
}

/// Starts at `alpha = -1` and takes the smallest square root while `alpha`
/// is a square. Odd characteristic only.
pub fn canonical_qnr<P: PrimeField, R: Rng + ?Sized>(field: &P, rng: &mut R) -> Result<CanonicalQnr<P>> {
    if field.modulus().is_two() {
        return Err(Error::invalid("every element of F_2 is a square"));
    }
    let search = canonical_nonresidue(field, field.neg(&field.one()), 2, rng)?;
    let poly = Poly::binomial(field, 2, &search.alpha);
    Ok(CanonicalQnr {
        chain: search.chain,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::Fp64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn residue_examples() {
        let f73 = Fp64::of(73);
        assert!(!qth_residue_test(&f73, &10, 2).unwrap());
        assert!(qth_residue_test(&f73, &27, 2).unwrap());
        let f7 = Fp64::of(7);
        // cubes mod 7 are {1, 6}
        for a in 1..7u64 {
            assert_eq!(qth_residue_test(&f7, &a, 3).unwrap(), a == 1 || a == 6);
        }
        assert!(qth_residue_test(&f7, &2, 5).is_err());
        assert!(qth_residue_test(&f7, &0, 3).is_err());
    }

    #[test]
    fn qnr_chains() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = canonical_qnr(&Fp64::of(73), &mut rng).unwrap();
        assert_eq!(r.chain, vec![72, 27, 10]);
        assert_eq!(r.poly.to_text(), "63 0 1");

        let r = canonical_qnr(&Fp64::of(3), &mut rng).unwrap();
        assert_eq!(r.chain, vec![2]);
        assert_eq!(r.poly.to_text(), "1 0 1");

        let r = canonical_qnr(&Fp64::of(13), &mut rng).unwrap();
        assert_eq!(r.chain, vec![12, 5]);
        assert_eq!(r.poly.to_text(), "8 0 1");

        assert!(canonical_qnr(&Fp64::of(2), &mut rng).is_err());
    }

    #[test]
    fn qnr_loop_stays_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        // 257 - 1 = 2^8: the longest possible chain for a prime this size
        let f = Fp64::of(257);
        let search = canonical_nonresidue(&f, 256, 2, &mut rng).unwrap();
        assert!(search.iterations as u64 <= search.bound);
        assert_eq!(search.bound, 8);
        assert!(!qth_residue_test(&f, &search.alpha, 2).unwrap());
    }
}
