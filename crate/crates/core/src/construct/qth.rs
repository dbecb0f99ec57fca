use rand::Rng;

use super::qnr::{canonical_nonresidue, qth_residue_test};
use crate::error::{Error, Result};
use crate::extfield::{lex_min_poly, ExtField};
use crate::factorize::{edf, rabin_is_irreducible};
use crate::field::{Field, PrimeField};
use crate::modmath::{is_probable_prime, multiplicative_order, Natural};
use crate::polyring::Poly;

/// The field `K = F_p[X]/(h)` containing the `q`-th roots of unity, with
/// `h` the lex-min irreducible factor of the cyclotomic polynomial, and a
/// canonical `q`-th non-residue `alpha` of `K`.
#[derive(Debug, Clone)]
pub struct QthData<P: PrimeField> {
    pub q: u64,
    /// `ord_q(p)`, the degree of `K`.
    pub k: usize,
    pub h: Poly<P>,
    pub field: ExtField<P>,
    pub alpha: Vec<P::Elem>,
    /// Values of `alpha` from the class of `X` onward.
    pub chain: Vec<Vec<P::Elem>>,
    pub iterations: usize,
    /// `v_q(p^k - 1)`.
    pub bound: u64,
}

impl<P: PrimeField> QthData<P> {
    /// Re-checks the defining properties: `h` is irreducible of degree `k`
    /// and divides `X^q - 1`, `alpha` is a `q`-th non-residue of `K`, and
    /// the loop stayed within its bound.
    pub fn verify(&self) -> Result<()> {
        let prime = self.h.field().clone();
        if self.h.degree() != Some(self.k) || !rabin_is_irreducible(&self.h)? {
            return Err(Error::verification("cyclotomic factor is not irreducible of degree k"));
        }
        let xq = Poly::binomial(&prime, self.q as usize, &prime.one());
        if !xq.rem(&self.h)?.is_zero() {
            return Err(Error::verification("cyclotomic factor does not divide X^q - 1"));
        }
        if qth_residue_test(&self.field, &self.alpha, self.q)? {
            return Err(Error::verification("alpha is a q-th residue"));
        }
        if self.iterations as u64 > self.bound {
            return Err(Error::verification("loop exceeded its bound"));
        }
        Ok(())
    }

    /// `v_q` of the order of `alpha`, via the residue criterion: it equals
    /// `v_q(p^k - 1)` exactly when `alpha` is a non-residue.
    pub fn alpha_order_valuation(&self) -> u64 {
        let mut e = self.field.size() - 1u32;
        let q = Natural::from(self.q);
        let mut v = self.bound;
        // strip q-factors from the exponent until alpha^e = 1 fails
        while v > 0 && self.field.is_one(&self.field.pow(&self.alpha, &(&e / &q))) {
            e /= &q;
            v -= 1;
        }
        v
    }
}

/// Builds [`QthData`] for a prime `q != p`.
pub fn canonical_qth_data<P: PrimeField, R: Rng + ?Sized>(
    field: &P,
    q: u64,
    rng: &mut R,
) -> Result<QthData<P>> {
    let p = field.modulus().value().clone();
    let qn = Natural::from(q);
    if q < 2 || !is_probable_prime(&qn) {
        return Err(Error::invalid(format!("{q} is not prime")));
    }
    if qn == p {
        return Err(Error::invalid("q must differ from the characteristic"));
    }
    let k: usize = multiplicative_order(&p, &qn)?
        .try_into()
        .map_err(|_| Error::invalid("order too large"))?;

    let cyclotomic = Poly::new(field, vec![field.one(); q as usize]);
    let factors = super::internal(edf(&cyclotomic, k, rng))?;
    if factors.len() as u64 != (q - 1) / k as u64 {
        return Err(Error::verification(format!(
            "cyclotomic polynomial split into {} factors, expected {}",
            factors.len(),
            (q - 1) / k as u64
        )));
    }
    let h = lex_min_poly(&factors)?;
    let kf = super::internal(ExtField::new(h.clone()))?;
    let search = canonical_nonresidue(&kf, kf.generator(), q, rng)?;
    log::debug!(
        "qth data p={p} q={q}: k={k}, {} of at most {} iterations",
        search.iterations,
        search.bound
    );
    Ok(QthData {
        q,
        k,
        h,
        field: kf,
        alpha: search.alpha,
        chain: search.chain,
        iterations: search.iterations,
        bound: search.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::Fp64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = canonical_qth_data(&Fp64::of(2), 5, &mut rng).unwrap();
        assert_eq!(d.k, 4);
        assert_eq!(d.h.to_text(), "1 1 1 1 1");
        assert_eq!(d.alpha, d.field.generator());
        assert_eq!(d.iterations, 0);
        d.verify().unwrap();

        let d = canonical_qth_data(&Fp64::of(7), 3, &mut rng).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.h.to_text(), "3 1");
        assert_eq!(d.alpha, vec![4]);
        d.verify().unwrap();
        assert_eq!(d.alpha_order_valuation(), d.bound);
    }

    #[test]
    fn rejects_bad_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(canonical_qth_data(&Fp64::of(7), 7, &mut rng).is_err());
        assert!(canonical_qth_data(&Fp64::of(7), 9, &mut rng).is_err());
    }

    #[test]
    fn seed_independent() {
        let f = Fp64::of(31);
        let reference = canonical_qth_data(&f, 5, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        for seed in 1..10 {
            let d = canonical_qth_data(&f, 5, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            assert_eq!(d.h, reference.h);
            assert_eq!(d.chain, reference.chain);
        }
    }
}
