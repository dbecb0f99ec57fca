use rand::Rng;

use crate::error::{Error, Result};
use crate::factorize::rabin_is_irreducible;
use crate::field::Field;
use crate::polyring::Poly;

/// Draws uniformly random monic degree-`d` polynomials until one passes
/// Rabin's test. Returns it with the number of draws. Not canonical: the
/// result depends on the generator state.
pub fn random_irreducible<F: Field, R: Rng + ?Sized>(
    field: &F,
    d: usize,
    rng: &mut R,
) -> Result<(Poly<F>, usize)> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        let mut coeffs: Vec<F::Elem> = (0..d).map(|_| field.random(rng)).collect();
        coeffs.push(field.one());
        let f = Poly::new(field, coeffs);
        if rabin_is_irreducible(&f)? {
            return Ok((f, attempts));
        }
    }
}
