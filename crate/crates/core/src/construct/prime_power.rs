use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;

use super::qnr::canonical_nonresidue;
use super::qth::QthData;
use super::internal;
use crate::error::{Error, Result};
use crate::extfield::{absolute_trace, elements_ascending, min_poly_over_prime, trace_to_subfield, ExtField};
use crate::factorize::rabin_is_irreducible;
use crate::field::{Field, PrimeField};
use crate::modmath::Natural;
use crate::polyring::Poly;

static TRACE_SWEEPS: AtomicUsize = AtomicUsize::new(0);

/// How many times the trace descent had to move past `Tr(Y)` because its
/// conjugates were not distinct. Process-wide counter.
pub fn trace_sweep_count() -> usize {
    TRACE_SWEEPS.load(Ordering::Relaxed)
}

/// Irreducible of degree `q^e` over `F_p`, for the prime `q != p` described
/// by `data`.
///
/// `Y^(q^e) - alpha` is irreducible over `K`; its root `Y` is traced down to
/// the degree-`q^e` subfield and the minimal polynomial over `F_p` of the
/// trace is returned. For `q = 2`, `e >= 2` and `p = 3 mod 4` the binomial
/// over `F_p` is reducible, so the tower goes through
/// `K_1 = F_p[Y]/(Y^2 - alpha)` and a canonical square non-residue there.
pub fn prime_power_irreducible<P: PrimeField, R: Rng + ?Sized>(
    data: &QthData<P>,
    e: u32,
    rng: &mut R,
) -> Result<Poly<P>> {
    if e == 0 {
        return Err(Error::invalid("exponent must be positive"));
    }
    let degree = checked_power(data.q, e)?;
    let prime = data.field.prime_field();
    let p = prime.modulus().value();
    let corner = data.q == 2 && e >= 2 && (p % 4u32) == Natural::from(3u32);
    let f = if corner {
        let a = data
            .field
            .project(&data.alpha)
            .ok_or_else(|| Error::verification("alpha is not in the prime field"))?;
        let k1 = internal(ExtField::new(Poly::binomial(&prime, 2, &a)))?;
        let start = k1.neg(&k1.one());
        let search = canonical_nonresidue(&k1, start, 2, rng)?;
        binomial_descent(&k1, &search.alpha, degree / 2, degree)?
    } else {
        binomial_descent(&data.field, &data.alpha, degree, degree)?
    };
    if f.degree() != Some(degree) || !rabin_is_irreducible(&f)? {
        return Err(Error::verification(format!("degree-{degree} output failed Rabin's test")));
    }
    Ok(f)
}

/// Minimal polynomial over `F_p` of degree `target` for the trace of a root
/// of `Y^n - alpha` over `base`. Falls back to `Tr(Y z)` for `z` in
/// ascending order if `Tr(Y)` generates too small a field.
fn binomial_descent<P: PrimeField>(
    base: &ExtField<P>,
    alpha: &[P::Elem],
    n: usize,
    target: usize,
) -> Result<Poly<P>> {
    let tower = internal(ExtField::new(Poly::binomial(base, n, &alpha.to_vec())))?;
    let y = tower.generator();
    let total = tower.degree();
    if total % target != 0 {
        return Err(Error::invalid("target degree does not divide the tower degree"));
    }
    let steps = total / target;
    let sub_size = num_traits::pow(tower.characteristic(), target);
    let multipliers = std::iter::once(base.one()).chain(elements_ascending(base).skip(1));
    for (attempt, z) in multipliers.enumerate() {
        let gamma = tower.mul(&y, &tower.lift(&z));
        let delta = if steps == 1 {
            gamma
        } else {
            trace_to_subfield(&tower, &gamma, &sub_size, steps)?
        };
        match min_poly_over_prime(&tower, &delta, target) {
            Ok(f) => {
                if attempt > 0 {
                    log::warn!("trace descent used multiplier #{attempt} for degree {target}");
                }
                return Ok(f);
            }
            Err(Error::InvalidInput(_)) => {
                TRACE_SWEEPS.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            Err(other) => return Err(other),
        }
    }
    Err(Error::verification(format!("no trace generates the degree-{target} subfield")))
}

/// Irreducible of degree `p^e` over `F_p`.
///
/// `e = 1` gives `X^p - X - 1`. Each further step adjoins a root of
/// `Z^p - Z - c` with `c` the lex-least element of nonzero absolute trace in
/// the previous field, and flattens to the minimal polynomial over `F_p`.
pub fn artin_schreier_irreducible<P: PrimeField>(field: &P, e: u32) -> Result<Poly<P>> {
    if e == 0 {
        return Err(Error::invalid("exponent must be positive"));
    }
    let p = field
        .modulus()
        .as_u64()
        .ok_or_else(|| Error::invalid("characteristic too large for degree p^e"))?;
    let degree = checked_power(p, e)?;
    let p = p as usize;

    let mut coeffs = vec![field.zero(); p + 1];
    coeffs[0] = field.neg(&field.one());
    coeffs[1] = field.neg(&field.one());
    coeffs[p] = field.one();
    let mut current = Poly::new(field, coeffs);
    let mut current_degree = p;
    while current_degree < degree {
        let flat = internal(ExtField::new(current))?;
        let mut c = None;
        for a in elements_ascending(&flat) {
            if !field.is_zero(&absolute_trace(&flat, &a)?) {
                c = Some(a);
                break;
            }
        }
        let c = c.ok_or_else(|| Error::verification("absolute trace vanished everywhere"))?;
        let mut step = vec![flat.zero(); p + 1];
        step[0] = flat.neg(&c);
        step[1] = flat.neg(&flat.one());
        step[p] = flat.one();
        let tower = internal(ExtField::new(Poly::new(&flat, step)))?;
        current_degree *= p;
        current = internal(min_poly_over_prime(&tower, &tower.generator(), current_degree))?;
    }
    if !rabin_is_irreducible(&current)? {
        return Err(Error::verification("Artin-Schreier output failed Rabin's test"));
    }
    Ok(current)
}

fn checked_power(q: u64, e: u32) -> Result<usize> {
    q.checked_pow(e)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| Error::invalid(format!("degree {q}^{e} is too large")))
}
