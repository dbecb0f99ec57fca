use rand::Rng;

use super::composed::composed_sum;
use super::prime_power::{artin_schreier_irreducible, prime_power_irreducible};
use super::qth::canonical_qth_data;
use crate::error::{Error, Result};
use crate::extfield::{lex_min_poly, ExtField};
use crate::factorize::{edf, rabin_is_irreducible};
use crate::field::{Field, PrimeField};
use crate::modmath::{factor_u64, Natural};
use crate::polyring::Poly;

/// One prime-power piece of a degree-`d` construction.
#[derive(Debug, Clone)]
pub struct PrimePowerPart<P: PrimeField> {
    pub q: u64,
    pub e: u32,
    pub poly: Poly<P>,
    /// `(k, iterations, bound)` of the root-taking loop; `None` when `q = p`.
    pub loop_stats: Option<(usize, usize, u64)>,
}

/// A degree-`d` irreducible together with its prime-power pieces.
#[derive(Debug, Clone)]
pub struct TracedConstruction<P: PrimeField> {
    pub poly: Poly<P>,
    pub parts: Vec<PrimePowerPart<P>>,
}

/// Canonical monic irreducible of degree `d` over `F_p`.
pub fn construct_irreducible_fp<P: PrimeField, R: Rng + ?Sized>(
    field: &P,
    d: usize,
    rng: &mut R,
) -> Result<Poly<P>> {
    construct_irreducible_fp_traced(field, d, rng).map(|t| t.poly)
}

/// [`construct_irreducible_fp`] that also reports the intermediate pieces.
pub fn construct_irreducible_fp_traced<P: PrimeField, R: Rng + ?Sized>(
    field: &P,
    d: usize,
    rng: &mut R,
) -> Result<TracedConstruction<P>> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    if d == 1 {
        return Ok(TracedConstruction {
            poly: Poly::x(field),
            parts: Vec::new(),
        });
    }
    let p = field.modulus().value().clone();
    let mut parts = Vec::new();
    for (q, e) in factor_u64(d as u64) {
        let part = if Natural::from(q) == p {
            PrimePowerPart {
                q,
                e,
                poly: artin_schreier_irreducible(field, e)?,
                loop_stats: None,
            }
        } else {
            let data = canonical_qth_data(field, q, rng)?;
            data.verify()?;
            PrimePowerPart {
                q,
                e,
                poly: prime_power_irreducible(&data, e, rng)?,
                loop_stats: Some((data.k, data.iterations, data.bound)),
            }
        };
        parts.push(part);
    }
    let mut poly = parts[0].poly.clone();
    for part in &parts[1..] {
        poly = composed_sum(&poly, &part.poly)?;
    }
    if poly.degree() != Some(d) || !rabin_is_irreducible(&poly)? {
        return Err(Error::verification(format!("degree-{d} output failed Rabin's test")));
    }
    Ok(TracedConstruction { poly, parts })
}

/// Canonical monic irreducible of degree `d` over `F_{p^k} = ctx`: the
/// lex-least degree-`d` factor over `ctx` of the canonical degree-`dk`
/// irreducible over `F_p`.
pub fn construct_irreducible_ext<P: PrimeField, R: Rng + ?Sized>(
    ctx: &ExtField<P>,
    d: usize,
    rng: &mut R,
) -> Result<Poly<ExtField<P>>> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let k = ctx.ext_degree();
    let big = construct_irreducible_fp(ctx.base(), d * k, rng)?;
    let lifted = big.map(ctx, |c| ctx.embed(c));
    let factors = super::internal(edf(&lifted, d, rng))?;
    if factors.len() != k {
        return Err(Error::verification(format!(
            "lifted polynomial split into {} factors, expected {k}",
            factors.len()
        )));
    }
    lex_min_poly(&factors)
}
