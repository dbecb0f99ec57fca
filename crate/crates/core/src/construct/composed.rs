use num_integer::Integer;

use crate::error::{Error, Result};
use crate::extfield::{elements_ascending, ExtField};
use crate::factorize::rabin_is_irreducible;
use crate::field::{Field, PrimeField};
use crate::modmath::Natural;
use crate::polyring::{interpolate, resultant, Poly};

/// `prod_{i,j} (X - (a_i + b_j))` over the roots `a_i` of `f` and `b_j` of
/// `g`. For irreducible `f`, `g` of coprime degrees this is irreducible of
/// degree `deg f * deg g`.
///
/// The result is `Res_Y(f(Y), g(X - Y))`, evaluated at `mn + 1` points of
/// `F_p[T]/(f)` or `F_p[T]/(g)` (whichever has more than `mn` elements),
/// interpolated and projected back to `F_p`.
pub fn composed_sum<P: PrimeField>(f: &Poly<P>, g: &Poly<P>) -> Result<Poly<P>> {
    if f.field() != g.field() {
        return Err(Error::ContextMismatch);
    }
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::invalid("composed sum needs monic inputs"));
    }
    let (m, n) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        return Err(Error::invalid(format!("degrees {m} and {n} are not coprime and positive")));
    }
    let prime = f.field().clone();
    let points = m * n + 1;
    let host = if num_traits::pow(prime.size(), m) >= Natural::from(points) { f } else { g };
    let e = super::internal(ExtField::new(host.clone()))?;
    let embed = |c: &P::Elem| e.embed(c);
    let f_e = f.map(&e, embed);
    let g_e = g.map(&e, embed);

    let xs: Vec<_> = elements_ascending(&e).take(points).collect();
    if xs.len() != points {
        return Err(Error::verification("evaluation field is too small"));
    }
    let mut ys = Vec::with_capacity(points);
    for x in &xs {
        // x - Y
        let shift = Poly::new(&e, vec![x.clone(), e.neg(&e.one())]);
        ys.push(resultant(&f_e, &g_e.compose(&shift)?)?);
    }
    let big = interpolate(&e, &xs, &ys)?;
    let coeffs = big
        .coeffs()
        .iter()
        .map(|c| e.project(c).ok_or_else(|| Error::verification("composed sum left the prime field")))
        .collect::<Result<Vec<_>>>()?;
    let out = Poly::new(&prime, coeffs);
    if out.degree() != Some(m * n) || !out.is_monic() {
        return Err(Error::verification("composed sum has the wrong shape"));
    }
    if !rabin_is_irreducible(&out)? {
        return Err(Error::verification("composed sum failed Rabin's test"));
    }
    Ok(out)
}
