//! Extension fields `B[X]/(h)` over any base field `B`, and the canonical
//! orders on their elements and polynomials.
//!
//! An element is its coordinate vector (coefficient of `X^i` at index `i`).
//! Both lexicographic orders scan from the highest index down: element
//! coordinates from `k - 1` to `0`, polynomial coefficients from degree
//! `d - 1` to the constant term. Which factor or root counts as "smallest"
//! depends on this direction, so it is part of the output contract.
//!
//! Stacking `ExtField<ExtField<P>>` gives the two-level towers used by the
//! construction pipeline.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::factorize::rabin_is_irreducible;
use crate::field::Field;
use crate::modmath::Natural;
use crate::polyring::{split_top_level, xgcd, Poly};

/// `base[X]/(modulus)` with `modulus` monic irreducible of degree `k >= 1`.
#[derive(Clone)]
pub struct ExtField<F: Field> {
    inner: Arc<ExtInner<F>>,
}

/// A field built on top of another extension.
pub type Tower<P> = ExtField<ExtField<P>>;

struct ExtInner<F: Field> {
    base: F,
    modulus: Poly<F>,
    k: usize,
    size: Natural,
    /// `(j, -h_j)` for the nonzero low coefficients of the modulus.
    reduction: Vec<(usize, F::Elem)>,
    /// `(X^i)^p` for `i < k`, built on first use.
    frobenius_table: OnceLock<Vec<Vec<F::Elem>>>,
}

impl<F: Field> ExtField<F> {
    /// Validates the modulus (monic, degree >= 1, irreducible by Rabin's
    /// test over the base) and builds the field.
    pub fn new(modulus: Poly<F>) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::invalid("extension modulus must be monic"));
        }
        let k = modulus.degree().expect("monic polynomial is nonzero");
        if k == 0 {
            return Err(Error::invalid("extension modulus must have degree >= 1"));
        }
        if !rabin_is_irreducible(&modulus)? {
            return Err(Error::invalid(format!(
                "extension modulus {modulus} is reducible"
            )));
        }
        let base = modulus.field().clone();
        let size = num_traits::pow(base.size(), k);
        let reduction = modulus.coeffs()[..k]
            .iter()
            .enumerate()
            .filter(|(_, c)| !base.is_zero(c))
            .map(|(j, c)| (j, base.neg(c)))
            .collect();
        Ok(ExtField {
            inner: Arc::new(ExtInner {
                base,
                modulus,
                k,
                size,
                reduction,
                frobenius_table: OnceLock::new(),
            }),
        })
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.inner.modulus
    }

    /// Degree over the base field.
    pub fn ext_degree(&self) -> usize {
        self.inner.k
    }

    /// The residue class of `X`.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.from_poly(&Poly::x(self.base()))
    }

    /// Image of a base-field element.
    pub fn lift(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut coords = vec![self.base().zero(); self.inner.k];
        coords[0] = a.clone();
        coords
    }

    /// The residue class of a base polynomial.
    pub fn from_poly(&self, g: &Poly<F>) -> Vec<F::Elem> {
        let r = g.rem(self.modulus()).expect("same base field");
        let mut coords = r.into_coeffs();
        coords.resize(self.inner.k, self.base().zero());
        coords
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(self.base(), a.to_vec())
    }

    fn reduce(&self, mut wide: Vec<F::Elem>) -> Vec<F::Elem> {
        let base = self.base();
        let k = self.inner.k;
        for i in (k..wide.len()).rev() {
            if base.is_zero(&wide[i]) {
                continue;
            }
            let c = std::mem::replace(&mut wide[i], base.zero());
            for (j, m) in &self.inner.reduction {
                let t = base.mul(&c, m);
                wide[i - k + j] = base.add(&wide[i - k + j], &t);
            }
        }
        wide.truncate(k);
        wide.resize(k, base.zero());
        wide
    }

    fn frobenius_table(&self) -> &Vec<Vec<F::Elem>> {
        self.inner.frobenius_table.get_or_init(|| {
            let x_p = self.pow(&self.generator(), &self.characteristic());
            let mut table = Vec::with_capacity(self.inner.k);
            let mut cur = self.one();
            for _ in 0..self.inner.k {
                table.push(cur.clone());
                cur = self.mul(&cur, &x_p);
            }
            table
        })
    }
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> fmt::Debug for ExtField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtField({})", self.inner.modulus)
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;
    type Prime = F::Prime;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.inner.k]
    }

    fn one(&self) -> Self::Elem {
        self.lift(&self.base().one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = self.base();
        let k = self.inner.k;
        let mut wide = vec![base.zero(); 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !base.is_zero(y) {
                    wide[i + j] = base.add(&wide[i + j], &base.mul(x, y));
                }
            }
        }
        self.reduce(wide)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = xgcd(&self.to_poly(a), self.modulus())?;
        if !g.is_one() {
            return Err(Error::verification("extension modulus shares a factor"));
        }
        Ok(self.from_poly(&s))
    }

    fn size(&self) -> Natural {
        self.inner.size.clone()
    }

    fn degree(&self) -> usize {
        self.inner.k * self.base().degree()
    }

    fn prime_field(&self) -> F::Prime {
        self.base().prime_field()
    }

    fn embed(&self, a: &<F::Prime as Field>::Elem) -> Self::Elem {
        self.lift(&self.base().embed(a))
    }

    fn project(&self, a: &Self::Elem) -> Option<<F::Prime as Field>::Elem> {
        if a[1..].iter().all(|c| self.base().is_zero(c)) {
            self.base().project(&a[0])
        } else {
            None
        }
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        let base = self.base();
        let table = self.frobenius_table();
        let mut out = self.zero();
        for (c, image) in a.iter().zip(table) {
            if base.is_zero(c) {
                continue;
            }
            let c = base.frobenius(c);
            for (slot, t) in out.iter_mut().zip(image) {
                if !base.is_zero(t) {
                    *slot = base.add(slot, &base.mul(&c, t));
                }
            }
        }
        out
    }

    fn lex_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.iter()
            .rev()
            .zip(b.iter().rev())
            .map(|(x, y)| self.base().lex_cmp(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.inner.k).map(|_| self.base().random(rng)).collect()
    }

    fn element_at(&self, index: &Natural) -> Option<Self::Elem> {
        if index >= &self.inner.size {
            return None;
        }
        let radix = self.base().size();
        let mut rest = index.clone();
        let mut coords = Vec::with_capacity(self.inner.k);
        for _ in 0..self.inner.k {
            let digit = &rest % &radix;
            rest /= &radix;
            coords.push(self.base().element_at(&digit)?);
        }
        Some(coords)
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(|c| self.base().format_elem(c)).collect();
        format!("[{}]", parts.join(" "))
    }

    fn parse_elem(&self, text: &str) -> Result<Self::Elem> {
        let body = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("`{text}` is not a bracketed element")))?;
        let coords = split_top_level(body)?
            .into_iter()
            .map(|tok| self.base().parse_elem(tok))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != self.inner.k {
            return Err(Error::parse(format!(
                "`{text}` has {} coordinates, expected {}",
                coords.len(),
                self.inner.k
            )));
        }
        Ok(coords)
    }
}

/// Element order: see [`Field::lex_cmp`].
pub fn lex_compare_elem<F: Field>(field: &F, a: &F::Elem, b: &F::Elem) -> Ordering {
    field.lex_cmp(a, b)
}

/// Order on monic polynomials of one degree: coefficients from degree
/// `d - 1` down to the constant term, each by [`lex_compare_elem`].
pub fn lex_compare_poly<F: Field>(g: &Poly<F>, h: &Poly<F>) -> Result<Ordering> {
    if g.field() != h.field() {
        return Err(Error::ContextMismatch);
    }
    if g.degree() != h.degree() {
        return Err(Error::invalid("lex comparison needs equal degrees"));
    }
    if !g.is_monic() || !h.is_monic() {
        return Err(Error::invalid("lex comparison needs monic polynomials"));
    }
    Ok(g.lex_cmp(h))
}

/// Running-minimum scan for the lexicographically smallest polynomial.
pub fn lex_min_poly<F: Field>(fs: &[Poly<F>]) -> Result<Poly<F>> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::invalid("no polynomials to choose from"))?;
    let mut best = first;
    if !best.is_monic() {
        return Err(Error::invalid("lex comparison needs monic polynomials"));
    }
    for f in rest {
        if lex_compare_poly(f, best)? == Ordering::Less {
            best = f;
        }
    }
    Ok(best.clone())
}

/// `beta, beta^s, beta^(s^2), ..., beta^(s^(n-1))` for `s = base_size`.
pub fn conjugates<F: Field>(field: &F, beta: &F::Elem, base_size: &Natural, n: usize) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(n);
    let mut cur = beta.clone();
    for _ in 0..n {
        let next = field.pow_map(&cur, base_size);
        out.push(cur);
        cur = next;
    }
    out
}

/// `prod (X - c)` over the `n` conjugates of `beta` relative to the subfield
/// of size `base_size`. Every coefficient is checked to be fixed by the
/// `base_size`-power map, i.e. to lie in that subfield.
pub fn min_poly_from_conjugates<F: Field>(
    field: &F,
    beta: &F::Elem,
    base_size: &Natural,
    n: usize,
) -> Result<Poly<F>> {
    let conj = conjugates(field, beta, base_size, n);
    let distinct: HashSet<&F::Elem> = conj.iter().collect();
    if distinct.len() != n {
        return Err(Error::invalid(format!(
            "element has only {} distinct conjugates, expected {n}",
            distinct.len()
        )));
    }
    let mut coeffs = vec![field.one()];
    for c in &conj {
        let neg_c = field.neg(c);
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, a) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], a);
            next[i] = field.add(&next[i], &field.mul(a, &neg_c));
        }
        coeffs = next;
    }
    for (i, c) in coeffs.iter().enumerate() {
        if field.pow_map(c, base_size) != *c {
            return Err(Error::verification(format!(
                "coefficient {i} of the conjugate product is outside the subfield"
            )));
        }
    }
    Ok(Poly::new(field, coeffs))
}

/// Minimal polynomial over the prime field of an element with `n` distinct
/// `p`-power conjugates, coerced coefficient-wise into the prime field.
pub fn min_poly_over_prime<F: Field>(field: &F, beta: &F::Elem, n: usize) -> Result<Poly<F::Prime>> {
    let p = field.characteristic();
    let big = min_poly_from_conjugates(field, beta, &p, n)?;
    let prime = field.prime_field();
    let coeffs = big
        .coeffs()
        .iter()
        .map(|c| {
            field
                .project(c)
                .ok_or_else(|| Error::verification("fixed coefficient is not in prime position"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(&prime, coeffs))
}

/// `sum_{i < steps} gamma^(sub_size^i)`, the trace down to the subfield of
/// size `sub_size`. The result is checked to be fixed by the
/// `sub_size`-power map.
pub fn trace_to_subfield<F: Field>(
    field: &F,
    gamma: &F::Elem,
    sub_size: &Natural,
    steps: usize,
) -> Result<F::Elem> {
    let total = conjugates(field, gamma, sub_size, steps)
        .iter()
        .fold(field.zero(), |acc, c| field.add(&acc, c));
    if field.pow_map(&total, sub_size) != total {
        return Err(Error::verification("trace is not fixed by the subfield Frobenius"));
    }
    Ok(total)
}

/// Absolute trace to the prime field.
pub fn absolute_trace<F: Field>(field: &F, a: &F::Elem) -> Result<<F::Prime as Field>::Elem> {
    let t = trace_to_subfield(field, a, &field.characteristic(), field.degree())?;
    field
        .project(&t)
        .ok_or_else(|| Error::verification("absolute trace is not a prime-field element"))
}

/// Enumerates the field in ascending lex order.
pub fn elements_ascending<F: Field>(field: &F) -> impl Iterator<Item = F::Elem> + '_ {
    let mut index = Natural::zero();
    std::iter::from_fn(move || {
        let e = field.element_at(&index)?;
        index += Natural::one();
        Some(e)
    })
}
