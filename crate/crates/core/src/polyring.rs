//! Dense univariate polynomials over any [`Field`].
//!
//! Coefficients are stored ascending (index `i` holds the coefficient of
//! `X^i`) with no trailing zeros, so the zero polynomial is the empty vector.
//! The text form is the same ascending order: `"63 0 1"` is `X^2 + 63` over
//! a prime field and `"[0 1] [1 0]"` is `X + t` over `F_p[t]/(h)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::modmath::Natural;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(field: &F) -> Self {
        Poly::monomial(field, field.one(), 1)
    }

    /// `c * X^n`.
    pub fn monomial(field: &F, c: F::Elem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    /// `X^n - c`.
    pub fn binomial(field: &F, n: usize, c: &F::Elem) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        coeffs[0] = field.sub(&coeffs[0], c);
        Poly::new(field, coeffs)
    }

    /// `X - root`.
    pub fn linear(field: &F, root: &F::Elem) -> Self {
        Poly::binomial(field, 1, root)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(&self.field, coeffs)
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead = divisor.leading().expect("nonzero divisor");
        let inv_lead = if f.is_one(lead) { None } else { Some(f.inv(lead)?) };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len() - db];
        for i in (db..rem.len()).rev() {
            let c = match &inv_lead {
                Some(inv) => f.mul(&rem[i], inv),
                None => rem[i].clone(),
            };
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in divisor.coeffs[..db].iter().enumerate() {
                if !f.is_zero(b) {
                    rem[i - db + j] = f.sub(&rem[i - db + j], &f.mul(&c, b));
                }
            }
            quot[i - db] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.try_mul(other)?.rem(modulus)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(inner)` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_field(inner)?;
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?;
            acc = acc.try_add(&Poly::constant(&self.field, c.clone()))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        Poly::new(f, coeffs)
    }

    /// Coefficient-wise image in another field.
    pub fn map<G: Field>(&self, target: &G, mut image: impl FnMut(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target, self.coeffs.iter().map(&mut image).collect())
    }

    /// Compares two polynomials of equal degree coefficient by coefficient,
    /// from the highest index down, using [`Field::lex_cmp`]. Polynomials of
    /// different degrees order by degree.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .rev()
                .zip(other.coeffs.iter().rev())
                .map(|(a, b)| self.field.lex_cmp(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| self.field.format_elem(c))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_text(field: &F, text: &str) -> Result<Self> {
        let coeffs = split_top_level(text)?
            .into_iter()
            .map(|tok| field.parse_elem(tok))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::parse("empty polynomial"));
        }
        Ok(Poly::new(field, coeffs))
    }
}

/// Splits on whitespace outside brackets: `"[0 1] [1 0]"` gives two tokens.
pub(crate) fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => {
                if depth == 0 && start.is_none() {
                    start = Some(i);
                }
                depth += 1;
            }
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::parse(format!("unbalanced `]` in `{text}`")))?;
            }
            c if c.is_whitespace() && depth == 0 => {
                if let Some(s) = start.take() {
                    out.push(&text[s..i]);
                }
            }
            _ => {
                if start.is_none() {
                    start = Some(i);
                }
            }
        }
    }
    if depth != 0 {
        return Err(Error::parse(format!("unbalanced `[` in `{text}`")));
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    Ok(out)
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_text())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $trait<&'a Poly<F>> for &'a Poly<F> {
            type Output = Poly<F>;

            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &'a Poly<F>) -> Poly<F> {
                self.$checked(rhs).expect("polynomial operands share a field")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

/// Monic greatest common divisor. Fails when both inputs are zero.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::invalid("gcd(0, 0) is undefined"));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub fn xgcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::invalid("gcd(0, 0) is undefined"));
    }
    let field = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lc = r0.leading().expect("nonzero gcd").clone();
    let inv = field.inv(&lc)?;
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

fn require_modulus<F: Field>(m: &Poly<F>) -> Result<()> {
    match m.degree() {
        Some(d) if d >= 1 => Ok(()),
        _ => Err(Error::invalid("modulus must have degree at least 1")),
    }
}

/// `a^e mod m` by square-and-multiply.
pub fn powmod<F: Field>(a: &Poly<F>, e: &Natural, m: &Poly<F>) -> Result<Poly<F>> {
    require_modulus(m)?;
    let base = a.rem(m)?;
    let mut acc = Poly::one(a.field());
    for i in (0..e.bits()).rev() {
        acc = acc.mul_mod(&acc, m)?;
        if e.bit(i) {
            acc = acc.mul_mod(&base, m)?;
        }
    }
    // e = 0 with deg m >= 1 leaves the constant 1, already reduced.
    Ok(acc)
}

/// `X^(Q^i) mod m`, `Q` the size of the coefficient field, by `i` successive
/// `Q`-th power exponentiations.
pub fn frobenius_power<F: Field>(m: &Poly<F>, i: usize) -> Result<Poly<F>> {
    require_modulus(m)?;
    let q = m.field().size();
    let mut cur = Poly::x(m.field()).rem(m)?;
    for _ in 0..i {
        cur = powmod(&cur, &q, m)?;
    }
    Ok(cur)
}

/// `Res(f, g) = prod g(a)` over the roots `a` of the monic `f`, with
/// multiplicity, via the Euclidean remainder sequence.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<F::Elem> {
    f.same_field(g)?;
    let field = f.field();
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::invalid("resultant needs a monic f of degree >= 1"));
    }
    let mut a = f.clone();
    let mut b = g.rem(&a)?;
    let mut acc = field.one();
    // Invariant: result = acc * prod_{a(x)=0} b(x), with a monic.
    loop {
        let n = a.degree().expect("a is monic") as u64;
        let Some(m) = b.degree() else {
            return Ok(field.zero());
        };
        let lc = b.leading().expect("nonzero").clone();
        acc = field.mul(&acc, &field.pow(&lc, &Natural::from(n)));
        if m == 0 {
            return Ok(acc);
        }
        if (n * m as u64) % 2 == 1 {
            acc = field.neg(&acc);
        }
        let b_monic = b.monic();
        let r = a.rem(&b_monic)?;
        a = b_monic;
        b = r;
    }
}

/// The unique polynomial of degree `< xs.len()` through the given points
/// (Newton divided differences).
pub fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Result<Poly<F>> {
    if xs.len() != ys.len() {
        return Err(Error::invalid("interpolation needs as many values as points"));
    }
    let n = xs.len();
    let mut coef = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = field.sub(&xs[i], &xs[i - level]);
            let inv = field
                .inv(&dx)
                .map_err(|_| Error::invalid("interpolation points must be distinct"))?;
            coef[i] = field.mul(&field.sub(&coef[i], &coef[i - 1]), &inv);
        }
    }
    let mut acc = Poly::zero(field);
    for i in (0..n).rev() {
        acc = &acc * &Poly::linear(field, &xs[i]);
        acc = &acc + &Poly::constant(field, coef[i].clone());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(e: u64) -> Natural {
        Natural::from(e)
    }
    use crate::modmath::Fp64;
    use proptest::prelude::*;

    fn p(field: &Fp64, c: &[u64]) -> Poly<Fp64> {
        Poly::new(field, c.to_vec())
    }

    #[test]
    fn roots_of_minus_one_mod_73() {
        let f = Fp64::of(73);
        let prod = &Poly::linear(&f, &27) * &Poly::linear(&f, &46);
        assert_eq!(prod, p(&f, &[1, 0, 1]));
        let g = p(&f, &[5, 0, 3, 1]);
        assert_eq!(&g * &Poly::one(&f), g);
    }

    #[test]
    fn char_two_division() {
        let f = Fp64::of(2);
        let (q, r) = p(&f, &[1, 0, 1]).div_rem(&p(&f, &[1, 1])).unwrap();
        assert_eq!(q, p(&f, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            p(&f, &[1, 1]).div_rem(&Poly::zero(&f)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        let f7 = Fp64::of(7);
        let g = gcd(&p(&f7, &[6, 0, 1]), &p(&f7, &[0, 1, 1])).unwrap();
        assert_eq!(g, p(&f7, &[1, 1]));
        assert_eq!(
            gcd(&p(&f7, &[2, 4]), &Poly::zero(&f7)).unwrap(),
            p(&f7, &[4, 1])
        );
        let f2 = Fp64::of(2);
        assert!(gcd(&p(&f2, &[1, 1, 0, 1]), &p(&f2, &[1, 0, 1, 1])).unwrap().is_one());
        assert!(gcd(&Poly::zero(&f2), &Poly::zero(&f2)).is_err());
        let other = Fp64::of(3);
        assert_eq!(
            gcd(&p(&f2, &[1, 1]), &p(&other, &[1, 1])),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn powmod_and_frobenius() {
        let f2 = Fp64::of(2);
        let m = p(&f2, &[1, 1, 1]);
        let x = Poly::x(&f2);
        assert_eq!(powmod(&x, &nat(4), &m).unwrap(), x);
        let a = p(&f2, &[1, 1, 1, 1]);
        assert_eq!(powmod(&a, &nat(1), &m).unwrap(), a.rem(&m).unwrap());
        assert_eq!(frobenius_power(&m, 2).unwrap(), x);
        assert_eq!(frobenius_power(&m, 0).unwrap(), x);
        assert!(powmod(&x, &nat(3), &Poly::one(&f2)).is_err());

        let f73 = Fp64::of(73);
        let m = p(&f73, &[1, 0, 1]);
        // oracle: direct exponentiation by 73
        let direct = powmod(&Poly::x(&f73), &nat(73), &m).unwrap();
        assert_eq!(frobenius_power(&m, 1).unwrap(), direct);
        // X^73 = X * (X^2)^36 = X * (-1)^36 = X
        assert_eq!(direct, Poly::x(&f73));
    }

    #[test]
    fn resultant_examples() {
        let f7 = Fp64::of(7);
        assert_eq!(resultant(&p(&f7, &[5, 1]), &p(&f7, &[4, 1])).unwrap(), 6);
        assert_eq!(resultant(&p(&f7, &[5, 1, 1]), &Poly::one(&f7)).unwrap(), 1);
        let f73 = Fp64::of(73);
        assert_eq!(resultant(&p(&f73, &[1, 0, 1]), &Poly::x(&f73)).unwrap(), 1);
        assert!(resultant(&p(&f7, &[1, 2]), &p(&f7, &[1, 1])).is_err());
        assert!(resultant(&Poly::one(&f7), &p(&f7, &[1, 1])).is_err());
        assert_eq!(resultant(&p(&f7, &[1, 1]), &Poly::zero(&f7)).unwrap(), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Fp64::of(101);
        let target = p(&f, &[3, 0, 7, 1]);
        let xs: Vec<u64> = (0..4).collect();
        let ys: Vec<u64> = xs.iter().map(|x| target.eval(x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys).unwrap(), target);
        assert!(interpolate(&f, &[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn text_format() {
        let f = Fp64::of(73);
        let g = Poly::parse_text(&f, "63 0 1").unwrap();
        assert_eq!(g, p(&f, &[63, 0, 1]));
        assert_eq!(g.to_text(), "63 0 1");
        assert_eq!(Poly::parse_text(&f, "  0   1 ").unwrap().to_text(), "0 1");
        assert!(Poly::parse_text(&f, "").is_err());
        assert!(Poly::parse_text(&f, "1 80").is_err());
        assert_eq!(split_top_level("[0 1] [1 0]").unwrap(), vec!["[0 1]", "[1 0]"]);
        assert!(split_top_level("[0 1").is_err());
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..13, 0..max_len)
    }

    proptest! {
        #[test]
        fn divmod_identity(a in arb_poly(9), b in arb_poly(6)) {
            let f = Fp64::of(13);
            let (a, b) = (p(&f, &a), p(&f, &b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(7), b in arb_poly(7)) {
            let f = Fp64::of(13);
            let (a, b) = (p(&f, &a), p(&f, &b));
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = gcd(&a, &b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
            prop_assert_eq!(&g, &gcd(&b, &a).unwrap());
            let (g2, s, t) = xgcd(&a, &b).unwrap();
            prop_assert_eq!(&(&(&s * &a) + &(&t * &b)), &g2);
            prop_assert_eq!(g2, g);
        }

        #[test]
        fn resultant_is_multiplicative(
            f in prop::collection::vec(0u64..13, 1..5),
            g in arb_poly(4),
            h in arb_poly(4),
        ) {
            let field = Fp64::of(13);
            let mut fc = f.clone();
            fc.push(1);
            let f = p(&field, &fc);
            let (g, h) = (p(&field, &g), p(&field, &h));
            let lhs = resultant(&f, &(&g * &h)).unwrap();
            let rhs = field.mul(&resultant(&f, &g).unwrap(), &resultant(&f, &h).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
