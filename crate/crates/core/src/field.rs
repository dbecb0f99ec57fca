//! The field abstraction shared by prime fields, extension fields and
//! towers.
//!
//! Fields are runtime contexts: elements are plain values and every
//! operation goes through the context that owns them. Element ordering
//! ([`Field::lex_cmp`]) is part of the output contract, since canonical
//! choices are always "smallest under this order".

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::One;
use rand::Rng;

use crate::error::Result;
use crate::modmath::{Natural, PrimeModulus};

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;
    /// The prime subfield.
    type Prime: PrimeField;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Square-and-multiply; `0^0 = 1`.
    fn pow(&self, a: &Self::Elem, e: &Natural) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Number of elements.
    fn size(&self) -> Natural;

    /// Degree over the prime subfield.
    fn degree(&self) -> usize;

    fn prime_field(&self) -> Self::Prime;

    fn characteristic(&self) -> Natural {
        self.prime_field().modulus().value().clone()
    }

    /// Image of a prime-subfield element.
    fn embed(&self, a: &<Self::Prime as Field>::Elem) -> Self::Elem;

    /// Reads an element back as a prime-subfield element when its
    /// representation lies there.
    fn project(&self, a: &Self::Elem) -> Option<<Self::Prime as Field>::Elem>;

    /// The `p`-th power map.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;

    /// Total order used for every canonical choice.
    fn lex_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Uniform element.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// The element at position `index` in ascending [`Field::lex_cmp`]
    /// order, or `None` past the end.
    fn element_at(&self, index: &Natural) -> Option<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;

    /// Image of the integer `n`.
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, n: u64) -> Self::Elem {
        let prime = self.prime_field();
        self.embed(&prime.from_natural(&Natural::from(n)))
    }

    /// `a^(p^j)` by `j` Frobenius applications.
    fn frobenius_iter(&self, a: &Self::Elem, j: usize) -> Self::Elem {
        let mut out = a.clone();
        for _ in 0..j {
            out = self.frobenius(&out);
        }
        out
    }

    /// `a^e`, routed through [`Field::frobenius_iter`] when `e` is a power
    /// of the characteristic.
    fn pow_map(&self, a: &Self::Elem, e: &Natural) -> Self::Elem {
        match char_power_exponent(&self.characteristic(), e) {
            Some(j) => self.frobenius_iter(a, j),
            None => self.pow(a, e),
        }
    }
}

/// A field of prime order.
pub trait PrimeField: Field<Prime = Self> {
    fn modulus(&self) -> &PrimeModulus;
    #[allow(clippy::wrong_self_convention)]
    fn from_natural(&self, n: &Natural) -> Self::Elem;
    fn to_natural(&self, a: &Self::Elem) -> Natural;
}

/// `Some(j)` when `e = p^j`.
pub fn char_power_exponent(p: &Natural, e: &Natural) -> Option<usize> {
    let mut rest = e.clone();
    let mut j = 0;
    while !rest.is_one() {
        if (&rest % p) != Natural::default() || rest == Natural::default() {
            return None;
        }
        rest /= p;
        j += 1;
    }
    Some(j)
}
