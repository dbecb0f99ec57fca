use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::{parse_natural, Natural, PrimeModulus};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

/// `F_p` for `p < 2^63`, residues held in a machine word.
#[derive(Debug, Clone)]
pub struct Fp64 {
    p: u64,
    modulus: Arc<PrimeModulus>,
}

impl Fp64 {
    pub fn new(modulus: PrimeModulus) -> Result<Self> {
        match modulus.as_u64() {
            Some(p) if p < 1 << 63 => Ok(Fp64 {
                p,
                modulus: Arc::new(modulus),
            }),
            _ => Err(Error::invalid(format!(
                "{modulus} does not fit the word-sized prime field"
            ))),
        }
    }

    /// Convenience constructor; panics when `p` is not a word-sized prime.
    pub fn of(p: u64) -> Self {
        Self::new(PrimeModulus::from_u64(p).expect("prime")).expect("word-sized prime")
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl PartialEq for Fp64 {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Field for Fp64 {
    type Elem = u64;
    type Prime = Fp64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    fn size(&self) -> Natural {
        Natural::from(self.p)
    }

    fn degree(&self) -> usize {
        1
    }

    fn prime_field(&self) -> Fp64 {
        self.clone()
    }

    fn embed(&self, a: &u64) -> u64 {
        *a
    }

    fn project(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }

    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }

    fn lex_cmp(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn element_at(&self, index: &Natural) -> Option<u64> {
        index.to_u64().filter(|&i| i < self.p)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<u64> {
        let n = parse_natural(text)?;
        n.to_u64()
            .filter(|&v| v < self.p)
            .ok_or_else(|| Error::parse(format!("{text} is not a residue modulo {}", self.p)))
    }

    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
}

impl PrimeField for Fp64 {
    fn modulus(&self) -> &PrimeModulus {
        &self.modulus
    }

    fn from_natural(&self, n: &Natural) -> u64 {
        (n % self.p).to_u64().expect("reduced residue fits")
    }

    fn to_natural(&self, a: &u64) -> Natural {
        Natural::from(*a)
    }
}

/// `F_p` for arbitrary `p`, residues held as [`BigUint`].
#[derive(Debug, Clone)]
pub struct FpBig {
    modulus: Arc<PrimeModulus>,
}

impl FpBig {
    pub fn new(modulus: PrimeModulus) -> Self {
        FpBig {
            modulus: Arc::new(modulus),
        }
    }

    fn p(&self) -> &BigUint {
        self.modulus.value()
    }
}

impl PartialEq for FpBig {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus
    }
}

impl Field for FpBig {
    type Elem = BigUint;
    type Prime = FpBig;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::from(1u32)
    }

    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if &s >= self.p() {
            s - self.p()
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + self.p() - b
        }
    }

    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            self.p() - a
        }
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b % self.p()
    }

    fn inv(&self, a: &BigUint) -> Result<BigUint> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p();
        Ok(a.modpow(&(p - 2u32), p))
    }

    fn pow(&self, a: &BigUint, e: &Natural) -> BigUint {
        a.modpow(e, self.p())
    }

    fn size(&self) -> Natural {
        self.p().clone()
    }

    fn degree(&self) -> usize {
        1
    }

    fn prime_field(&self) -> FpBig {
        self.clone()
    }

    fn embed(&self, a: &BigUint) -> BigUint {
        a.clone()
    }

    fn project(&self, a: &BigUint) -> Option<BigUint> {
        Some(a.clone())
    }

    fn frobenius(&self, a: &BigUint) -> BigUint {
        a.clone()
    }

    fn lex_cmp(&self, a: &BigUint, b: &BigUint) -> Ordering {
        a.cmp(b)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        rng.gen_biguint_below(self.p())
    }

    fn element_at(&self, index: &Natural) -> Option<BigUint> {
        (index < self.p()).then(|| index.clone())
    }

    fn format_elem(&self, a: &BigUint) -> String {
        a.to_str_radix(10)
    }

    fn parse_elem(&self, text: &str) -> Result<BigUint> {
        let n = parse_natural(text)?;
        if &n >= self.p() {
            return Err(Error::parse(format!(
                "{text} is not a residue modulo {}",
                self.p()
            )));
        }
        Ok(n)
    }
}

impl PrimeField for FpBig {
    fn modulus(&self) -> &PrimeModulus {
        &self.modulus
    }

    fn from_natural(&self, n: &Natural) -> BigUint {
        n % self.p()
    }

    fn to_natural(&self, a: &BigUint) -> Natural {
        a.clone()
    }
}

/// Runs a computation generic over the prime field, picking the word-sized
/// backend whenever the characteristic allows it.
pub trait PrimeFieldVisitor {
    type Output;
    fn visit<P: PrimeField>(self, field: P) -> Self::Output;
}

pub fn with_prime_field<V: PrimeFieldVisitor>(modulus: &PrimeModulus, visitor: V) -> V::Output {
    match Fp64::new(modulus.clone()) {
        Ok(small) => visitor.visit(small),
        Err(_) => visitor.visit(FpBig::new(modulus.clone())),
    }
}
