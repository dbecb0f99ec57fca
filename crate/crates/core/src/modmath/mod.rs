//! Integer and prime-field scalar arithmetic.
//!
//! Naturals are arbitrary precision ([`BigUint`]). The helpers here
//! (orders, valuations, trial-division factoring) are only ever applied to
//! desk-scale numbers such as the target degree or `q - 1`; the
//! characteristic itself may be arbitrarily large.

mod fp;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use fp::{with_prime_field, Fp64, FpBig, PrimeFieldVisitor};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Parses a decimal natural: ASCII digits only, no sign, no separators, and
/// no leading zeros except for `"0"` itself.
pub fn parse_natural(s: &str) -> Result<Natural> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("`{s}` is not a decimal natural")));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(Error::parse(format!("`{s}` has a leading zero")));
    }
    s.parse::<BigUint>()
        .map_err(|e| Error::parse(format!("`{s}`: {e}")))
}

pub fn format_natural(n: &Natural) -> String {
    n.to_str_radix(10)
}

const SMALL_PRIMES: [u32; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Number of Miller-Rabin rounds with random bases; each round errs with
/// probability at most 1/4, so 40 rounds give error below 2^-80.
const RANDOM_MR_ROUNDS: usize = 40;

/// Miller-Rabin probable-prime test.
///
/// The first twelve prime bases are deterministic for `n < 3.3 * 10^24`;
/// larger inputs get 40 additional bases drawn from a generator seeded by
/// `n` itself, so the verdict is reproducible.
pub fn is_probable_prime(n: &Natural) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &sp in SMALL_PRIMES.iter() {
        let sp = BigUint::from(sp);
        if n == &sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> s;

    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&odd, n);
        if x == one || x == n_minus_one {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                return false;
            }
        }
        true
    };

    if SMALL_PRIMES[..12]
        .iter()
        .any(|&a| witness(&BigUint::from(a)))
    {
        return false;
    }
    if n.bits() <= 81 {
        return true;
    }

    let mut seed = [0u8; 32];
    for (slot, byte) in seed.iter_mut().zip(n.to_bytes_le()) {
        *slot ^= byte;
    }
    let mut rng = ChaCha8Rng::from_seed(seed);
    let two = BigUint::from(2u32);
    let upper = n - &two;
    (0..RANDOM_MR_ROUNDS).all(|_| {
        let a = num_bigint::RandBigInt::gen_biguint_range(&mut rng, &two, &upper);
        !witness(&a)
    })
}

/// A validated prime, the characteristic of every field built on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: Natural,
    small: Option<u64>,
}

impl PrimeModulus {
    pub fn new(p: Natural) -> Result<Self> {
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p));
        }
        let small = p.to_u64();
        Ok(PrimeModulus { p, small })
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub fn value(&self) -> &Natural {
        &self.p
    }

    /// The prime as a machine word, when it fits.
    pub fn as_u64(&self) -> Option<u64> {
        self.small
    }

    pub fn is_two(&self) -> bool {
        self.small == Some(2)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// A residue modulo a shared [`PrimeModulus`], always kept in `[0, p)`.
///
/// This is the checked scalar type: binary operations verify that both
/// operands use the same modulus. The construction pipeline itself works
/// through the context-passing [`crate::field::Field`] implementations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: Natural,
    modulus: Arc<PrimeModulus>,
}

impl FpElem {
    pub fn new(value: impl Into<Natural>, modulus: &Arc<PrimeModulus>) -> Self {
        let value = value.into() % modulus.value();
        FpElem {
            value,
            modulus: Arc::clone(modulus),
        }
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn modulus(&self) -> &Arc<PrimeModulus> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_modulus(&self, other: &FpElem) -> Result<()> {
        if Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    fn with_value(&self, value: Natural) -> FpElem {
        FpElem {
            value,
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn add(&self, other: &FpElem) -> Result<FpElem> {
        self.same_modulus(other)?;
        Ok(self.with_value((&self.value + &other.value) % self.modulus.value()))
    }

    pub fn sub(&self, other: &FpElem) -> Result<FpElem> {
        self.same_modulus(other)?;
        let p = self.modulus.value();
        Ok(self.with_value((&self.value + p - &other.value) % p))
    }

    pub fn mul(&self, other: &FpElem) -> Result<FpElem> {
        self.same_modulus(other)?;
        Ok(self.with_value(&self.value * &other.value % self.modulus.value()))
    }

    pub fn neg(&self) -> FpElem {
        let p = self.modulus.value();
        self.with_value((p - &self.value) % p)
    }

    pub fn inv(&self) -> Result<FpElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.modulus.value();
        // p is prime, so Fermat gives the inverse.
        Ok(self.with_value(self.value.modpow(&(p - 2u32), p)))
    }

    pub fn pow(&self, e: &Natural) -> FpElem {
        mod_pow(self, e)
    }
}

impl PartialOrd for FpElem {
    /// Integer order of the least non-negative residues; incomparable
    /// across moduli.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.same_modulus(other).ok()?;
        Some(self.value.cmp(&other.value))
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `a^e mod p` by square-and-multiply, with `0^0 = 1`.
pub fn mod_pow(a: &FpElem, e: &Natural) -> FpElem {
    let p = a.modulus.value();
    let mut result = BigUint::one() % p;
    let mut base = a.value.clone();
    for i in 0..e.bits() {
        if e.bit(i) {
            result = result * &base % p;
        }
        base = &base * &base % p;
    }
    a.with_value(result)
}

/// Prime factorization by trial division, primes ascending.
pub fn factor_integer(n: &Natural) -> Vec<(Natural, u32)> {
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(prime, exp)| (BigUint::from(prime), exp))
            .collect();
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut candidate = BigUint::from(2u32);
    while &candidate * &candidate <= rest {
        let mut exp = 0;
        while (&rest % &candidate).is_zero() {
            rest /= &candidate;
            exp += 1;
        }
        if exp > 0 {
            out.push((candidate.clone(), exp));
        }
        candidate += 1u32;
    }
    if rest > BigUint::one() {
        out.push((rest, 1));
    }
    out
}

/// Word-sized variant of [`factor_integer`].
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut candidate = 2u64;
    while candidate.saturating_mul(candidate) <= n {
        let mut exp = 0;
        while n.is_multiple_of(candidate) {
            n /= candidate;
            exp += 1;
        }
        if exp > 0 {
            out.push((candidate, exp));
        }
        candidate += if candidate == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest `l` with `q^l | n`. Requires `q >= 2` and `n >= 1`.
pub fn valuation(n: &Natural, q: &Natural) -> u64 {
    assert!(q > &BigUint::one(), "valuation base must be at least 2");
    assert!(!n.is_zero(), "valuation of zero is unbounded");
    let mut rest = n.clone();
    let mut l = 0;
    loop {
        let (quot, rem) = rest.div_rem(q);
        if !rem.is_zero() {
            return l;
        }
        rest = quot;
        l += 1;
    }
}

/// Least `k > 0` with `a^k = 1 (mod q)`, for prime `q`.
///
/// Starts from `q - 1` and strips each prime factor while the power stays 1.
pub fn multiplicative_order(a: &Natural, q: &Natural) -> Result<Natural> {
    if q < &BigUint::from(2u32) {
        return Err(Error::invalid("order modulus must be at least 2"));
    }
    let a = a % q;
    if a.is_zero() {
        return Err(Error::invalid(format!("{a} is not a unit modulo {q}")));
    }
    let group = q - 1u32;
    let mut order = group.clone();
    for (r, _) in factor_integer(&group) {
        while (&order % &r).is_zero() && a.modpow(&(&order / &r), q).is_one() {
            order /= &r;
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn n(v: u64) -> Natural {
        BigUint::from(v)
    }

    fn f73() -> Arc<PrimeModulus> {
        Arc::new(PrimeModulus::from_u64(73).unwrap())
    }

    #[test]
    fn square_of_27_is_minus_one_mod_73() {
        let m = f73();
        let a = FpElem::new(27u32, &m);
        assert_eq!(a.mul(&a).unwrap().value(), &n(72));
        assert_eq!(FpElem::new(72u32, &m).add(&FpElem::new(1u32, &m)).unwrap().value(), &n(0));
        assert_eq!(FpElem::new(1u32, &m).inv().unwrap().value(), &n(1));
    }

    #[test]
    fn scalar_errors() {
        let m = f73();
        let other = Arc::new(PrimeModulus::from_u64(7).unwrap());
        let a = FpElem::new(3u32, &m);
        let b = FpElem::new(3u32, &other);
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch));
        assert_eq!(FpElem::new(0u32, &m).inv(), Err(Error::DivisionByZero));
        assert!(a.partial_cmp(&b).is_none());
    }

    #[test]
    fn euler_criterion_for_ten_mod_73() {
        let m = f73();
        assert_eq!(mod_pow(&FpElem::new(10u32, &m), &n(36)).value(), &n(72));
        assert_eq!(mod_pow(&FpElem::new(10u32, &m), &n(0)).value(), &n(1));
        assert_eq!(mod_pow(&FpElem::new(0u32, &m), &n(0)).value(), &n(1));
        let seven = Arc::new(PrimeModulus::from_u64(7).unwrap());
        assert_eq!(mod_pow(&FpElem::new(2u32, &seven), &n(2)).value(), &n(4));
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(&n(2), &n(5)).unwrap(), n(4));
        assert_eq!(multiplicative_order(&n(73), &n(2)).unwrap(), n(1));
        assert_eq!(multiplicative_order(&n(2), &n(7)).unwrap(), n(3));
        assert!(multiplicative_order(&n(14), &n(7)).is_err());
    }

    #[test]
    fn factoring_and_valuation() {
        assert_eq!(factor_integer(&n(12)), vec![(n(2), 2), (n(3), 1)]);
        assert_eq!(factor_integer(&n(1)), vec![]);
        assert_eq!(factor_integer(&n(72)), vec![(n(2), 3), (n(3), 2)]);
        assert_eq!(valuation(&n(72), &n(2)), 3);
        assert_eq!(valuation(&n(72), &n(3)), 2);
        assert_eq!(valuation(&n(15), &n(5)), 1);
        let big = BigUint::from(u64::MAX) * 9u32;
        let f = factor_integer(&big);
        let back = f
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(back, big);
    }

    #[test]
    fn factor_roundtrip_up_to_10k() {
        for v in 1..=10_000u64 {
            let f = factor_u64(v);
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
            assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<u64>(), v);
            assert!(f.iter().all(|&(p, _)| is_probable_prime(&n(p))));
        }
    }

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 73, 101, (1 << 31) - 1, (1 << 61) - 1];
        for p in primes {
            assert!(is_probable_prime(&n(p)), "{p}");
        }
        for c in [0u64, 1, 4, 91, 561, 1_105, 3_215_031_751, (1 << 61) + 1] {
            assert!(!is_probable_prime(&n(c)), "{c}");
        }
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * &m127)));
        assert!(matches!(PrimeModulus::new(n(91)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn natural_text() {
        assert_eq!(parse_natural("0").unwrap(), n(0));
        assert_eq!(parse_natural("2305843009213693951").unwrap(), n((1 << 61) - 1));
        for bad in ["", "01", "-3", "1_000", "1 0", "+5"] {
            assert!(parse_natural(bad).is_err(), "{bad}");
        }
        assert_eq!(format_natural(&n(73)), "73");
    }

    #[test]
    fn fermat_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [3u64, 73, 101, (1 << 31) - 1] {
            let m = Arc::new(PrimeModulus::from_u64(p).unwrap());
            for _ in 0..100 {
                let a = FpElem::new(rng.gen_range(1..p), &m);
                assert_eq!(mod_pow(&a, &n(p - 1)).value(), &n(1));
            }
        }
    }

    #[test]
    fn order_properties() {
        for q in [5u64, 7, 11, 13, 31, 73, 101] {
            for a in 1..q {
                let ord = multiplicative_order(&n(a), &n(q)).unwrap();
                assert!(((n(q) - 1u32) % &ord).is_zero());
                for (r, _) in factor_integer(&ord) {
                    assert!(!n(a).modpow(&(&ord / &r), &n(q)).is_one());
                }
            }
        }
    }
}
