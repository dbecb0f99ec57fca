//! Brute-force references for small fields.
//!
//! Nothing here calls into `factorize`, `extfield` helpers or `construct`;
//! only field and polynomial arithmetic is shared with the main pipeline.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::modmath::{factor_u64, Natural};
use crate::polyring::Poly;

/// Caps on exhaustive loops, checked before any enumeration starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBudget {
    /// Largest field (or element range) walked element by element.
    pub max_elements: Natural,
    /// Largest number of polynomials enumerated.
    pub max_polys: Natural,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_elements: Natural::one() << 16u32,
            max_polys: Natural::one() << 20u32,
        }
    }
}

impl EnumBudget {
    fn check(needed: Natural, cap: &Natural) -> Result<()> {
        if &needed > cap {
            return Err(Error::BudgetExceeded {
                needed,
                cap: cap.clone(),
            });
        }
        Ok(())
    }
}

/// All monic polynomials of degree `n`, lower coefficients counted in
/// base `|F|` with digit `i` the coefficient of `X^i`.
pub fn monic_polys<F: Field>(field: &F, n: usize) -> impl Iterator<Item = Poly<F>> + '_ {
    let size = field.size();
    let total = num_traits::pow(size.clone(), n);
    let mut index = Natural::zero();
    std::iter::from_fn(move || {
        if index >= total {
            return None;
        }
        let mut rest = index.clone();
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            let digit = &rest % &size;
            rest /= &size;
            coeffs.push(field.element_at(&digit).expect("digit below field size"));
        }
        coeffs.push(field.one());
        index += 1u32;
        Some(Poly::new(field, coeffs))
    })
}

fn polys_up_to(field_size: &Natural, max_degree: usize) -> Natural {
    (1..=max_degree).map(|j| num_traits::pow(field_size.clone(), j)).sum()
}

/// Trial division by every monic polynomial of degree `1..=deg f / 2`.
pub fn brute_is_irreducible<F: Field>(f: &Poly<F>, budget: &EnumBudget) -> Result<bool> {
    let n = f
        .degree()
        .ok_or_else(|| Error::invalid("the zero polynomial has no irreducibility status"))?;
    if n == 0 {
        return Ok(false);
    }
    let field = f.field();
    EnumBudget::check(polys_up_to(&field.size(), n / 2), &budget.max_polys)?;
    for j in 1..=n / 2 {
        for g in monic_polys(field, j) {
            if f.rem(&g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complete monic factorization by repeated trial division, smallest
/// degree first. Returned in ascending polynomial lex order.
pub fn brute_factor_set<F: Field>(f: &Poly<F>, budget: &EnumBudget) -> Result<Vec<Poly<F>>> {
    let n = f.degree().ok_or_else(|| Error::invalid("cannot factor zero"))?;
    let field = f.field();
    EnumBudget::check(polys_up_to(&field.size(), n / 2), &budget.max_polys)?;
    let lead = f.leading().cloned().expect("nonzero");
    let mut rest = f.scale(&field.inv(&lead)?);
    let mut out = Vec::new();
    let mut j = 1;
    while rest.degree().unwrap_or(0) > 0 {
        if 2 * j > rest.degree().unwrap() {
            // no divisor of degree <= half remains: rest is irreducible
            out.push(rest.clone());
            break;
        }
        let mut divided = false;
        for g in monic_polys(field, j) {
            let (quot, rem) = rest.div_rem(&g)?;
            if rem.is_zero() {
                out.push(g);
                rest = quot;
                divided = true;
                break;
            }
        }
        if !divided {
            j += 1;
        }
    }
    out.sort_by(|a, b| a.lex_cmp(b));
    Ok(out)
}

/// Counts monic irreducibles of each degree `1..=d` by sieving: a monic
/// polynomial of degree `n` is reducible iff it is `a * b` with `a` monic
/// irreducible of degree `<= n/2` and `b` monic of degree `n - deg a`.
/// Index `i` of the result holds the count for degree `i + 1`.
pub fn count_irreducibles_upto<F: Field>(field: &F, d: usize, budget: &EnumBudget) -> Result<Vec<Natural>> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    EnumBudget::check(polys_up_to(&field.size(), d), &budget.max_polys)?;
    let mut irreducible: Vec<Vec<Poly<F>>> = Vec::with_capacity(d);
    let mut counts = Vec::with_capacity(d);
    for n in 1..=d {
        let mut reducible: HashSet<Vec<F::Elem>> = HashSet::new();
        for a_deg in 1..=n / 2 {
            for a in &irreducible[a_deg - 1] {
                for b in monic_polys(field, n - a_deg) {
                    reducible.insert(a.try_mul(&b)?.into_coeffs());
                }
            }
        }
        let total = num_traits::pow(field.size(), n);
        let count = total - Natural::from(reducible.len());
        counts.push(count);
        // only degrees up to d/2 are needed as sieve factors
        if 2 * n <= d {
            irreducible.push(
                monic_polys(field, n)
                    .filter(|g| !reducible.contains(g.coeffs()))
                    .collect(),
            );
        } else {
            irreducible.push(Vec::new());
        }
    }
    Ok(counts)
}

/// Number of monic irreducibles of degree `d`, by sieve, cross-checked
/// against [`necklace_count`].
pub fn count_irreducibles<F: Field>(field: &F, d: usize, budget: &EnumBudget) -> Result<Natural> {
    let count = count_irreducibles_upto(field, d, budget)?.pop().expect("d >= 1");
    let formula = necklace_count(&field.size(), d as u64);
    if count != formula {
        return Err(Error::verification(format!(
            "sieve found {count} irreducibles of degree {d}, necklace formula gives {formula}"
        )));
    }
    Ok(count)
}

/// `(1/d) sum_{e | d} mu(e) q^(d/e)`.
pub fn necklace_count(q: &Natural, d: u64) -> Natural {
    assert!(d > 0, "degree must be positive");
    let primes: Vec<u64> = factor_u64(d).into_iter().map(|(r, _)| r).collect();
    let mut plus = Natural::zero();
    let mut minus = Natural::zero();
    // squarefree divisors e, sign (-1)^{#primes}
    for mask in 0u32..(1 << primes.len()) {
        let e: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, r)| r)
            .product();
        let term = num_traits::pow(q.clone(), (d / e) as usize);
        if mask.count_ones() % 2 == 0 {
            plus += term;
        } else {
            minus += term;
        }
    }
    (plus - minus) / Natural::from(d)
}

/// Least `j > 0` with `a^j = 1`, by repeated multiplication.
pub fn brute_element_order<F: Field>(field: &F, a: &F::Elem, budget: &EnumBudget) -> Result<Natural> {
    if field.is_zero(a) {
        return Err(Error::invalid("zero has no multiplicative order"));
    }
    EnumBudget::check(field.size(), &budget.max_elements)?;
    let mut acc = a.clone();
    let mut j = Natural::one();
    while !field.is_one(&acc) {
        acc = field.mul(&acc, a);
        j += 1u32;
    }
    Ok(j)
}

/// Whether `a` is a `q`-th power, by trying every element.
pub fn brute_is_qth_power<F: Field>(field: &F, a: &F::Elem, q: u64, budget: &EnumBudget) -> Result<bool> {
    EnumBudget::check(field.size(), &budget.max_elements)?;
    let mut index = Natural::zero();
    while let Some(x) = field.element_at(&index) {
        if field.pow(&x, &Natural::from(q)) == *a {
            return Ok(true);
        }
        index += 1u32;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::Fp64;

    fn p(field: &Fp64, c: &[u64]) -> Poly<Fp64> {
        Poly::new(field, c.to_vec())
    }

    #[test]
    fn irreducibility_examples() {
        let b = EnumBudget::default();
        let f2 = Fp64::of(2);
        assert!(brute_is_irreducible(&p(&f2, &[1, 1, 1]), &b).unwrap());
        assert!(!brute_is_irreducible(&p(&f2, &[1, 0, 1]), &b).unwrap());
        let f73 = Fp64::of(73);
        assert!(brute_is_irreducible(&p(&f73, &[63, 0, 1]), &b).unwrap());
    }

    #[test]
    fn factor_examples() {
        let b = EnumBudget::default();
        let f73 = Fp64::of(73);
        let got = brute_factor_set(&p(&f73, &[1, 0, 1]), &b).unwrap();
        assert_eq!(got, vec![p(&f73, &[27, 1]), p(&f73, &[46, 1])]);
        let f2 = Fp64::of(2);
        let got = brute_factor_set(&p(&f2, &[1; 7]), &b).unwrap();
        assert_eq!(got, vec![p(&f2, &[1, 1, 0, 1]), p(&f2, &[1, 0, 1, 1])]);
        let irr = p(&f2, &[1, 1, 0, 1]);
        assert_eq!(brute_factor_set(&irr, &b).unwrap(), vec![irr]);
        // repeated factors are kept
        let sq = p(&f2, &[1, 0, 1]);
        assert_eq!(brute_factor_set(&sq, &b).unwrap(), vec![p(&f2, &[1, 1]), p(&f2, &[1, 1])]);
    }

    #[test]
    fn counts() {
        let b = EnumBudget::default();
        let f2 = Fp64::of(2);
        let c = count_irreducibles_upto(&f2, 6, &b).unwrap();
        let want: Vec<Natural> = [2u32, 1, 2, 3, 6, 9].iter().map(|&v| Natural::from(v)).collect();
        assert_eq!(c, want);
        assert_eq!(count_irreducibles(&Fp64::of(3), 4, &b).unwrap(), Natural::from(18u32));
        assert_eq!(necklace_count(&Natural::from(2u32), 6), Natural::from(9u32));
    }

    #[test]
    fn orders() {
        let b = EnumBudget::default();
        let f73 = Fp64::of(73);
        assert_eq!(brute_element_order(&f73, &72, &b).unwrap(), Natural::from(2u32));
        // 10^2 = 27 and 27^2 = -1, so 10 has order 8
        assert_eq!(brute_element_order(&f73, &10, &b).unwrap(), Natural::from(8u32));
        assert_eq!(brute_element_order(&f73, &1, &b).unwrap(), Natural::one());
        assert!(brute_element_order(&f73, &0, &b).is_err());
        assert!(brute_is_qth_power(&f73, &27, 2, &b).unwrap());
        assert!(!brute_is_qth_power(&f73, &10, 2, &b).unwrap());
    }

    #[test]
    fn budget_enforced() {
        let tight = EnumBudget {
            max_elements: Natural::from(10u32),
            max_polys: Natural::from(10u32),
        };
        let f73 = Fp64::of(73);
        assert!(matches!(
            brute_is_irreducible(&p(&f73, &[1, 0, 1]), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(brute_element_order(&f73, &10, &tight).is_err());
    }
}
