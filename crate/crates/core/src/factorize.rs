//! Rabin's irreducibility test and Cantor-Zassenhaus equal-degree
//! factorization.
//!
//! Randomness only ever affects how long a split takes. Factor lists are
//! returned sorted by [`Poly::lex_cmp`], so callers see the same list for
//! every seed.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::modmath::{factor_u64, Natural};
use crate::polyring::{gcd, powmod, Poly};

/// Consecutive failed split attempts before giving up. Each attempt fails
/// with probability at most about 1/2, so hitting this means the input was
/// not an equal-degree product.
const MAX_SPLIT_ATTEMPTS: usize = 1000;

/// Rabin's test: `f` (monic, degree `n`) is irreducible over a field of
/// size `Q` iff `X^(Q^n) = X mod f` and `gcd(X^(Q^(n/r)) - X, f) = 1` for
/// every prime `r | n`.
pub fn rabin_is_irreducible<F: Field>(f: &Poly<F>) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::invalid("irreducibility test needs a monic polynomial"));
    }
    let n = f.degree().expect("monic");
    if n == 0 {
        return Err(Error::invalid("irreducibility test needs degree >= 1"));
    }
    if n == 1 {
        return Ok(true);
    }
    frobenius_degree_check(f, n)
}

/// True iff every irreducible factor of `f` has degree exactly `m` and `f`
/// is squarefree: `f | X^(Q^m) - X` and `gcd(X^(Q^(m/r)) - X, f) = 1` for
/// every prime `r | m`.
fn frobenius_degree_check<F: Field>(f: &Poly<F>, m: usize) -> Result<bool> {
    let field = f.field();
    let size = field.size();
    let checkpoints: BTreeSet<usize> = factor_u64(m as u64)
        .into_iter()
        .map(|(r, _)| m / r as usize)
        .collect();
    let x = Poly::x(field).rem(f)?;
    let mut cur = x.clone();
    for j in 1..=m {
        cur = powmod(&cur, &size, f)?;
        if checkpoints.contains(&j) && !gcd(&(&cur - &x), f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(cur == x)
}

/// Work counters for one [`edf_with_stats`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdfStats {
    /// Random elements drawn.
    pub attempts: usize,
    /// Successful splits (number of factors minus one).
    pub splits: usize,
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree
/// `factor_degree`. See [`edf_with_stats`].
pub fn edf<F: Field, R: Rng + ?Sized>(
    f: &Poly<F>,
    factor_degree: usize,
    rng: &mut R,
) -> Result<Vec<Poly<F>>> {
    edf_with_stats(f, factor_degree, rng).map(|(factors, _)| factors)
}

/// Cantor-Zassenhaus equal-degree factorization.
///
/// For odd field size `Q` a random `w` splits `f` through
/// `gcd(w^((Q^m - 1)/2) - 1, f)`; in characteristic 2 through
/// `gcd(sum_{i < m*e} w^(2^i), f)` where `Q = 2^e`. Factors are verified
/// (product equals `f`, each passes Rabin's test) and returned in ascending
/// lex order.
pub fn edf_with_stats<F: Field, R: Rng + ?Sized>(
    f: &Poly<F>,
    factor_degree: usize,
    rng: &mut R,
) -> Result<(Vec<Poly<F>>, EdfStats)> {
    if !f.is_monic() {
        return Err(Error::invalid("equal-degree factorization needs a monic input"));
    }
    let n = f.degree().expect("monic");
    let m = factor_degree;
    if n == 0 || m == 0 || !n.is_multiple_of(m) {
        return Err(Error::invalid(format!(
            "degree {n} is not a positive multiple of factor degree {m}"
        )));
    }
    if !frobenius_degree_check(f, m)? {
        return Err(Error::invalid(format!(
            "input is not a squarefree product of degree-{m} irreducibles"
        )));
    }

    let field = f.field();
    let size = field.size();
    let splitter = if size.bit(0) {
        Splitter::Odd {
            exponent: (num_traits::pow(size, m) - 1u32) >> 1,
        }
    } else {
        Splitter::Trace {
            squarings: m * field.degree(),
        }
    };

    let mut stats = EdfStats::default();
    let mut pending = vec![f.clone()];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        if g.degree() == Some(m) {
            done.push(g);
            continue;
        }
        let mut found = None;
        for _ in 0..MAX_SPLIT_ATTEMPTS {
            stats.attempts += 1;
            if let Some(d) = splitter.try_split(&g, rng)? {
                found = Some(d);
                break;
            }
        }
        let d = found.ok_or_else(|| {
            Error::verification(format!("no split of {g} after {MAX_SPLIT_ATTEMPTS} attempts"))
        })?;
        let (quot, rem) = g.div_rem(&d)?;
        debug_assert!(rem.is_zero());
        stats.splits += 1;
        pending.push(d);
        pending.push(quot);
    }

    let product = done.iter().fold(Poly::one(field), |acc, g| &acc * g);
    if &product != f {
        return Err(Error::verification("factor product differs from the input"));
    }
    for g in &done {
        if g.degree() != Some(m) || !rabin_is_irreducible(g)? {
            return Err(Error::verification(format!("factor {g} is not irreducible of degree {m}")));
        }
    }
    done.sort_by(|a, b| a.lex_cmp(b));
    Ok((done, stats))
}

enum Splitter {
    Odd { exponent: Natural },
    Trace { squarings: usize },
}

impl Splitter {
    /// One random attempt; returns a proper monic factor on success.
    fn try_split<F: Field, R: Rng + ?Sized>(&self, g: &Poly<F>, rng: &mut R) -> Result<Option<Poly<F>>> {
        let field = g.field();
        let n = g.degree().expect("nonzero");
        let w = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if w.degree().unwrap_or(0) == 0 {
            return Ok(None);
        }
        let proper = |d: Poly<F>| {
            let deg = d.degree().unwrap_or(0);
            (deg > 0 && deg < n).then_some(d)
        };
        if let Some(d) = proper(gcd(&w, g)?) {
            return Ok(Some(d));
        }
        let t = match self {
            Splitter::Odd { exponent } => &powmod(&w, exponent, g)? - &Poly::one(field),
            Splitter::Trace { squarings } => {
                let mut acc = w.clone();
                let mut cur = w;
                for _ in 1..*squarings {
                    cur = cur.mul_mod(&cur, g)?;
                    acc = &acc + &cur;
                }
                acc
            }
        };
        if t.is_zero() {
            return Ok(None);
        }
        Ok(proper(gcd(&t, g)?))
    }
}

/// All `q` roots of `X^q - alpha`, ascending by [`Field::lex_cmp`].
///
/// Requires `X^q - alpha` to split into distinct linear factors, i.e.
/// `alpha` a nonzero `q`-th power and `q | Q - 1`.
pub fn binomial_roots<F: Field, R: Rng + ?Sized>(
    field: &F,
    q: usize,
    alpha: &F::Elem,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    let f = Poly::binomial(field, q, alpha);
    let factors = edf(&f, 1, rng).map_err(|e| match e {
        Error::InvalidInput(_) => Error::invalid(format!(
            "X^{q} - {} does not split into distinct linear factors",
            field.format_elem(alpha)
        )),
        other => other,
    })?;
    let mut roots: Vec<F::Elem> = factors.iter().map(|g| field.neg(&g.coeff(0))).collect();
    if roots.len() != q {
        return Err(Error::verification(format!("found {} of {q} roots", roots.len())));
    }
    roots.sort_by(|a, b| field.lex_cmp(a, b));
    Ok(roots)
}
