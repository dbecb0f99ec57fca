//! Named construction methods behind a common interface.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::construct::{construct_irreducible_ext, construct_irreducible_fp, random_irreducible};
use crate::error::{Error, Result};
use crate::extfield::ExtField;
use crate::field::PrimeField;
use crate::modmath::{with_prime_field, PrimeFieldVisitor, PrimeModulus};
use crate::polyring::Poly;
use crate::SeededRng;

/// What to build: a monic irreducible of degree `d` over `F_{p^k}`, with
/// `F_{p^k}` given by `modulus` (required iff `k > 1`, see
/// [`resolve_modulus`]).
#[derive(Debug, Clone)]
pub struct Request {
    pub p: PrimeModulus,
    pub k: usize,
    pub d: usize,
    pub modulus: Option<String>,
}

/// Result of one strategy run, in polynomial text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub poly: String,
    /// Candidates tested (1 for the canonical pipeline).
    pub draws: usize,
}

pub trait Constructor: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Whether the output is independent of the generator.
    fn canonical(&self) -> bool;
    fn construct(&self, req: &Request, rng: &mut SeededRng) -> Result<Construction>;
}

/// Constructors by name, iterated in name order.
#[derive(Clone, Default)]
pub struct Registry {
    entries: BTreeMap<&'static str, Arc<dyn Constructor>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `canonical` and `random`.
    pub fn builtin() -> Self {
        let mut r = Self::new();
        r.register(Arc::new(Canonical));
        r.register(Arc::new(RandomSearch));
        r
    }

    pub fn register(&mut self, c: Arc<dyn Constructor>) {
        self.entries.insert(c.name(), c);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Constructor>> {
        self.entries.get(name).cloned().ok_or_else(|| {
            Error::invalid(format!(
                "unknown method {name:?}; known: {}",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Constructor>> + '_ {
        self.entries.values()
    }
}

/// Text of the `F_{p^k}` modulus to use: the given one after validation
/// (monic, degree `k`, irreducible), or the canonical degree-`k`
/// irreducible over `F_p`. `None` for `k = 1`.
pub fn resolve_modulus(
    p: &PrimeModulus,
    k: usize,
    given: Option<&str>,
    rng: &mut SeededRng,
) -> Result<Option<String>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k == 1 {
        return match given {
            Some(_) => Err(Error::invalid("a modulus is only accepted with k > 1")),
            None => Ok(None),
        };
    }
    with_prime_field(p, ResolveModulus { k, given, rng }).map(Some)
}

struct ResolveModulus<'a> {
    k: usize,
    given: Option<&'a str>,
    rng: &'a mut SeededRng,
}

impl PrimeFieldVisitor for ResolveModulus<'_> {
    type Output = Result<String>;

    fn visit<P: PrimeField>(self, prime: P) -> Result<String> {
        let h = match self.given {
            Some(text) => {
                let h = Poly::parse_text(&prime, text)?;
                if h.degree() != Some(self.k) || !h.is_monic() {
                    return Err(Error::invalid(format!("modulus must be monic of degree {}", self.k)));
                }
                ExtField::new(h.clone())?;
                h
            }
            None => construct_irreducible_fp(&prime, self.k, self.rng)?,
        };
        Ok(h.to_text())
    }
}

fn ext_context<P: PrimeField>(prime: &P, req: &Request) -> Result<Option<ExtField<P>>> {
    match (&req.modulus, req.k) {
        (None, 1) => Ok(None),
        (Some(text), k) if k > 1 => {
            let h = Poly::parse_text(prime, text)?;
            if h.degree() != Some(k) || !h.is_monic() {
                return Err(Error::invalid(format!("modulus must be monic of degree {k}")));
            }
            Ok(Some(ExtField::new(h)?))
        }
        _ => Err(Error::invalid("a modulus must be given exactly when k > 1")),
    }
}

/// The pseudo-deterministic pipeline.
pub struct Canonical;

impl Constructor for Canonical {
    fn name(&self) -> &'static str {
        "canonical"
    }

    fn summary(&self) -> &'static str {
        "canonical irreducible, identical for every seed"
    }

    fn canonical(&self) -> bool {
        true
    }

    fn construct(&self, req: &Request, rng: &mut SeededRng) -> Result<Construction> {
        check_degree(req)?;
        struct Run<'a>(&'a Request, &'a mut SeededRng);
        impl PrimeFieldVisitor for Run<'_> {
            type Output = Result<String>;
            fn visit<P: PrimeField>(self, prime: P) -> Result<String> {
                let Run(req, rng) = self;
                Ok(match ext_context(&prime, req)? {
                    None => construct_irreducible_fp(&prime, req.d, rng)?.to_text(),
                    Some(ctx) => construct_irreducible_ext(&ctx, req.d, rng)?.to_text(),
                })
            }
        }
        let poly = with_prime_field(&req.p, Run(req, rng))?;
        Ok(Construction { poly, draws: 1 })
    }
}

/// Random monic polynomials until one is irreducible.
pub struct RandomSearch;

impl Constructor for RandomSearch {
    fn name(&self) -> &'static str {
        "random"
    }

    fn summary(&self) -> &'static str {
        "trial and error baseline, output depends on the seed"
    }

    fn canonical(&self) -> bool {
        false
    }

    fn construct(&self, req: &Request, rng: &mut SeededRng) -> Result<Construction> {
        check_degree(req)?;
        struct Run<'a>(&'a Request, &'a mut SeededRng);
        impl PrimeFieldVisitor for Run<'_> {
            type Output = Result<(String, usize)>;
            fn visit<P: PrimeField>(self, prime: P) -> Result<(String, usize)> {
                let Run(req, rng) = self;
                Ok(match ext_context(&prime, req)? {
                    None => {
                        let (f, n) = random_irreducible(&prime, req.d, rng)?;
                        (f.to_text(), n)
                    }
                    Some(ctx) => {
                        let (f, n) = random_irreducible(&ctx, req.d, rng)?;
                        (f.to_text(), n)
                    }
                })
            }
        }
        let (poly, draws) = with_prime_field(&req.p, Run(req, rng))?;
        Ok(Construction { poly, draws })
    }
}

fn check_degree(req: &Request) -> Result<()> {
    if req.d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn req(p: u64, k: usize, d: usize, modulus: Option<&str>) -> Request {
        Request {
            p: PrimeModulus::from_u64(p).unwrap(),
            k,
            d,
            modulus: modulus.map(str::to_string),
        }
    }

    #[test]
    fn registry_lookup() {
        let r = Registry::builtin();
        assert_eq!(r.names().collect::<Vec<_>>(), vec!["canonical", "random"]);
        assert!(r.get("canonical").unwrap().canonical());
        assert!(!r.get("random").unwrap().canonical());
        assert!(r.get("nope").is_err());
    }

    #[test]
    fn canonical_runs() {
        let r = Registry::builtin();
        let c = r.get("canonical").unwrap();
        let mut rng = SeededRng::seed_from_u64(0);
        assert_eq!(c.construct(&req(73, 1, 2, None), &mut rng).unwrap().poly, "63 0 1");
        assert_eq!(
            c.construct(&req(2, 2, 1, Some("1 1 1")), &mut rng).unwrap().poly,
            "[0 1] [1 0]"
        );
        assert!(c.construct(&req(2, 2, 1, None), &mut rng).is_err());
        assert!(c.construct(&req(2, 1, 0, None), &mut rng).is_err());
    }

    #[test]
    fn modulus_resolution() {
        let mut rng = SeededRng::seed_from_u64(0);
        let p2 = PrimeModulus::from_u64(2).unwrap();
        assert_eq!(resolve_modulus(&p2, 1, None, &mut rng).unwrap(), None);
        assert!(resolve_modulus(&p2, 1, Some("1 1"), &mut rng).is_err());
        assert_eq!(resolve_modulus(&p2, 2, None, &mut rng).unwrap().as_deref(), Some("1 1 1"));
        assert!(resolve_modulus(&p2, 2, Some("1 0 1"), &mut rng).is_err());
        assert!(resolve_modulus(&p2, 3, Some("1 1 1"), &mut rng).is_err());
        assert_eq!(
            resolve_modulus(&p2, 3, Some("1 1 0 1"), &mut rng).unwrap().as_deref(),
            Some("1 1 0 1")
        );
    }

    #[test]
    fn random_is_irreducible() {
        let r = Registry::builtin();
        let c = r.get("random").unwrap();
        let mut rng = SeededRng::seed_from_u64(5);
        let out = c.construct(&req(2, 1, 2, None), &mut rng).unwrap();
        assert_eq!(out.poly, "1 1 1");
        assert!(out.draws >= 1);
    }
}
