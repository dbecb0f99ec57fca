//! Serializable construction results.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extfield::ExtField;
use crate::factorize::rabin_is_irreducible;
use crate::field::PrimeField;
use crate::modmath::{parse_natural, with_prime_field, PrimeFieldVisitor, PrimeModulus};
use crate::polyring::Poly;

/// Bumped whenever the lex order or the combination order changes.
pub const FORMAT_VERSION: &str = "irred-v1";

/// One `(p, k, d)` result. Serialized as a single JSON line with the
/// fields in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    /// Decimal string, since `p` may exceed 64 bits.
    pub p: String,
    pub k: u64,
    pub d: u64,
    /// Representation of `F_{p^k}`; `None` when `k = 1`.
    pub modulus: Option<String>,
    pub poly: String,
    pub verified: bool,
    /// Top-level pipeline runs behind this record.
    pub seeds_consumed: u64,
    pub version: String,
}

impl ConstructionRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::parse(format!("bad record: {e}")))
    }

    /// Whether the record answers the query `(p, k, d, modulus)` under the
    /// current format version.
    pub fn matches(&self, p: &str, k: u64, d: u64, modulus: Option<&str>) -> bool {
        self.p == p && self.k == k && self.d == d && self.modulus.as_deref() == modulus && self.version == FORMAT_VERSION
    }

    /// Re-parses the record and runs Rabin's test on `poly` over the stated
    /// field. Also checks shape: monic, degree `d`, modulus present iff
    /// `k > 1`.
    pub fn check(&self) -> Result<()> {
        let p = PrimeModulus::new(parse_natural(&self.p)?)?;
        with_prime_field(&p, Checker(self))
    }
}

struct Checker<'a>(&'a ConstructionRecord);

impl PrimeFieldVisitor for Checker<'_> {
    type Output = Result<()>;

    fn visit<P: PrimeField>(self, prime: P) -> Result<()> {
        let rec = self.0;
        match (&rec.modulus, rec.k) {
            (None, 1) => {
                let f = Poly::parse_text(&prime, &rec.poly)?;
                check_poly(&f, rec.d)
            }
            (Some(m), k) if k > 1 => {
                let h = Poly::parse_text(&prime, m)?;
                if h.degree() != Some(k as usize) || !h.is_monic() {
                    return Err(Error::invalid("modulus is not monic of degree k"));
                }
                let ctx = ExtField::new(h)?;
                let f = Poly::parse_text(&ctx, &rec.poly)?;
                check_poly(&f, rec.d)
            }
            _ => Err(Error::invalid("modulus must be present exactly when k > 1")),
        }
    }
}

fn check_poly<F: crate::field::Field>(f: &Poly<F>, d: u64) -> Result<()> {
    if f.degree() != Some(d as usize) || !f.is_monic() {
        return Err(Error::verification(format!("record poly is not monic of degree {d}")));
    }
    if !rabin_is_irreducible(f)? {
        return Err(Error::verification("record poly is reducible"));
    }
    Ok(())
}
