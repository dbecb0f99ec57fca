//! Canonical irreducible polynomials.
//!
//! Degree `d` is split into prime powers `q^e`. For `q != p` a root of a
//! binomial over the field of `q`-th roots of unity is traced down to the
//! right subfield; for `q = p` Artin-Schreier extensions are stacked. The
//! pieces are combined with composed sums.

mod baseline;
mod composed;
mod pipeline;
mod prime_power;
mod qnr;
mod qth;

pub use baseline::random_irreducible;
pub use composed::composed_sum;
pub use pipeline::{
    construct_irreducible_ext, construct_irreducible_fp, construct_irreducible_fp_traced,
    PrimePowerPart, TracedConstruction,
};
pub use prime_power::{artin_schreier_irreducible, prime_power_irreducible, trace_sweep_count};
pub use qnr::{canonical_nonresidue, canonical_qnr, qth_residue_test, CanonicalQnr, NonResidueSearch};
pub use qth::{canonical_qth_data, QthData};

use crate::error::{Error, Result};

/// A precondition failure on an internally built object is a realization
/// bug, not bad user input.
fn internal<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(msg) => Error::Verification(msg),
        other => other,
    })
}
