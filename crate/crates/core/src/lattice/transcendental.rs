use num_traits::{Signed, ToPrimitive, Zero};

use super::{disc_forms_isomorphic, enumerate_even_forms, BinaryQuadraticForm, Lattice};
use crate::error::{Error, Result};

/// Rank of the Néron–Severi lattice of a singular K3 surface.
const SINGULAR_PICARD: usize = 20;

/// Even positive-definite binary forms whose discriminant form is isomorphic
/// to the negated discriminant form of `ns`. Every match is returned.
pub fn transcendental_candidates(ns: &Lattice) -> Result<Vec<BinaryQuadraticForm>> {
    if ns.rank() != SINGULAR_PICARD {
        return Err(Error::WrongRank { expected: SINGULAR_PICARD, found: ns.rank() });
    }
    let det = ns.det();
    if !det.is_negative() {
        return Err(Error::WrongDeterminantSign(det.to_string()));
    }
    let target = ns.discriminant_form()?.negate();
    let d = det.abs().to_u64().ok_or_else(|| Error::Overflow(det.to_string()))?;
    let mut out = Vec::new();
    for f in enumerate_even_forms(d) {
        if disc_forms_isomorphic(&f.to_lattice()?.discriminant_form()?, &target)? {
            out.push(f);
        }
    }
    if out.is_empty() {
        return Err(Error::NoCandidates);
    }
    Ok(out)
}

/// Outcome of comparing a Néron–Severi lattice with a proposed transcendental
/// lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranscendentalCheck {
    Match,
    DeterminantMismatch { ns: String, t: String },
    DiscFormMismatch,
}

impl TranscendentalCheck {
    pub fn is_match(&self) -> bool {
        matches!(self, TranscendentalCheck::Match)
    }
}

/// `T` is compatible with `NS` when `|det|` agree and `q_T ≅ -q_NS`.
pub fn check_transcendental(ns: &Lattice, t: &Lattice) -> Result<TranscendentalCheck> {
    if ns.rank() + t.rank() != 22 {
        return Err(Error::DimensionMismatch(format!(
            "ranks {} + {} do not sum to 22",
            ns.rank(),
            t.rank()
        )));
    }
    let (dn, dt) = (ns.det(), t.det());
    if dn.is_zero() || dn.abs() != dt.abs() {
        return Ok(TranscendentalCheck::DeterminantMismatch { ns: dn.to_string(), t: dt.to_string() });
    }
    let lhs = ns.discriminant_form()?.negate();
    if disc_forms_isomorphic(&lhs, &t.discriminant_form()?)? {
        Ok(TranscendentalCheck::Match)
    } else {
        Ok(TranscendentalCheck::DiscFormMismatch)
    }
}
