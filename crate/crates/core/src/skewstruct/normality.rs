use serde::{Deserialize, Serialize};

use super::{check_all, AxiomMask, StructureError, TensorStructure, UnitCandidate};
use crate::PropositionViolated;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalityFlags {
    /// `λ_I` is invertible.
    pub weakly_normal: bool,
    /// Every `λ_X` is invertible.
    pub left_normal: bool,
    /// Every `ρ_X` is invertible.
    pub right_normal: bool,
    pub normal: bool,
}

/// Classifies a verified unit.
///
/// Weak normality is decided twice, once by inverse search on `λ_I` and once
/// by testing `ρ_I ∘ λ_I = 1`; disagreement is reported as an error.
pub fn normality_class(s: &TensorStructure, u: &UnitCandidate) -> Result<NormalityFlags, StructureError> {
    let report = check_all(s, Some(u), AxiomMask::UNIT);
    if !report.all_pass() {
        return Err(StructureError::NotAUnit {
            failing: report.failing(),
        });
    }
    let c = s.base();
    let i = u.unit();
    let (weak_by_inverse, weak_by_retraction) = match (u.lambda(i), u.rho(i), s.tensor(i, i)) {
        (Some(l), Some(r), Some(ii)) => (c.is_iso(l), c.seq(&[l, r]) == Some(c.identity(ii))),
        _ => (false, false),
    };
    if weak_by_inverse != weak_by_retraction {
        return Err(PropositionViolated::new(
            "λ_I is invertible exactly when ρ_I ∘ λ_I = 1",
            format!(
                "unit {i}: inverse search says {weak_by_inverse}, retraction test says {weak_by_retraction}"
            ),
        )
        .into());
    }
    let all_iso = |f: &dyn Fn(usize) -> Option<usize>| c.objects().filter_map(f).all(|m| c.is_iso(m));
    let left_normal = all_iso(&|x| u.lambda(x));
    let right_normal = all_iso(&|x| u.rho(x));
    Ok(NormalityFlags {
        weakly_normal: weak_by_inverse,
        left_normal,
        right_normal,
        normal: left_normal && right_normal,
    })
}
