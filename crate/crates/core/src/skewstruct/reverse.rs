//! Passing to the opposite category with the tensor reversed.
//!
//! `X ⊗' Y = Y ⊗ X`, `α'_{X,Y,Z} = α_{Z,Y,X}`, `λ' = ρ`, `ρ' = λ`. Morphism
//! ids are shared with the opposite category, so components carry over
//! unchanged.

use super::{Axiom, TensorStructure, UnitCandidate};
use crate::fincat::{MorphismFamily, Obj};

pub fn reverse_structure(
    s: &TensorStructure,
    u: Option<&UnitCandidate>,
) -> (TensorStructure, Option<UnitCandidate>) {
    let base = s.base().opposite();
    let (n, m) = (base.object_count(), base.morphism_count());
    let ot = s.raw_obj_tensor();
    let mt = s.raw_mor_tensor();
    let obj_tensor = (0..n * n).map(|k| ot[(k % n) * n + k / n]).collect();
    let mor_tensor = (0..m * m).map(|k| mt[(k % m) * m + k / m]).collect();
    let assoc = MorphismFamily::tabulate(3, n, |t| s.alpha(t[2], t[1], t[0]));
    let reversed = TensorStructure::from_parts_unchecked(
        base,
        obj_tensor,
        mor_tensor,
        assoc,
        s.generators().map(<[_]>::to_vec),
    );
    let unit = u.map(|u| {
        UnitCandidate::from_parts_unchecked(u.unit(), u.rho_family().clone(), u.lambda_family().clone())
    });
    (reversed, unit)
}

/// Where a failure witness of `axiom` lands after reversal, together with
/// the axiom it becomes.
pub fn reverse_witness(axiom: Axiom, witness: &[Obj]) -> (Axiom, Vec<Obj>) {
    let mirrored = match axiom {
        Axiom::LeftUnit => Axiom::RightUnit,
        Axiom::RightUnit => Axiom::LeftUnit,
        other => other,
    };
    (mirrored, witness.iter().rev().copied().collect())
}
