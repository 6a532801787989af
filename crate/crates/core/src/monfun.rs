//! Monoidal functors `(F, φ, F₀)` between skew monoidal categories.
//!
//! The source is `(C, ⊗', I, α', λ', ρ')`, the target `(D, ⊗, J, α, λ, ρ)`,
//! `φ_{X,Y}: FX ⊗ FY -> F(X ⊗' Y)` and `F₀: J -> F(I)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{
    is_natural, FinCatError, FinFunctor, Leg, Mor, MorphismFamily, Naturality, NaturalityScope, Obj,
};
use crate::skewstruct::{TensorStructure, UnitCandidate};
use crate::units::{canonical_morphism, transport_unit, UnitsError};
use crate::PropositionViolated;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonFunError {
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Units(#[from] UnitsError),
    #[error(transparent)]
    Proposition(#[from] PropositionViolated),
    #[error("preconditions unmet: {}", .0.join(", "))]
    PreconditionUnmet(Vec<String>),
}

/// A structure together with a chosen unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMonoidalCategory {
    pub structure: TensorStructure,
    pub unit: UnitCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidalFunctorData {
    pub functor: FinFunctor,
    /// Indexed by pairs of source objects.
    pub phi: MorphismFamily,
    /// `F₀: J -> F(I)`.
    pub unit_map: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidalReport {
    pub phi_natural: Naturality,
    pub assoc_ok: bool,
    /// First triple where the associativity hexagon fails.
    pub assoc_witness: Option<Vec<Obj>>,
    pub unit_ok: bool,
    /// First object where the left unit square fails.
    pub left_unit_witness: Option<Obj>,
    /// First object where the right unit square fails.
    pub right_unit_witness: Option<Obj>,
}

impl MonoidalReport {
    pub fn holds(&self) -> bool {
        self.phi_natural.holds() && self.assoc_ok && self.unit_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub lax: bool,
    pub normal: bool,
    pub strong: bool,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        if self.strong {
            "strong"
        } else if self.normal {
            "normal"
        } else {
            "lax"
        }
    }
}

fn phi_legs<'a>(src: &'a TensorStructure, dst: &'a TensorStructure, f: &'a FinFunctor) -> (Leg<'a>, Leg<'a>) {
    let left = Leg::new(
        2,
        move |xs| dst.tensor(f.object(xs[0]), f.object(xs[1])),
        move |fs| dst.tensor_mor(f.morphism(fs[0]), f.morphism(fs[1])),
    );
    let right = Leg::new(
        2,
        move |xs| src.tensor(xs[0], xs[1]).map(|o| f.object(o)),
        move |fs| src.tensor_mor(fs[0], fs[1]).map(|m| f.morphism(m)),
    );
    (left, right)
}

/// Naturality of `φ` and the first triple violating the associativity hexagon.
pub fn check_phi(
    src: &TensorStructure,
    dst: &TensorStructure,
    functor: &FinFunctor,
    phi: &MorphismFamily,
) -> Result<(Naturality, Option<Vec<Obj>>), MonFunError> {
    let (left, right) = phi_legs(src, dst, functor);
    let scope = match src.generators() {
        Some(g) => NaturalityScope::Generators(g),
        None => NaturalityScope::AllMorphisms,
    };
    let natural = is_natural(src.base(), dst.base(), phi, &left, &right, scope)?;
    let d = dst.base();
    let n = src.object_count();
    let hexagon = |x: Obj, y: Obj, z: Obj| -> Option<bool> {
        let (fx, fy, fz) = (functor.object(x), functor.object(y), functor.object(z));
        let xy = src.tensor(x, y)?;
        let yz = src.tensor(y, z)?;
        let top = d.seq(&[
            dst.tensor_mor(phi.get(&[x, y])?, d.identity(fz))?,
            phi.get(&[xy, z])?,
            functor.morphism(src.alpha(x, y, z)?),
        ])?;
        let bottom = d.seq(&[
            dst.alpha(fx, fy, fz)?,
            dst.tensor_mor(d.identity(fx), phi.get(&[y, z])?)?,
            phi.get(&[x, yz])?,
        ])?;
        Some(top == bottom)
    };
    let witness = crate::fincat::index_tuples(n, 3)
        .find(|t| hexagon(t[0], t[1], t[2]) == Some(false));
    Ok((natural, witness))
}

/// Left and right unit squares at `x` for a candidate `F₀`.
fn unit_squares(
    src: &SkewMonoidalCategory,
    dst: &SkewMonoidalCategory,
    functor: &FinFunctor,
    phi: &MorphismFamily,
    f0: Mor,
    x: Obj,
) -> (Option<bool>, Option<bool>) {
    let d = dst.structure.base();
    let t = &dst.structure;
    let i = src.unit.unit();
    let fx = functor.object(x);
    let left = (|| {
        let lhs = dst.unit.lambda(fx)?;
        let rhs = d.seq(&[
            t.tensor_mor(f0, d.identity(fx))?,
            phi.get(&[i, x])?,
            functor.morphism(src.unit.lambda(x)?),
        ])?;
        Some(lhs == rhs)
    })();
    let right = (|| {
        let lhs = functor.morphism(src.unit.rho(x)?);
        let rhs = d.seq(&[
            dst.unit.rho(fx)?,
            t.tensor_mor(d.identity(fx), f0)?,
            phi.get(&[x, i])?,
        ])?;
        Some(lhs == rhs)
    })();
    (left, right)
}

fn check_unit_map_shape(dst: &SkewMonoidalCategory, functor: &FinFunctor, src_unit: Obj, f0: Mor) -> Result<(), MonFunError> {
    let d = dst.structure.base();
    if f0 >= d.morphism_count() {
        return Err(FinCatError::UnknownMorphism(f0).into());
    }
    let expected = (dst.unit.unit(), functor.object(src_unit));
    let found = (d.src(f0), d.dst(f0));
    if expected != found {
        return Err(FinCatError::ShapeMismatch {
            index: vec![],
            expected: Some(expected),
            found: Some(found),
        }
        .into());
    }
    Ok(())
}

pub fn check_monoidal_functor(
    src: &SkewMonoidalCategory,
    dst: &SkewMonoidalCategory,
    data: &MonoidalFunctorData,
) -> Result<MonoidalReport, MonFunError> {
    check_unit_map_shape(dst, &data.functor, src.unit.unit(), data.unit_map)?;
    let (phi_natural, assoc_witness) = check_phi(&src.structure, &dst.structure, &data.functor, &data.phi)?;
    let mut left_unit_witness = None;
    let mut right_unit_witness = None;
    for x in src.structure.base().objects() {
        let (l, r) = unit_squares(src, dst, &data.functor, &data.phi, data.unit_map, x);
        if l == Some(false) && left_unit_witness.is_none() {
            left_unit_witness = Some(x);
        }
        if r == Some(false) && right_unit_witness.is_none() {
            right_unit_witness = Some(x);
        }
    }
    Ok(MonoidalReport {
        phi_natural,
        assoc_ok: assoc_witness.is_none(),
        assoc_witness,
        unit_ok: left_unit_witness.is_none() && right_unit_witness.is_none(),
        left_unit_witness,
        right_unit_witness,
    })
}

/// Every `F₀ ∈ hom(J, F(I))` satisfying both unit squares. At most one can exist.
pub fn enumerate_unit_maps(
    src: &SkewMonoidalCategory,
    dst: &SkewMonoidalCategory,
    functor: &FinFunctor,
    phi: &MorphismFamily,
) -> Result<Vec<Mor>, MonFunError> {
    let (natural, witness) = check_phi(&src.structure, &dst.structure, functor, phi)?;
    let mut unmet = Vec::new();
    if !natural.holds() {
        unmet.push("φ natural".to_string());
    }
    if let Some(w) = witness {
        unmet.push(format!("associativity hexagon (fails at {w:?})"));
    }
    if !unmet.is_empty() {
        return Err(MonFunError::PreconditionUnmet(unmet));
    }
    let d = dst.structure.base();
    let fi = functor.object(src.unit.unit());
    let found: Vec<Mor> = d
        .hom(dst.unit.unit(), fi)
        .iter()
        .copied()
        .filter(|&f0| {
            src.structure.base().objects().all(|x| {
                let (l, r) = unit_squares(src, dst, functor, phi, f0, x);
                l != Some(false) && r != Some(false)
            })
        })
        .collect();
    if found.len() > 1 {
        return Err(PropositionViolated::new(
            "a monoidal functor has at most one unit map",
            format!("candidates {found:?} for functor {functor:?}"),
        )
        .into());
    }
    Ok(found)
}

/// Lax always; normal when `F₀` is invertible; strong when every `φ` is too.
pub fn classify(
    src: &SkewMonoidalCategory,
    dst: &SkewMonoidalCategory,
    data: &MonoidalFunctorData,
) -> Result<Classification, MonFunError> {
    let report = check_monoidal_functor(src, dst, data)?;
    if !report.holds() {
        return Err(MonFunError::PreconditionUnmet(vec![format!(
            "monoidal functor axioms ({report:?})"
        )]));
    }
    let d = dst.structure.base();
    let normal = d.is_iso(data.unit_map);
    let phi_iso = data.phi.components().iter().flatten().all(|&m| d.is_iso(m));
    Ok(Classification {
        lax: true,
        normal,
        strong: normal && phi_iso,
    })
}

/// With `F₀` invertible, `F(I)` carries the unit transported along `F₀⁻¹`;
/// the canonical morphism `J -> F(I)` between the two units must be `F₀`.
pub fn transported_unit_agreement(
    src: &SkewMonoidalCategory,
    dst: &SkewMonoidalCategory,
    data: &MonoidalFunctorData,
) -> Result<bool, MonFunError> {
    check_unit_map_shape(dst, &data.functor, src.unit.unit(), data.unit_map)?;
    let d = dst.structure.base();
    let f0 = data.unit_map;
    let inv = d
        .inverse(f0)
        .ok_or(UnitsError::NotAnIsomorphism { morphism: f0, inverse: f0 })?;
    let moved = transport_unit(&dst.structure, &dst.unit, inv, f0)?;
    let phi = canonical_morphism(&dst.structure, &dst.unit, &moved)?;
    if phi != f0 {
        return Err(PropositionViolated::new(
            "the canonical morphism from J to the transported unit F(I) is F0",
            format!("canonical {phi}, F0 {f0}"),
        )
        .into());
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::skewstruct::{constant_tensor, strict_commutative_monoid};

    fn smc((structure, unit): (TensorStructure, UnitCandidate)) -> SkewMonoidalCategory {
        SkewMonoidalCategory { structure, unit }
    }

    fn identity_data(s: &SkewMonoidalCategory) -> MonoidalFunctorData {
        let c = s.structure.base();
        let n = c.object_count();
        MonoidalFunctorData {
            functor: FinFunctor::identity(c),
            phi: MorphismFamily::tabulate(2, n, |t| s.structure.tensor(t[0], t[1]).map(|o| c.identity(o))),
            unit_map: c.identity(s.unit.unit()),
        }
    }

    #[test]
    fn identity_on_terminal_is_strong() {
        let t = smc(strict_commutative_monoid(FinCategory::terminal()).unwrap());
        let data = identity_data(&t);
        assert!(check_monoidal_functor(&t, &t, &data).unwrap().holds());
        assert_eq!(enumerate_unit_maps(&t, &t, &data.functor, &data.phi).unwrap(), vec![0]);
        assert!(classify(&t, &t, &data).unwrap().strong);
        assert!(transported_unit_agreement(&t, &t, &data).unwrap());
    }

    #[test]
    fn terminal_into_codiscrete() {
        let t = smc(strict_commutative_monoid(FinCategory::terminal()).unwrap());
        let base = FinCategory::codiscrete(2);
        let s = constant_tensor(base.clone(), 0, |_, _, _| base.identity(0)).unwrap();
        // the tensor is constant at 0, so λ_X: 0 -> X and ρ_X: X -> 0 for either unit
        let u = UnitCandidate::new(&s, 1, vec![Some(0), Some(1)], vec![Some(0), Some(2)]).unwrap();
        let d = SkewMonoidalCategory { structure: s, unit: u };
        let functor = FinFunctor::new(t.structure.base(), d.structure.base(), vec![0], vec![0]).unwrap();
        let phi = MorphismFamily::total(2, 1, vec![0]).unwrap();
        let maps = enumerate_unit_maps(&t, &d, &functor, &phi).unwrap();
        assert_eq!(maps, vec![2]);
        let data = MonoidalFunctorData {
            functor,
            phi,
            unit_map: maps[0],
        };
        assert!(classify(&t, &d, &data).unwrap().strong);
        assert!(transported_unit_agreement(&t, &d, &data).unwrap());
    }

    #[test]
    fn bz2_twist_is_strong_and_agrees() {
        let b = smc(strict_commutative_monoid(FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()).unwrap());
        let data = MonoidalFunctorData {
            functor: FinFunctor::identity(b.structure.base()),
            phi: MorphismFamily::total(2, 1, vec![1]).unwrap(),
            unit_map: 1,
        };
        assert!(check_monoidal_functor(&b, &b, &data).unwrap().holds());
        assert_eq!(enumerate_unit_maps(&b, &b, &data.functor, &data.phi).unwrap(), vec![1]);
        assert!(classify(&b, &b, &data).unwrap().strong);
        assert!(transported_unit_agreement(&b, &b, &data).unwrap());
    }

    #[test]
    fn wrong_unit_map_fails_unit_squares() {
        let b = smc(strict_commutative_monoid(FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()).unwrap());
        let data = MonoidalFunctorData {
            functor: FinFunctor::identity(b.structure.base()),
            phi: MorphismFamily::total(2, 1, vec![0]).unwrap(),
            unit_map: 1,
        };
        let r = check_monoidal_functor(&b, &b, &data).unwrap();
        assert!(r.assoc_ok);
        assert!(!r.unit_ok);
        assert_eq!(r.left_unit_witness, Some(0));
    }
}
