//! The category of units: enumeration of unit candidates by pruned search,
//! unit morphisms, and the checks that hold for every skew monoidal category
//! (uniqueness of unit morphisms, determination, transport, commutativity of
//! `End(I)`).
//!
//! Checks that can only fail through a bug raise [`PropositionViolated`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCatError, Mor, MorphismFamily, Obj};
use crate::skewstruct::{
    check_all, check_left_unit, check_mid_unit, check_pentagon, check_unit_unit, normality_class, Axiom,
    AxiomMask, StructureError, TensorStructure, UnitCandidate,
};
use crate::{Budget, PropositionViolated, SearchBudgetExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitsError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Budget(#[from] SearchBudgetExceeded),
    #[error(transparent)]
    Proposition(#[from] PropositionViolated),
    #[error("unit enumeration needs a total tensor; this structure is bounded")]
    BoundedStructure,
    #[error("morphism {morphism} is not inverse to {inverse}")]
    NotAnIsomorphism { morphism: Mor, inverse: Mor },
    #[error("preconditions unmet: {}", .0.join(", "))]
    PreconditionUnmet(Vec<String>),
}

/// Enumerated units with every unit morphism between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitsCategory {
    pub units: Vec<UnitCandidate>,
    /// `morphism_sets[a][b]` lists the unit morphisms from unit `a` to unit `b`.
    pub morphism_sets: Vec<Vec<Vec<Mor>>>,
}

/// Which constraint a partial assignment must satisfy once its objects are fixed.
#[derive(Debug, Clone, Copy)]
enum Constraint {
    /// Naturality square at a morphism.
    Square(Mor),
    /// The left or right unit axiom at a pair.
    Pair(Obj, Obj),
}

/// Depth-first search over one family, choosing a component per object in
/// id order and checking each constraint as soon as its objects are assigned.
struct FamilySearch<'a> {
    choices: Vec<&'a [Mor]>,
    fire_at: Vec<Vec<Constraint>>,
    holds: &'a (dyn Fn(&[Option<Mor>], Constraint) -> bool + Sync),
    budget: &'a Budget,
}

impl FamilySearch<'_> {
    fn run(&self) -> Result<Vec<Vec<Mor>>, SearchBudgetExceeded> {
        let mut partial = vec![None; self.choices.len()];
        let mut out = Vec::new();
        self.descend(0, &mut partial, &mut out)?;
        Ok(out)
    }

    fn descend(
        &self,
        k: usize,
        partial: &mut Vec<Option<Mor>>,
        out: &mut Vec<Vec<Mor>>,
    ) -> Result<(), SearchBudgetExceeded> {
        if k == partial.len() {
            out.push(partial.iter().map(|c| c.expect("assigned")).collect());
            return Ok(());
        }
        for &m in self.choices[k] {
            if !self.budget.charge(1) {
                return Err(self.budget.exceeded(out.len()));
            }
            partial[k] = Some(m);
            if self.fire_at[k].iter().all(|&c| (self.holds)(partial, c)) {
                self.descend(k + 1, partial, out)?;
            }
        }
        partial[k] = None;
        Ok(())
    }
}

fn square_morphisms(s: &TensorStructure) -> Vec<Mor> {
    match s.generators() {
        Some(g) => g.to_vec(),
        None => s.base().morphisms().collect(),
    }
}

/// All `λ` families for unit `i` that are natural and, if enabled, satisfy
/// the left unit axiom.
fn lambda_families(
    s: &TensorStructure,
    i: Obj,
    mask: AxiomMask,
    budget: &Budget,
) -> Result<Vec<Vec<Mor>>, SearchBudgetExceeded> {
    let c = s.base();
    let n = c.object_count();
    let ix = |x: Obj| s.tensor(i, x).expect("total tensor");
    let choices: Vec<&[Mor]> = (0..n).map(|x| c.hom(ix(x), x)).collect();
    let mut fire_at = vec![Vec::new(); n];
    for f in square_morphisms(s) {
        fire_at[c.src(f).max(c.dst(f))].push(Constraint::Square(f));
    }
    if mask.contains(Axiom::LeftUnit) {
        for x in 0..n {
            for y in 0..n {
                let xy = s.tensor(x, y).expect("total tensor");
                fire_at[x.max(xy)].push(Constraint::Pair(x, y));
            }
        }
    }
    let holds = move |lam: &[Option<Mor>], con: Constraint| -> bool {
        match con {
            Constraint::Square(f) => {
                let (x, y) = (c.src(f), c.dst(f));
                let lhs = c.compose(lam[y].unwrap(), s.tensor_mor(c.identity(i), f).unwrap());
                let rhs = c.compose(f, lam[x].unwrap());
                lhs == rhs
            }
            Constraint::Pair(x, y) => {
                let xy = s.tensor(x, y).unwrap();
                let lhs = c.compose(lam[xy].unwrap(), s.alpha(i, x, y).unwrap());
                let rhs = s.tensor_mor(lam[x].unwrap(), c.identity(y));
                lhs == rhs
            }
        }
    };
    FamilySearch {
        choices,
        fire_at,
        holds: &holds,
        budget,
    }
    .run()
}

/// All `ρ` families for unit `i` that are natural and, if enabled, satisfy
/// the right unit axiom.
fn rho_families(
    s: &TensorStructure,
    i: Obj,
    mask: AxiomMask,
    budget: &Budget,
) -> Result<Vec<Vec<Mor>>, SearchBudgetExceeded> {
    let c = s.base();
    let n = c.object_count();
    let xi = |x: Obj| s.tensor(x, i).expect("total tensor");
    let choices: Vec<&[Mor]> = (0..n).map(|x| c.hom(x, xi(x))).collect();
    let mut fire_at = vec![Vec::new(); n];
    for f in square_morphisms(s) {
        fire_at[c.src(f).max(c.dst(f))].push(Constraint::Square(f));
    }
    if mask.contains(Axiom::RightUnit) {
        for x in 0..n {
            for y in 0..n {
                let xy = s.tensor(x, y).expect("total tensor");
                fire_at[y.max(xy)].push(Constraint::Pair(x, y));
            }
        }
    }
    let holds = move |rho: &[Option<Mor>], con: Constraint| -> bool {
        match con {
            Constraint::Square(f) => {
                let (x, y) = (c.src(f), c.dst(f));
                let lhs = c.compose(s.tensor_mor(f, c.identity(i)).unwrap(), rho[x].unwrap());
                let rhs = c.compose(rho[y].unwrap(), f);
                lhs == rhs
            }
            Constraint::Pair(x, y) => {
                let xy = s.tensor(x, y).unwrap();
                let lhs = c.compose(s.alpha(x, y, i).unwrap(), rho[xy].unwrap());
                let rhs = s.tensor_mor(c.identity(x), rho[y].unwrap());
                lhs == rhs
            }
        }
    };
    FamilySearch {
        choices,
        fire_at,
        holds: &holds,
        budget,
    }
    .run()
}

fn units_at(s: &TensorStructure, i: Obj, mask: AxiomMask, budget: &Budget) -> Result<Vec<UnitCandidate>, SearchBudgetExceeded> {
    let n = s.object_count();
    let lambdas = lambda_families(s, i, mask, budget)?;
    if lambdas.is_empty() {
        return Ok(Vec::new());
    }
    let rhos = rho_families(s, i, mask, budget)?;
    let mut out = Vec::new();
    for lam in &lambdas {
        for rho in &rhos {
            if !budget.charge(1) {
                return Err(budget.exceeded(out.len()));
            }
            let u = UnitCandidate::from_parts_unchecked(
                i,
                MorphismFamily::total(1, n, lam.clone()).expect("one component per object"),
                MorphismFamily::total(1, n, rho.clone()).expect("one component per object"),
            );
            let mid = !mask.contains(Axiom::MidUnit) || check_mid_unit(s, &u).is_pass();
            let unit_unit = !mask.contains(Axiom::UnitUnit) || check_unit_unit(s, &u).is_pass();
            if mid && unit_unit {
                out.push(u);
            }
        }
    }
    Ok(out)
}

/// Every natural `(I, λ, ρ)` satisfying the unit axioms in `mask`, ordered by
/// unit object and then lexicographically by components.
///
/// When `mask` includes the pentagon and it fails, there are no units.
pub fn enumerate_units(s: &TensorStructure, mask: AxiomMask, budget: &Budget) -> Result<Vec<UnitCandidate>, UnitsError> {
    if s.is_bounded() {
        return Err(UnitsError::BoundedStructure);
    }
    if mask.contains(Axiom::Pentagon) && check_pentagon(s).is_fail() {
        return Ok(Vec::new());
    }
    let per_unit: Vec<Result<Vec<UnitCandidate>, SearchBudgetExceeded>> = s
        .base()
        .objects()
        .into_par_iter()
        .map(|i| units_at(s, i, mask, budget))
        .collect();
    let mut units = Vec::new();
    for r in per_unit {
        match r {
            Ok(us) => units.extend(us),
            Err(_) => return Err(budget.exceeded(units.len()).into()),
        }
    }
    Ok(units)
}

/// Both unit-morphism triangles: `λ'_X ∘ (f⊗1_X) = λ_X` and `(1_X⊗f) ∘ ρ_X = ρ'_X`.
pub fn is_unit_morphism(s: &TensorStructure, u: &UnitCandidate, v: &UnitCandidate, f: Mor) -> Result<bool, UnitsError> {
    let c = s.base();
    if f >= c.morphism_count() {
        return Err(FinCatError::UnknownMorphism(f).into());
    }
    if c.src(f) != u.unit() || c.dst(f) != v.unit() {
        return Err(FinCatError::ShapeMismatch {
            index: vec![],
            expected: Some((u.unit(), v.unit())),
            found: Some((c.src(f), c.dst(f))),
        }
        .into());
    }
    Ok(c.objects().all(|x| {
        let left = (|| {
            let lhs = c.seq(&[s.tensor_mor(f, c.identity(x))?, v.lambda(x)?])?;
            Some(lhs == u.lambda(x)?)
        })();
        let right = (|| {
            let lhs = c.seq(&[u.rho(x)?, s.tensor_mor(c.identity(x), f)?])?;
            Some(lhs == v.rho(x)?)
        })();
        left != Some(false) && right != Some(false)
    }))
}

/// `φ_{I,J} = λ_J ∘ ρ'_I`, checked to be a unit morphism.
///
/// `u` needs to satisfy the left unit axiom and `v` the mid and right ones.
pub fn canonical_morphism(s: &TensorStructure, u: &UnitCandidate, v: &UnitCandidate) -> Result<Mor, UnitsError> {
    let c = s.base();
    let (i, j) = (u.unit(), v.unit());
    let phi = v
        .rho(i)
        .zip(u.lambda(j))
        .and_then(|(r, l)| c.seq(&[r, l]))
        .ok_or(FinCatError::ShapeMismatch {
            index: vec![i, j],
            expected: Some((i, j)),
            found: None,
        })?;
    if !is_unit_morphism(s, u, v, phi)? {
        return Err(PropositionViolated::new(
            "the canonical composite is a unit morphism",
            format!("units at {i} and {j}, composite {phi}"),
        )
        .into());
    }
    Ok(phi)
}

/// Enumerates units and all unit morphisms between them, asserting that each
/// hom-set of units is the singleton `{φ}` and that the `φ` are mutually inverse.
pub fn build_units_category(s: &TensorStructure, mask: AxiomMask, budget: &Budget) -> Result<UnitsCategory, UnitsError> {
    let units = enumerate_units(s, mask, budget)?;
    units_category_of(s, units)
}

/// The same assertions as [`build_units_category`] for a given list of units.
pub fn units_category_of(s: &TensorStructure, units: Vec<UnitCandidate>) -> Result<UnitsCategory, UnitsError> {
    let c = s.base();
    let k = units.len();
    let mut morphism_sets = vec![vec![Vec::new(); k]; k];
    let mut phis = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let (u, v) = (&units[a], &units[b]);
            let mut found = Vec::new();
            for &f in c.hom(u.unit(), v.unit()) {
                if is_unit_morphism(s, u, v, f)? {
                    found.push(f);
                }
            }
            let phi = canonical_morphism(s, u, v)?;
            if found != [phi] {
                return Err(PropositionViolated::new(
                    "exactly one unit morphism between two units, equal to the canonical one",
                    format!("units #{a} -> #{b}: unit morphisms {found:?}, canonical {phi}; {u:?} {v:?}"),
                )
                .into());
            }
            morphism_sets[a][b] = found;
            phis[a][b] = phi;
        }
    }
    for a in 0..k {
        for b in 0..k {
            let back = c.seq(&[phis[a][b], phis[b][a]]);
            if back != Some(c.identity(units[a].unit())) {
                return Err(PropositionViolated::new(
                    "canonical morphisms between units are mutually inverse",
                    format!("units #{a}, #{b}: composite {back:?}"),
                )
                .into());
            }
        }
    }
    Ok(UnitsCategory { units, morphism_sets })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminationReport {
    /// Size of each `(I, λ)` group, in order of first appearance.
    pub by_lambda: Vec<usize>,
    /// Size of each `(I, ρ)` group, in order of first appearance.
    pub by_rho: Vec<usize>,
}

/// Groups units by `(I, λ)` and by `(I, ρ)`; each group must be a singleton.
pub fn determination_check(units: &[UnitCandidate]) -> Result<DeterminationReport, UnitsError> {
    fn groups<K: PartialEq>(keys: Vec<K>) -> Vec<usize> {
        let mut seen: Vec<(K, usize)> = Vec::new();
        for k in keys {
            match seen.iter_mut().find(|(s, _)| *s == k) {
                Some((_, n)) => *n += 1,
                None => seen.push((k, 1)),
            }
        }
        seen.into_iter().map(|(_, n)| n).collect()
    }
    let report = DeterminationReport {
        by_lambda: groups(units.iter().map(|u| (u.unit(), u.lambda_family())).collect()),
        by_rho: groups(units.iter().map(|u| (u.unit(), u.rho_family())).collect()),
    };
    if report.by_lambda.iter().chain(&report.by_rho).any(|&n| n != 1) {
        return Err(PropositionViolated::new(
            "λ determines ρ and ρ determines λ",
            format!("group sizes {report:?}"),
        )
        .into());
    }
    Ok(report)
}

/// Moves the unit `u` at `I` along an isomorphism `f: J -> I`:
/// `λ'_X = λ_X ∘ (f⊗1_X)`, `ρ'_X = (1_X⊗f⁻¹) ∘ ρ_X`.
pub fn transport_unit(s: &TensorStructure, u: &UnitCandidate, f: Mor, f_inv: Mor) -> Result<UnitCandidate, UnitsError> {
    let c = s.base();
    let i = u.unit();
    for g in [f, f_inv] {
        if g >= c.morphism_count() {
            return Err(FinCatError::UnknownMorphism(g).into());
        }
    }
    if c.dst(f) != i {
        return Err(FinCatError::ShapeMismatch {
            index: vec![],
            expected: Some((c.src(f), i)),
            found: Some((c.src(f), c.dst(f))),
        }
        .into());
    }
    let j = c.src(f);
    let inverse = c.compose(f_inv, f) == Some(c.identity(j)) && c.compose(f, f_inv) == Some(c.identity(i));
    if !inverse {
        return Err(UnitsError::NotAnIsomorphism { morphism: f, inverse: f_inv });
    }
    let lambda = c
        .objects()
        .map(|x| Some(c.seq(&[s.tensor_mor(f, c.identity(x))?, u.lambda(x)?])?))
        .collect::<Vec<_>>();
    let rho = c
        .objects()
        .map(|x| Some(c.seq(&[u.rho(x)?, s.tensor_mor(c.identity(x), f_inv)?])?))
        .collect::<Vec<_>>();
    let v = UnitCandidate::new(s, j, lambda, rho)?;
    let report = check_all(s, Some(&v), AxiomMask::UNIT);
    if !report.all_pass() {
        return Err(PropositionViolated::new(
            "a unit transported along an isomorphism is a unit",
            format!("transport of unit at {i} along {f}: {:?} fail", report.failing()),
        )
        .into());
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSquare {
    pub candidate: UnitCandidate,
    pub is_unit: bool,
    pub lambda_i_invertible: bool,
}

/// The candidate `(I⊗I, λ_X ∘ (λ_I⊗1_X), (1_X⊗ρ_I) ∘ ρ_X)`, whether it is a
/// unit, and whether `λ_I` is invertible; the last two must agree.
pub fn tensor_square_candidate(s: &TensorStructure, u: &UnitCandidate) -> Result<TensorSquare, UnitsError> {
    let c = s.base();
    let i = u.unit();
    let missing = || FinCatError::ShapeMismatch {
        index: vec![i],
        expected: None,
        found: None,
    };
    let ii = s.tensor(i, i).ok_or_else(missing)?;
    let li = u.lambda(i).ok_or_else(missing)?;
    let ri = u.rho(i).ok_or_else(missing)?;
    let lambda = c
        .objects()
        .map(|x| c.seq(&[s.tensor_mor(li, c.identity(x))?, u.lambda(x)?]))
        .collect();
    let rho = c
        .objects()
        .map(|x| c.seq(&[u.rho(x)?, s.tensor_mor(c.identity(x), ri)?]))
        .collect();
    let candidate = UnitCandidate::new(s, ii, lambda, rho)?;
    let is_unit = check_all(s, Some(&candidate), AxiomMask::UNIT).all_pass();
    let lambda_i_invertible = c.is_iso(li);
    if is_unit != lambda_i_invertible {
        return Err(PropositionViolated::new(
            "I⊗I with the induced constraints is a unit exactly when λ_I is invertible",
            format!("unit at {i}: candidate is unit {is_unit}, λ_I invertible {lambda_i_invertible}"),
        )
        .into());
    }
    Ok(TensorSquare {
        candidate,
        is_unit,
        lambda_i_invertible,
    })
}

/// Endomorphisms of the unit object under composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndMonoid {
    pub carrier: Vec<Mor>,
    /// `table[a][b]` is the carrier index of `carrier[a] ∘ carrier[b]`.
    pub table: Vec<Vec<usize>>,
    pub unit_element: Mor,
}

impl EndMonoid {
    pub fn is_commutative(&self) -> bool {
        let k = self.carrier.len();
        (0..k).all(|a| (0..k).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Builds `End(I)` and tests commutativity; a weakly normal unit with a
/// non-commutative `End(I)` is an error.
pub fn end_monoid_commutative(s: &TensorStructure, u: &UnitCandidate) -> Result<(EndMonoid, bool), UnitsError> {
    let c = s.base();
    let i = u.unit();
    let carrier = c.hom(i, i).to_vec();
    let position = |m: Mor| carrier.iter().position(|&x| x == m).expect("closed under composition");
    let table = carrier
        .iter()
        .map(|&a| {
            carrier
                .iter()
                .map(|&b| position(c.compose(a, b).expect("endomorphisms compose")))
                .collect()
        })
        .collect();
    let monoid = EndMonoid {
        carrier: carrier.clone(),
        table,
        unit_element: c.identity(i),
    };
    let commutative = monoid.is_commutative();
    let flags = normality_class(s, u)?;
    if flags.weakly_normal && !commutative {
        return Err(PropositionViolated::new(
            "End(I) of a weakly normal unit is commutative",
            format!("unit at {i}, End(I) table {:?}", monoid.table),
        )
        .into());
    }
    Ok((monoid, commutative))
}

/// For a candidate satisfying the left and mid unit axioms with every
/// component invertible, returns whether the unit-unit axiom holds (it must).
pub fn invertible_units_lemma_check(s: &TensorStructure, u: &UnitCandidate) -> Result<bool, UnitsError> {
    let c = s.base();
    let mut unmet = Vec::new();
    if !check_left_unit(s, u).is_pass() {
        unmet.push("left unit axiom".to_string());
    }
    if !check_mid_unit(s, u).is_pass() {
        unmet.push("mid unit axiom".to_string());
    }
    for x in c.objects() {
        if !u.lambda(x).is_some_and(|l| c.is_iso(l)) {
            unmet.push(format!("λ_{x} invertible"));
        }
        if !u.rho(x).is_some_and(|r| c.is_iso(r)) {
            unmet.push(format!("ρ_{x} invertible"));
        }
    }
    if !unmet.is_empty() {
        return Err(UnitsError::PreconditionUnmet(unmet));
    }
    let holds = check_unit_unit(s, u).is_pass();
    if !holds {
        return Err(PropositionViolated::new(
            "invertible λ and ρ with the left and mid axioms force the unit-unit axiom",
            format!("{u:?}"),
        )
        .into());
    }
    Ok(holds)
}

/// `λ_I ∘ ρ_I` is a unit morphism from a candidate to itself whenever the
/// left, mid and right unit axioms hold.
pub fn unit_unit_composite_is_unit_morphism(s: &TensorStructure, u: &UnitCandidate) -> Result<bool, UnitsError> {
    let c = s.base();
    let i = u.unit();
    let composite = u
        .rho(i)
        .zip(u.lambda(i))
        .and_then(|(r, l)| c.seq(&[r, l]))
        .ok_or(FinCatError::ShapeMismatch {
            index: vec![i],
            expected: None,
            found: None,
        })?;
    is_unit_morphism(s, u, u, composite)
}

/// In a left normal structure, `I⊗J` carries the unit transported from `J`
/// along the isomorphism `λ_J: I⊗J -> J`.
pub fn left_normal_tensor_unit(s: &TensorStructure, u: &UnitCandidate, v: &UnitCandidate) -> Result<UnitCandidate, UnitsError> {
    let c = s.base();
    let j = v.unit();
    let l = u.lambda(j).ok_or(FinCatError::ShapeMismatch {
        index: vec![j],
        expected: None,
        found: None,
    })?;
    let l_inv = c.inverse(l).ok_or_else(|| UnitsError::PreconditionUnmet(vec![format!("λ_{j} invertible")]))?;
    transport_unit(s, v, l, l_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::skewstruct::{constant_tensor, strict_commutative_monoid};

    fn budget() -> Budget {
        Budget::new(crate::DEFAULT_BUDGET)
    }

    fn codisc2() -> TensorStructure {
        let base = FinCategory::codiscrete(2);
        constant_tensor(base.clone(), 0, |_, _, _| base.identity(0)).unwrap()
    }

    fn bz2() -> (TensorStructure, UnitCandidate) {
        strict_commutative_monoid(FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()).unwrap()
    }

    #[test]
    fn terminal_has_one_unit() {
        let (s, _) = strict_commutative_monoid(FinCategory::terminal()).unwrap();
        let cat = build_units_category(&s, AxiomMask::UNIT, &budget()).unwrap();
        assert_eq!(cat.units.len(), 1);
        assert_eq!(cat.morphism_sets, vec![vec![vec![0]]]);
    }

    #[test]
    fn codiscrete_has_two_units() {
        let s = codisc2();
        let cat = build_units_category(&s, AxiomMask::UNIT, &budget()).unwrap();
        assert_eq!(cat.units.iter().map(|u| u.unit()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(cat.morphism_sets[0][1], vec![1]);
        let no_pentagon = build_units_category(&s, AxiomMask::UNIT.without(Axiom::Pentagon), &budget()).unwrap();
        assert_eq!(no_pentagon, cat);
    }

    #[test]
    fn discrete_first_projection_has_no_units() {
        let base = FinCategory::discrete(2);
        let b = base.clone();
        let s = TensorStructure::from_fn(
            base,
            |x, _| Some(x),
            |f, _| Some(f),
            MorphismFamily::tabulate(3, 2, |t| Some(b.identity(t[0]))),
            None,
        )
        .unwrap();
        assert!(enumerate_units(&s, AxiomMask::UNIT, &budget()).unwrap().is_empty());
    }

    #[test]
    fn bz2_units_and_unit_morphisms() {
        let (s, u) = bz2();
        assert!(is_unit_morphism(&s, &u, &u, 0).unwrap());
        assert!(!is_unit_morphism(&s, &u, &u, 1).unwrap());
        assert_eq!(canonical_morphism(&s, &u, &u).unwrap(), 0);
        let units = enumerate_units(&s, AxiomMask::UNIT, &budget()).unwrap();
        assert_eq!(units.len(), 2);
        assert_eq!(units[0], u);
        let twisted = transport_unit(&s, &u, 1, 1).unwrap();
        assert_eq!(units[1], twisted);
        assert_eq!(determination_check(&units).unwrap().by_lambda, vec![1, 1]);
    }

    #[test]
    fn transport_along_identity_is_identity() {
        let (s, u) = bz2();
        assert_eq!(transport_unit(&s, &u, 0, 0).unwrap(), u);
        assert_eq!(
            transport_unit(&s, &u, 1, 0),
            Err(UnitsError::NotAnIsomorphism { morphism: 1, inverse: 0 })
        );
    }

    #[test]
    fn codiscrete_transport_matches_enumeration() {
        let s = codisc2();
        let units = enumerate_units(&s, AxiomMask::UNIT, &budget()).unwrap();
        // morphism 2 runs 1 -> 0, morphism 1 runs back
        let moved = transport_unit(&s, &units[0], 2, 1).unwrap();
        assert_eq!(moved, units[1]);
    }

    #[test]
    fn tensor_square_and_end_monoid() {
        let (s, u) = bz2();
        let sq = tensor_square_candidate(&s, &u).unwrap();
        assert!(sq.is_unit && sq.lambda_i_invertible);
        let (m, comm) = end_monoid_commutative(&s, &u).unwrap();
        assert!(comm);
        assert_eq!(m.table, vec![vec![0, 1], vec![1, 0]]);
        assert!(invertible_units_lemma_check(&s, &u).unwrap());
    }

    #[test]
    fn bounded_structures_are_refused() {
        let base = FinCategory::discrete(2);
        let b = base.clone();
        let s = TensorStructure::from_fn(
            base,
            |x, y| (x == 0 && y == 0).then_some(0),
            |f, g| (f == 0 && g == 0).then_some(0),
            MorphismFamily::tabulate(3, 2, |t| (t == [0, 0, 0]).then(|| b.identity(0))),
            None,
        )
        .unwrap();
        assert_eq!(
            enumerate_units(&s, AxiomMask::UNIT, &budget()),
            Err(UnitsError::BoundedStructure)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let s = codisc2();
        let err = enumerate_units(&s, AxiomMask::UNIT, &Budget::new(3)).unwrap_err();
        assert!(matches!(err, UnitsError::Budget(_)));
    }
}
