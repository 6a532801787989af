//! The pentagon and the four unit axioms, evaluated by composing table entries.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{TensorStructure, UnitCandidate};
use crate::fincat::Obj;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Pentagon,
    LeftUnit,
    MidUnit,
    RightUnit,
    UnitUnit,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Pentagon,
        Axiom::LeftUnit,
        Axiom::MidUnit,
        Axiom::RightUnit,
        Axiom::UnitUnit,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            Axiom::Pentagon => "pentagon",
            Axiom::LeftUnit => "left",
            Axiom::MidUnit => "mid",
            Axiom::RightUnit => "right",
            Axiom::UnitUnit => "unitunit",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Pentagon => "pentagon",
            Axiom::LeftUnit => "left_unit",
            Axiom::MidUnit => "mid_unit",
            Axiom::RightUnit => "right_unit",
            Axiom::UnitUnit => "unit_unit",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom name `{0}`")]
pub struct MaskParseError(pub String);

/// Set of enabled axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxiomMask(u8);

impl AxiomMask {
    pub const ALL: AxiomMask = AxiomMask(0b11111);
    pub const NONE: AxiomMask = AxiomMask(0);
    /// The four axioms involving the unit.
    pub const UNIT: AxiomMask = AxiomMask(0b11110);

    pub fn contains(self, a: Axiom) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn with(self, a: Axiom) -> Self {
        AxiomMask(self.0 | (1 << a.index()))
    }

    pub fn without(self, a: Axiom) -> Self {
        AxiomMask(self.0 & !(1 << a.index()))
    }

    pub fn axioms(self) -> impl Iterator<Item = Axiom> {
        Axiom::ALL.into_iter().filter(move |&a| self.contains(a))
    }

    pub fn intersect(self, other: AxiomMask) -> Self {
        AxiomMask(self.0 & other.0)
    }
}

impl Default for AxiomMask {
    fn default() -> Self {
        AxiomMask::ALL
    }
}

impl FromStr for AxiomMask {
    type Err = MaskParseError;

    /// Comma-separated list of short or long axiom names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut mask = AxiomMask::NONE;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let a = Axiom::ALL
                .into_iter()
                .find(|a| a.short_name() == part || a.name() == part)
                .ok_or_else(|| MaskParseError(part.to_string()))?;
            mask = mask.with(a);
        }
        Ok(mask)
    }
}

impl fmt::Display for AxiomMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.axioms().map(Axiom::short_name).collect();
        f.write_str(&names.join(","))
    }
}

/// Outcome of one axiom check. A failure names the first object tuple, in
/// lexicographic order, where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AxiomStatus {
    Pass,
    Fail { witness: Vec<Obj> },
    Skipped,
}

impl AxiomStatus {
    pub fn is_fail(&self) -> bool {
        matches!(self, AxiomStatus::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomStatus::Pass)
    }

    fn from_witness(w: Option<Vec<Obj>>) -> Self {
        match w {
            Some(witness) => AxiomStatus::Fail { witness },
            None => AxiomStatus::Pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub axiom: Axiom,
    #[serde(flatten)]
    pub status: AxiomStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomEntry>,
    /// The tensor is partial; passes only cover instances inside its domain.
    pub bounded: bool,
    /// The object tensor is constant.
    pub degenerate: bool,
}

impl AxiomReport {
    pub fn status(&self, a: Axiom) -> &AxiomStatus {
        &self.axioms[a.index()].status
    }

    /// No enabled axiom failed.
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|e| !e.status.is_fail())
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.axioms
            .iter()
            .filter(|e| e.status.is_fail())
            .map(|e| e.axiom)
            .collect()
    }

    pub fn passed(&self) -> usize {
        self.axioms.iter().filter(|e| e.status.is_pass()).count()
    }

    /// The same report with left and right unit entries exchanged.
    pub fn swap_left_right(&self) -> AxiomReport {
        let mut out = self.clone();
        out.axioms.swap(Axiom::LeftUnit.index(), Axiom::RightUnit.index());
        out.axioms[Axiom::LeftUnit.index()].axiom = Axiom::LeftUnit;
        out.axioms[Axiom::RightUnit.index()].axiom = Axiom::RightUnit;
        out
    }
}

/// Pentagon at one quadruple; `None` if any piece is outside the tensor's domain.
fn pentagon_at(s: &TensorStructure, w: Obj, x: Obj, y: Obj, z: Obj) -> Option<bool> {
    let c = s.base();
    let wx = s.tensor(w, x)?;
    let xy = s.tensor(x, y)?;
    let yz = s.tensor(y, z)?;
    let top = c.seq(&[s.alpha(wx, y, z)?, s.alpha(w, x, yz)?])?;
    let bottom = c.seq(&[
        s.tensor_mor(s.alpha(w, x, y)?, c.identity(z))?,
        s.alpha(w, xy, z)?,
        s.tensor_mor(c.identity(w), s.alpha(x, y, z)?)?,
    ])?;
    Some(top == bottom)
}

pub fn check_pentagon(s: &TensorStructure) -> AxiomStatus {
    let n = s.object_count();
    let witness = (0..n).into_par_iter().find_map_first(|w| {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if pentagon_at(s, w, x, y, z) == Some(false) {
                        return Some(vec![w, x, y, z]);
                    }
                }
            }
        }
        None
    });
    AxiomStatus::from_witness(witness)
}

fn first_pair(n: usize, holds: impl Fn(Obj, Obj) -> Option<bool>) -> Option<Vec<Obj>> {
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| holds(x, y) == Some(false))
        .map(|(x, y)| vec![x, y])
}

/// `λ_{X⊗Y} ∘ α_{I,X,Y} = λ_X ⊗ 1_Y`.
pub fn check_left_unit(s: &TensorStructure, u: &UnitCandidate) -> AxiomStatus {
    let c = s.base();
    let i = u.unit();
    AxiomStatus::from_witness(first_pair(s.object_count(), |x, y| {
        let xy = s.tensor(x, y)?;
        let lhs = c.seq(&[s.alpha(i, x, y)?, u.lambda(xy)?])?;
        let rhs = s.tensor_mor(u.lambda(x)?, c.identity(y))?;
        Some(lhs == rhs)
    }))
}

/// `(1_X ⊗ λ_Y) ∘ α_{X,I,Y} ∘ (ρ_X ⊗ 1_Y) = 1_{X⊗Y}`.
pub fn check_mid_unit(s: &TensorStructure, u: &UnitCandidate) -> AxiomStatus {
    let c = s.base();
    let i = u.unit();
    AxiomStatus::from_witness(first_pair(s.object_count(), |x, y| {
        let xy = s.tensor(x, y)?;
        let lhs = c.seq(&[
            s.tensor_mor(u.rho(x)?, c.identity(y))?,
            s.alpha(x, i, y)?,
            s.tensor_mor(c.identity(x), u.lambda(y)?)?,
        ])?;
        Some(lhs == c.identity(xy))
    }))
}

/// `α_{X,Y,I} ∘ ρ_{X⊗Y} = 1_X ⊗ ρ_Y`.
pub fn check_right_unit(s: &TensorStructure, u: &UnitCandidate) -> AxiomStatus {
    let c = s.base();
    let i = u.unit();
    AxiomStatus::from_witness(first_pair(s.object_count(), |x, y| {
        let xy = s.tensor(x, y)?;
        let lhs = c.seq(&[u.rho(xy)?, s.alpha(x, y, i)?])?;
        let rhs = s.tensor_mor(c.identity(x), u.rho(y)?)?;
        Some(lhs == rhs)
    }))
}

/// `λ_I ∘ ρ_I = 1_I`.
pub fn check_unit_unit(s: &TensorStructure, u: &UnitCandidate) -> AxiomStatus {
    let c = s.base();
    let i = u.unit();
    let holds = (|| Some(c.seq(&[u.rho(i)?, u.lambda(i)?])? == c.identity(i)))();
    AxiomStatus::from_witness((holds == Some(false)).then(|| vec![i]))
}

/// Runs every axiom in `mask`. Unit axioms are skipped when no candidate is given.
pub fn check_all(s: &TensorStructure, u: Option<&UnitCandidate>, mask: AxiomMask) -> AxiomReport {
    let axioms = Axiom::ALL
        .into_iter()
        .map(|axiom| {
            let status = match (axiom, u) {
                _ if !mask.contains(axiom) => AxiomStatus::Skipped,
                (Axiom::Pentagon, _) => check_pentagon(s),
                (_, None) => AxiomStatus::Skipped,
                (Axiom::LeftUnit, Some(u)) => check_left_unit(s, u),
                (Axiom::MidUnit, Some(u)) => check_mid_unit(s, u),
                (Axiom::RightUnit, Some(u)) => check_right_unit(s, u),
                (Axiom::UnitUnit, Some(u)) => check_unit_unit(s, u),
            };
            AxiomEntry { axiom, status }
        })
        .collect();
    AxiomReport {
        axioms,
        bounded: s.is_bounded(),
        degenerate: s.is_degenerate(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinCategory, MorphismFamily};
    use crate::skewstruct::{constant_tensor, strict_commutative_monoid};

    #[test]
    fn terminal_passes_everything() {
        let (s, u) = strict_commutative_monoid(FinCategory::terminal()).unwrap();
        let r = check_all(&s, Some(&u), AxiomMask::ALL);
        assert_eq!(r.passed(), 5);
    }

    #[test]
    fn codiscrete_passes_with_either_unit() {
        let base = FinCategory::codiscrete(2);
        let s = constant_tensor(base.clone(), 0, |_, _, _| base.identity(0)).unwrap();
        for i in 0..2 {
            let u = UnitCandidate::new(
                &s,
                i,
                vec![Some(0), Some(1)],
                vec![Some(0), Some(2)],
            )
            .unwrap();
            assert!(check_all(&s, Some(&u), AxiomMask::ALL).all_pass());
        }
    }

    #[test]
    fn twisted_rho_breaks_mid_and_unit_unit() {
        let base = FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        let (s, _) = strict_commutative_monoid(base).unwrap();
        let u = UnitCandidate::new(&s, 0, vec![Some(0)], vec![Some(1)]).unwrap();
        let r = check_all(&s, Some(&u), AxiomMask::ALL);
        assert!(r.status(Axiom::Pentagon).is_pass());
        assert!(r.status(Axiom::LeftUnit).is_pass());
        assert_eq!(r.status(Axiom::MidUnit), &AxiomStatus::Fail { witness: vec![0, 0] });
        assert!(r.status(Axiom::RightUnit).is_pass());
        assert_eq!(r.status(Axiom::UnitUnit), &AxiomStatus::Fail { witness: vec![0] });
    }

    #[test]
    fn twisted_associator_on_bz2_fails_pentagon() {
        // the top path composes two copies of s, the bottom path three
        let base = FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        let b = base.clone();
        let assoc = MorphismFamily::total(3, 1, vec![1]).unwrap();
        let s = TensorStructure::from_fn(base, |_, _| Some(0), |f, g| b.compose(f, g), assoc, None).unwrap();
        assert_eq!(check_pentagon(&s), AxiomStatus::Fail { witness: vec![0, 0, 0, 0] });
    }

    #[test]
    fn mask_parsing() {
        let m: AxiomMask = "pentagon,mid".parse().unwrap();
        assert!(m.contains(Axiom::Pentagon) && m.contains(Axiom::MidUnit));
        assert!(!m.contains(Axiom::LeftUnit));
        assert_eq!(m.to_string(), "pentagon,mid");
        let long: AxiomMask = "left_unit,unitunit".parse().unwrap();
        assert_eq!(long, AxiomMask::NONE.with(Axiom::LeftUnit).with(Axiom::UnitUnit));
        assert!("pentagn".parse::<AxiomMask>().is_err());
    }

    #[test]
    fn disabled_axioms_are_skipped() {
        let (s, u) = strict_commutative_monoid(FinCategory::terminal()).unwrap();
        let r = check_all(&s, Some(&u), AxiomMask::ALL.without(Axiom::Pentagon));
        assert_eq!(r.status(Axiom::Pentagon), &AxiomStatus::Skipped);
        let r = check_all(&s, None, AxiomMask::ALL);
        assert_eq!(r.status(Axiom::LeftUnit), &AxiomStatus::Skipped);
    }

    #[test]
    fn report_serialization_shape() {
        let (s, u) = strict_commutative_monoid(FinCategory::terminal()).unwrap();
        let r = check_all(&s, Some(&u), AxiomMask::ALL);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["axioms"][0]["axiom"], "pentagon");
        assert_eq!(v["axioms"][0]["status"], "pass");
    }
}
