//! Skew semimonoidal structures on finite categories, unit candidates, and
//! the five coherence checks.
//!
//! A [`TensorStructure`] may be *bounded*: its tensor is only defined on part
//! of `C x C`. Bounded structures come from finite fragments of infinite
//! models; every check simply skips instances that leave the fragment.

mod axioms;
mod normality;
mod reverse;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{
    is_natural, FinCatError, FinCategory, Leg, Mor, MorphismFamily, Naturality,
    NaturalityScope, Obj,
};
use crate::PropositionViolated;

pub use axioms::{
    check_all, check_left_unit, check_mid_unit, check_pentagon, check_right_unit, check_unit_unit,
    Axiom, AxiomEntry, AxiomMask, AxiomReport, AxiomStatus, MaskParseError,
};
pub use normality::{normality_class, NormalityFlags};
pub use reverse::{reverse_structure, reverse_witness};

const UNDEFINED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error("tensor table has the wrong size ({what})")]
    TableShape { what: &'static str },
    #[error("{f} ⊗ {g} = {image:?} disagrees with the object tensor of its endpoints")]
    TensorEndpoints { f: Mor, g: Mor, image: Option<Mor> },
    #[error("tensor is not functorial: {law} fails on {morphisms:?}")]
    NotFunctorial {
        law: &'static str,
        morphisms: Vec<Mor>,
    },
    #[error("{family} is not natural; square indexed by {morphisms:?} fails")]
    NotNatural {
        family: &'static str,
        morphisms: Vec<Mor>,
    },
    #[error("candidate is not a unit: {failing:?} fail")]
    NotAUnit { failing: Vec<Axiom> },
    #[error(transparent)]
    Proposition(#[from] PropositionViolated),
}

/// An object expression in the tensor: variables, fixed objects, and `⊗`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Var(usize),
    Obj(Obj),
    Tensor(Box<Word>, Box<Word>),
}

impl Word {
    pub fn var(i: usize) -> Word {
        Word::Var(i)
    }

    pub fn tensor(a: Word, b: Word) -> Word {
        Word::Tensor(Box::new(a), Box::new(b))
    }
}

/// Tensor product and associator on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorStructure {
    base: FinCategory,
    obj_tensor: Vec<u32>,
    mor_tensor: Vec<u32>,
    assoc: MorphismFamily,
    bounded: bool,
    generators: Option<Vec<Mor>>,
}

impl TensorStructure {
    /// Validates a structure given by full tables.
    pub fn new(
        base: FinCategory,
        obj_tensor: &[Vec<Option<Obj>>],
        mor_tensor: &[Vec<Option<Mor>>],
        assoc: MorphismFamily,
    ) -> Result<Self, StructureError> {
        let (n, m) = (base.object_count(), base.morphism_count());
        if obj_tensor.len() != n || obj_tensor.iter().any(|r| r.len() != n) {
            return Err(StructureError::TableShape { what: "objects" });
        }
        if mor_tensor.len() != m || mor_tensor.iter().any(|r| r.len() != m) {
            return Err(StructureError::TableShape { what: "morphisms" });
        }
        Self::from_fn(base, |x, y| obj_tensor[x][y], |f, g| mor_tensor[f][g], assoc, None)
    }

    /// Validates a structure given by functions.
    ///
    /// With `generators` set, naturality is checked one coordinate at a time
    /// over the listed morphisms instead of over all morphism tuples.
    pub fn from_fn(
        base: FinCategory,
        obj_tensor: impl Fn(Obj, Obj) -> Option<Obj>,
        mor_tensor: impl Fn(Mor, Mor) -> Option<Mor>,
        assoc: MorphismFamily,
        generators: Option<Vec<Mor>>,
    ) -> Result<Self, StructureError> {
        let (n, m) = (base.object_count(), base.morphism_count());
        let mut ot = vec![UNDEFINED; n * n];
        for x in 0..n {
            for y in 0..n {
                if let Some(r) = obj_tensor(x, y) {
                    if r >= n {
                        return Err(FinCatError::UnknownObject(r).into());
                    }
                    ot[x * n + y] = r as u32;
                }
            }
        }
        let mut mt = vec![UNDEFINED; m * m];
        for f in 0..m {
            for g in 0..m {
                if let Some(r) = mor_tensor(f, g) {
                    if r >= m {
                        return Err(FinCatError::UnknownMorphism(r).into());
                    }
                    mt[f * m + g] = r as u32;
                }
            }
        }
        if let Some(gens) = &generators {
            if let Some(&g) = gens.iter().find(|&&g| g >= m) {
                return Err(FinCatError::UnknownMorphism(g).into());
            }
        }
        let bounded = ot.contains(&UNDEFINED);
        let s = TensorStructure {
            base,
            obj_tensor: ot,
            mor_tensor: mt,
            assoc,
            bounded,
            generators,
        };
        s.validate()?;
        Ok(s)
    }

    /// Structure with trusted tables, used where the data is correct by construction.
    pub(crate) fn from_parts_unchecked(
        base: FinCategory,
        obj_tensor: Vec<u32>,
        mor_tensor: Vec<u32>,
        assoc: MorphismFamily,
        generators: Option<Vec<Mor>>,
    ) -> Self {
        let bounded = obj_tensor.contains(&UNDEFINED);
        TensorStructure {
            base,
            obj_tensor,
            mor_tensor,
            assoc,
            bounded,
            generators,
        }
    }

    fn validate(&self) -> Result<(), StructureError> {
        let c = &self.base;
        for f in c.morphisms() {
            for g in c.morphisms() {
                let ends = self
                    .tensor(c.src(f), c.src(g))
                    .zip(self.tensor(c.dst(f), c.dst(g)));
                let image = self.tensor_mor(f, g);
                let ok = match (ends, image) {
                    (Some((s, d)), Some(h)) => c.src(h) == s && c.dst(h) == d,
                    (None, None) => true,
                    _ => false,
                };
                if !ok {
                    return Err(StructureError::TensorEndpoints { f, g, image });
                }
            }
        }
        for x in c.objects() {
            for y in c.objects() {
                if let Some(xy) = self.tensor(x, y) {
                    if self.tensor_mor(c.identity(x), c.identity(y)) != Some(c.identity(xy)) {
                        return Err(StructureError::NotFunctorial {
                            law: "identity",
                            morphisms: vec![c.identity(x), c.identity(y)],
                        });
                    }
                }
            }
        }
        self.check_composition()?;
        self.check_interchange()?;
        let left = self.leg(
            3,
            &Word::tensor(Word::tensor(Word::var(0), Word::var(1)), Word::var(2)),
        );
        let right = self.leg(
            3,
            &Word::tensor(Word::var(0), Word::tensor(Word::var(1), Word::var(2))),
        );
        match self.naturality(&self.assoc, &left, &right)? {
            Naturality::Natural => Ok(()),
            Naturality::Fails { morphisms } => Err(StructureError::NotNatural {
                family: "associator",
                morphisms,
            }),
        }
    }

    /// Composition is preserved in each variable separately.
    fn check_composition(&self) -> Result<(), StructureError> {
        let c = &self.base;
        let mut outgoing = vec![Vec::new(); c.object_count()];
        for f in c.morphisms() {
            outgoing[c.src(f)].push(f);
        }
        for f in c.morphisms() {
            for &f2 in &outgoing[c.dst(f)] {
                let ff = c.compose(f2, f).expect("composable");
                for y in c.objects() {
                    let iy = c.identity(y);
                    let whole = self.tensor_mor(ff, iy);
                    let parts = self
                        .tensor_mor(f, iy)
                        .zip(self.tensor_mor(f2, iy))
                        .and_then(|(a, b)| c.compose(b, a));
                    if whole.is_some() && parts.is_some() && whole != parts {
                        return Err(StructureError::NotFunctorial {
                            law: "composition in the first variable",
                            morphisms: vec![f2, f, iy],
                        });
                    }
                    let whole = self.tensor_mor(iy, ff);
                    let parts = self
                        .tensor_mor(iy, f)
                        .zip(self.tensor_mor(iy, f2))
                        .and_then(|(a, b)| c.compose(b, a));
                    if whole.is_some() && parts.is_some() && whole != parts {
                        return Err(StructureError::NotFunctorial {
                            law: "composition in the second variable",
                            morphisms: vec![iy, f2, f],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `f⊗g = (f⊗1)∘(1⊗g) = (1⊗g)∘(f⊗1)` for every pair.
    fn check_interchange(&self) -> Result<(), StructureError> {
        let c = &self.base;
        for f in c.morphisms() {
            for g in c.morphisms() {
                let Some(fg) = self.tensor_mor(f, g) else {
                    continue;
                };
                let one_then = self
                    .tensor_mor(c.identity(c.src(f)), g)
                    .zip(self.tensor_mor(f, c.identity(c.dst(g))))
                    .and_then(|(a, b)| c.compose(b, a));
                let then_one = self
                    .tensor_mor(f, c.identity(c.src(g)))
                    .zip(self.tensor_mor(c.identity(c.dst(f)), g))
                    .and_then(|(a, b)| c.compose(b, a));
                for side in [one_then, then_one] {
                    if side.is_some_and(|h| h != fg) {
                        return Err(StructureError::NotFunctorial {
                            law: "interchange",
                            morphisms: vec![f, g],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn naturality(
        &self,
        family: &MorphismFamily,
        left: &Leg,
        right: &Leg,
    ) -> Result<Naturality, FinCatError> {
        let scope = match &self.generators {
            Some(g) => NaturalityScope::Generators(g),
            None => NaturalityScope::AllMorphisms,
        };
        is_natural(&self.base, &self.base, family, left, right, scope)
    }

    /// The functor `C^arity -> C` described by `word`; undefined where the
    /// tensor is.
    pub fn leg<'a>(&'a self, arity: usize, word: &Word) -> Leg<'a> {
        let w1 = word.clone();
        let w2 = word.clone();
        Leg::new(
            arity,
            move |xs| self.eval_obj(&w1, xs),
            move |fs| self.eval_mor(&w2, fs),
        )
    }

    fn eval_obj(&self, w: &Word, xs: &[Obj]) -> Option<Obj> {
        match w {
            Word::Var(i) => Some(xs[*i]),
            Word::Obj(o) => Some(*o),
            Word::Tensor(a, b) => self.tensor(self.eval_obj(a, xs)?, self.eval_obj(b, xs)?),
        }
    }

    fn eval_mor(&self, w: &Word, fs: &[Mor]) -> Option<Mor> {
        match w {
            Word::Var(i) => Some(fs[*i]),
            Word::Obj(o) => Some(self.base.identity(*o)),
            Word::Tensor(a, b) => self.tensor_mor(self.eval_mor(a, fs)?, self.eval_mor(b, fs)?),
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn object_count(&self) -> usize {
        self.base.object_count()
    }

    pub fn tensor(&self, x: Obj, y: Obj) -> Option<Obj> {
        match self.obj_tensor[x * self.base.object_count() + y] {
            UNDEFINED => None,
            r => Some(r as Obj),
        }
    }

    pub fn tensor_mor(&self, f: Mor, g: Mor) -> Option<Mor> {
        match self.mor_tensor[f * self.base.morphism_count() + g] {
            UNDEFINED => None,
            r => Some(r as Mor),
        }
    }

    /// `α_{X,Y,Z}: (X⊗Y)⊗Z -> X⊗(Y⊗Z)`.
    pub fn alpha(&self, x: Obj, y: Obj, z: Obj) -> Option<Mor> {
        self.assoc.get(&[x, y, z])
    }

    pub fn assoc(&self) -> &MorphismFamily {
        &self.assoc
    }

    /// True when the tensor is only partially defined.
    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// True when the category has several objects and every defined object
    /// tensor is the same one.
    pub fn is_degenerate(&self) -> bool {
        if self.object_count() < 2 {
            return false;
        }
        let mut defined = self.obj_tensor.iter().filter(|&&r| r != UNDEFINED);
        match defined.next() {
            Some(first) => defined.all(|r| r == first),
            None => false,
        }
    }

    pub fn generators(&self) -> Option<&[Mor]> {
        self.generators.as_deref()
    }

    pub(crate) fn raw_obj_tensor(&self) -> &[u32] {
        &self.obj_tensor
    }

    pub(crate) fn raw_mor_tensor(&self) -> &[u32] {
        &self.mor_tensor
    }

    pub fn obj_tensor_table(&self) -> Vec<Vec<Option<Obj>>> {
        let n = self.object_count();
        (0..n).map(|x| (0..n).map(|y| self.tensor(x, y)).collect()).collect()
    }

    pub fn mor_tensor_table(&self) -> Vec<Vec<Option<Mor>>> {
        let m = self.base.morphism_count();
        (0..m).map(|f| (0..m).map(|g| self.tensor_mor(f, g)).collect()).collect()
    }

    /// Shape of `λ` for unit `i`: `I⊗X -> X`.
    pub fn lambda_legs(&self, i: Obj) -> (Leg<'_>, Leg<'_>) {
        (
            self.leg(1, &Word::tensor(Word::Obj(i), Word::var(0))),
            Leg::identity(),
        )
    }

    /// Shape of `ρ` for unit `i`: `X -> X⊗I`.
    pub fn rho_legs(&self, i: Obj) -> (Leg<'_>, Leg<'_>) {
        (
            Leg::identity(),
            self.leg(1, &Word::tensor(Word::var(0), Word::Obj(i))),
        )
    }
}

/// A triple `(I, λ, ρ)` whose families have the right shapes and are natural.
///
/// Equality is structural: same object, same component arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitCandidate {
    unit: Obj,
    lambda: MorphismFamily,
    rho: MorphismFamily,
}

impl UnitCandidate {
    pub fn new(
        s: &TensorStructure,
        unit: Obj,
        lambda: Vec<Option<Mor>>,
        rho: Vec<Option<Mor>>,
    ) -> Result<Self, StructureError> {
        let n = s.object_count();
        if unit >= n {
            return Err(FinCatError::UnknownObject(unit).into());
        }
        let lambda = MorphismFamily::new(1, n, lambda)?;
        let rho = MorphismFamily::new(1, n, rho)?;
        let (l0, l1) = s.lambda_legs(unit);
        if let Naturality::Fails { morphisms } = s.naturality(&lambda, &l0, &l1)? {
            return Err(StructureError::NotNatural {
                family: "lambda",
                morphisms,
            });
        }
        let (r0, r1) = s.rho_legs(unit);
        if let Naturality::Fails { morphisms } = s.naturality(&rho, &r0, &r1)? {
            return Err(StructureError::NotNatural {
                family: "rho",
                morphisms,
            });
        }
        Ok(UnitCandidate { unit, lambda, rho })
    }

    /// Builds a candidate whose shapes and naturality the caller has established.
    pub(crate) fn from_parts_unchecked(unit: Obj, lambda: MorphismFamily, rho: MorphismFamily) -> Self {
        UnitCandidate { unit, lambda, rho }
    }

    pub fn unit(&self) -> Obj {
        self.unit
    }

    /// `λ_X: I⊗X -> X`.
    pub fn lambda(&self, x: Obj) -> Option<Mor> {
        self.lambda.at(x)
    }

    /// `ρ_X: X -> X⊗I`.
    pub fn rho(&self, x: Obj) -> Option<Mor> {
        self.rho.at(x)
    }

    pub fn lambda_family(&self) -> &MorphismFamily {
        &self.lambda
    }

    pub fn rho_family(&self) -> &MorphismFamily {
        &self.rho
    }
}

/// The strict structure on a one-object category given by a commutative
/// monoid: `f⊗g = f·g`, all constraints identities.
pub fn strict_commutative_monoid(base: FinCategory) -> Result<(TensorStructure, UnitCandidate), StructureError> {
    assert_eq!(base.object_count(), 1, "one-object category expected");
    let id = base.identity(0);
    let b = base.clone();
    let assoc = MorphismFamily::total(3, 1, vec![id])?;
    let s = TensorStructure::from_fn(base, |_, _| Some(0), |f, g| b.compose(f, g), assoc, None)?;
    let u = UnitCandidate::new(&s, 0, vec![Some(id)], vec![Some(id)])?;
    Ok((s, u))
}

/// Structure whose tensor is constant at `k`; the associator is given by `assoc`.
pub fn constant_tensor(
    base: FinCategory,
    k: Obj,
    assoc: impl Fn(Obj, Obj, Obj) -> Mor,
) -> Result<TensorStructure, StructureError> {
    let n = base.object_count();
    let id = base.identity(k);
    let family = MorphismFamily::tabulate(3, n, |t| Some(assoc(t[0], t[1], t[2])));
    TensorStructure::from_fn(base, |_, _| Some(k), |_, _| Some(id), family, None)
}
