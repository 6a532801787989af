//! Finite categories stored as dense tables.
//!
//! Objects and morphisms are positional ids. Composition lives in a total
//! `m x m` table read as `comp(g, f)`, i.e. "g after f", with a sentinel for
//! pairs that are not composable. Every other module evaluates its diagrams
//! through this table.

mod family;
mod functor;

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use family::{index_tuples, is_natural, Leg, MorphismFamily, Naturality, NaturalityScope};
pub use functor::FinFunctor;

/// Object id.
pub type Obj = usize;
/// Morphism id.
pub type Mor = usize;

pub const MAX_OBJECTS: usize = 64;
pub const MAX_MORPHISMS: usize = 4096;

/// Validation stops collecting violations past this many.
const MAX_REPORTED_VIOLATIONS: usize = 64;

const UNDEFINED: u32 = u32::MAX;

/// Category description as it appears in files: positional ids throughout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    /// Number of objects.
    pub objects: usize,
    /// `[src, dst]` per morphism.
    pub morphisms: Vec<[usize; 2]>,
    /// Identity morphism of each object.
    pub identities: Vec<usize>,
    /// `[g, f, g∘f]` triples.
    pub comp: Vec<[usize; 3]>,
}

/// A single law or table defect found while validating a category.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryViolation {
    #[error("{count} {what} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("morphism {morphism} has endpoint {object}, which is not an object")]
    UnknownEndpoint { morphism: Mor, object: Obj },
    #[error("table entry refers to unknown morphism {0}")]
    UnknownMorphism(Mor),
    #[error("expected {expected} identities, found {found}")]
    IdentityCount { expected: usize, found: usize },
    #[error("composite ({g}, {f}) is given but dst({f}) != src({g})")]
    NotComposable { g: Mor, f: Mor },
    #[error("composite ({g}, {f}) = {result} has the wrong endpoints")]
    WrongEndpoints { g: Mor, f: Mor, result: Mor },
    #[error("composite ({g}, {f}) is given twice with different results")]
    DuplicateComposite { g: Mor, f: Mor },
    #[error("composite of {g} after {f} is undefined")]
    UndefinedComposite { g: Mor, f: Mor },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: Mor, g: Mor, f: Mor },
    #[error("identity {morphism} of object {object} misbehaves against morphism {witness:?}")]
    BadIdentity {
        object: Obj,
        morphism: Mor,
        witness: Option<Mor>,
    },
}

/// All violations found by [`FinCategory::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationError(pub Vec<CategoryViolation>);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid category:")?;
        for v in &self.0 {
            write!(f, " {v};")?;
        }
        Ok(())
    }
}

/// Errors raised by operations on already validated categories, functors and families.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("unknown object {0}")]
    UnknownObject(Obj),
    #[error("unknown morphism {0}")]
    UnknownMorphism(Mor),
    #[error("family has {found} components, its index needs {expected}")]
    ComponentCount { expected: usize, found: usize },
    #[error("family of arity {family} paired with legs of arity {leg}")]
    ArityMismatch { family: usize, leg: usize },
    #[error("component at {index:?} should run {expected:?}, found {found:?}")]
    ShapeMismatch {
        index: Vec<Obj>,
        expected: Option<(Obj, Obj)>,
        found: Option<(Obj, Obj)>,
    },
    #[error("functor data has wrong table length ({what})")]
    FunctorTableLength { what: &'static str },
    #[error("functor sends morphism {morphism} to {image}, which has the wrong endpoints")]
    FunctorEndpoints { morphism: Mor, image: Mor },
    #[error("functor does not preserve the identity of object {0}")]
    FunctorIdentity(Obj),
    #[error("functor does not preserve the composite of {g} after {f}")]
    FunctorComposition { g: Mor, f: Mor },
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: usize,
    src: Vec<Obj>,
    dst: Vec<Obj>,
    identity: Vec<Mor>,
    comp: Vec<u32>,
    homs: Vec<Vec<Mor>>,
}

impl FinCategory {
    /// Validates a raw description against the category laws.
    ///
    /// Every violation found is returned, each naming the offending ids.
    pub fn validate(raw: &RawCategory) -> Result<Self, ValidationError> {
        let mut errs = Vec::new();
        let n = raw.objects;
        let m = raw.morphisms.len();
        check_caps(n, m, &mut errs);
        if !errs.is_empty() {
            return Err(ValidationError(errs));
        }
        for (f, &[s, d]) in raw.morphisms.iter().enumerate() {
            for x in [s, d] {
                if x >= n {
                    errs.push(CategoryViolation::UnknownEndpoint { morphism: f, object: x });
                }
            }
        }
        if raw.identities.len() != n {
            errs.push(CategoryViolation::IdentityCount {
                expected: n,
                found: raw.identities.len(),
            });
        }
        for &i in &raw.identities {
            if i >= m {
                errs.push(CategoryViolation::UnknownMorphism(i));
            }
        }
        if !errs.is_empty() {
            return Err(ValidationError(errs));
        }
        let src: Vec<Obj> = raw.morphisms.iter().map(|e| e[0]).collect();
        let dst: Vec<Obj> = raw.morphisms.iter().map(|e| e[1]).collect();
        let mut comp = vec![UNDEFINED; m * m];
        for &[g, f, r] in &raw.comp {
            if let Some(bad) = [g, f, r].into_iter().find(|&x| x >= m) {
                errs.push(CategoryViolation::UnknownMorphism(bad));
                continue;
            }
            if dst[f] != src[g] {
                errs.push(CategoryViolation::NotComposable { g, f });
                continue;
            }
            if src[r] != src[f] || dst[r] != dst[g] {
                errs.push(CategoryViolation::WrongEndpoints { g, f, result: r });
                continue;
            }
            let slot = &mut comp[g * m + f];
            if *slot != UNDEFINED && *slot as usize != r {
                errs.push(CategoryViolation::DuplicateComposite { g, f });
            }
            *slot = r as u32;
        }
        if !errs.is_empty() {
            return Err(ValidationError(errs));
        }
        Self::from_tables(n, src, dst, raw.identities.clone(), comp)
    }

    /// Builds a category from endpoint lists and a composition rule, then
    /// runs the same law checks as [`FinCategory::validate`].
    ///
    /// `compose(g, f)` is only consulted for composable pairs.
    pub fn from_fn(
        objects: usize,
        endpoints: &[(Obj, Obj)],
        identities: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self, ValidationError> {
        let raw_morphisms: Vec<[usize; 2]> = endpoints.iter().map(|&(s, d)| [s, d]).collect();
        let mut errs = Vec::new();
        check_caps(objects, raw_morphisms.len(), &mut errs);
        if !errs.is_empty() {
            return Err(ValidationError(errs));
        }
        let m = endpoints.len();
        let src: Vec<Obj> = endpoints.iter().map(|e| e.0).collect();
        let dst: Vec<Obj> = endpoints.iter().map(|e| e.1).collect();
        if let Some((f, &x)) = src
            .iter()
            .chain(dst.iter())
            .enumerate()
            .find(|(_, &x)| x >= objects)
        {
            return Err(ValidationError(vec![CategoryViolation::UnknownEndpoint {
                morphism: f % m.max(1),
                object: x,
            }]));
        }
        if identities.len() != objects {
            return Err(ValidationError(vec![CategoryViolation::IdentityCount {
                expected: objects,
                found: identities.len(),
            }]));
        }
        let mut comp = vec![UNDEFINED; m * m];
        for f in 0..m {
            for g in 0..m {
                if dst[f] == src[g] {
                    let r = compose(g, f);
                    if r >= m {
                        return Err(ValidationError(vec![CategoryViolation::UnknownMorphism(r)]));
                    }
                    if src[r] != src[f] || dst[r] != dst[g] {
                        errs.push(CategoryViolation::WrongEndpoints { g, f, result: r });
                    }
                    comp[g * m + f] = r as u32;
                }
            }
        }
        if !errs.is_empty() {
            return Err(ValidationError(errs));
        }
        Self::from_tables(objects, src, dst, identities, comp)
    }

    fn from_tables(
        objects: usize,
        src: Vec<Obj>,
        dst: Vec<Obj>,
        identity: Vec<Mor>,
        comp: Vec<u32>,
    ) -> Result<Self, ValidationError> {
        let m = src.len();
        let mut homs = vec![Vec::new(); objects * objects];
        for f in 0..m {
            homs[src[f] * objects + dst[f]].push(f);
        }
        let cat = FinCategory {
            objects,
            src,
            dst,
            identity,
            comp,
            homs,
        };
        let errs = cat.law_violations();
        if errs.is_empty() {
            Ok(cat)
        } else {
            Err(ValidationError(errs))
        }
    }

    fn law_violations(&self) -> Vec<CategoryViolation> {
        let mut errs = Vec::new();
        let m = self.morphism_count();
        let push = |errs: &mut Vec<CategoryViolation>, v| {
            if errs.len() < MAX_REPORTED_VIOLATIONS {
                errs.push(v);
            }
        };
        for x in self.objects() {
            let i = self.identity[x];
            if i >= m || self.src[i] != x || self.dst[i] != x {
                push(
                    &mut errs,
                    CategoryViolation::BadIdentity {
                        object: x,
                        morphism: i,
                        witness: None,
                    },
                );
            }
        }
        if !errs.is_empty() {
            return errs;
        }
        let outgoing = self.outgoing();
        for f in 0..m {
            for &g in &outgoing[self.dst[f]] {
                if self.compose(g, f).is_none() {
                    push(&mut errs, CategoryViolation::UndefinedComposite { g, f });
                }
            }
        }
        if !errs.is_empty() {
            return errs;
        }
        for f in 0..m {
            let (s, d) = (self.src[f], self.dst[f]);
            if self.compose(self.identity[d], f) != Some(f) {
                push(
                    &mut errs,
                    CategoryViolation::BadIdentity {
                        object: d,
                        morphism: self.identity[d],
                        witness: Some(f),
                    },
                );
            }
            if self.compose(f, self.identity[s]) != Some(f) {
                push(
                    &mut errs,
                    CategoryViolation::BadIdentity {
                        object: s,
                        morphism: self.identity[s],
                        witness: Some(f),
                    },
                );
            }
        }
        if !errs.is_empty() {
            return errs;
        }
        for f in 0..m {
            for &g in &outgoing[self.dst[f]] {
                let gf = self.comp[g * m + f] as usize;
                for &h in &outgoing[self.dst[g]] {
                    let hg = self.comp[h * m + g] as usize;
                    if self.comp[h * m + gf] != self.comp[hg * m + f] {
                        push(&mut errs, CategoryViolation::NonAssociative { h, g, f });
                    }
                }
            }
        }
        errs
    }

    fn outgoing(&self) -> Vec<Vec<Mor>> {
        let mut out = vec![Vec::new(); self.objects];
        for f in self.morphisms() {
            out[self.src[f]].push(f);
        }
        out
    }

    /// Terminal category: one object, its identity.
    pub fn terminal() -> Self {
        Self::from_fn(1, &[(0, 0)], vec![0], |_, _| 0).expect("terminal category")
    }

    /// `n` objects and identities only.
    pub fn discrete(n: usize) -> Self {
        let endpoints: Vec<_> = (0..n).map(|x| (x, x)).collect();
        Self::from_fn(n, &endpoints, (0..n).collect(), |g, _| g).expect("discrete category")
    }

    /// Exactly one morphism `a -> b` for every ordered pair; morphism `a*n + b`.
    pub fn codiscrete(n: usize) -> Self {
        let endpoints: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let identities = (0..n).map(|x| x * n + x).collect();
        Self::from_fn(n, &endpoints, identities, |g, f| (f / n) * n + g % n)
            .expect("codiscrete category")
    }

    /// One-object category whose composite `g∘f` is `table[g][f]`.
    pub fn from_monoid(table: &[Vec<usize>], unit: usize) -> Result<Self, ValidationError> {
        let m = table.len();
        if table.iter().any(|row| row.len() != m) || unit >= m.max(1) {
            return Err(ValidationError(vec![CategoryViolation::BadIdentity {
                object: 0,
                morphism: unit,
                witness: None,
            }]));
        }
        Self::from_fn(1, &vec![(0, 0); m], vec![unit], |g, f| table[g][f])
    }

    /// Thin category of a preorder on `n` elements; one morphism per related pair.
    pub fn preorder(n: usize, leq: impl Fn(Obj, Obj) -> bool) -> Result<Self, ValidationError> {
        let endpoints: Vec<(Obj, Obj)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| leq(a, b))
            .collect();
        let lookup = |a: Obj, b: Obj| endpoints.iter().position(|&e| e == (a, b));
        let mut identities = Vec::with_capacity(n);
        for x in 0..n {
            match lookup(x, x) {
                Some(i) => identities.push(i),
                None => {
                    return Err(ValidationError(vec![CategoryViolation::IdentityCount {
                        expected: n,
                        found: identities.len(),
                    }]))
                }
            }
        }
        let ends = endpoints.clone();
        Self::from_fn(n, &endpoints, identities, move |g, f| {
            lookup(ends[f].0, ends[g].1).unwrap_or(usize::MAX)
        })
    }

    /// Reverses every arrow; `comp_op(f, g) = comp(g, f)`. Ids are preserved.
    pub fn opposite(&self) -> Self {
        let m = self.morphism_count();
        let mut comp = vec![UNDEFINED; m * m];
        for g in 0..m {
            for f in 0..m {
                comp[f * m + g] = self.comp[g * m + f];
            }
        }
        let mut homs = vec![Vec::new(); self.objects * self.objects];
        for a in 0..self.objects {
            for b in 0..self.objects {
                homs[b * self.objects + a] = self.homs[a * self.objects + b].clone();
            }
        }
        FinCategory {
            objects: self.objects,
            src: self.dst.clone(),
            dst: self.src.clone(),
            identity: self.identity.clone(),
            comp,
            homs,
        }
    }

    pub fn to_raw(&self) -> RawCategory {
        let m = self.morphism_count();
        let mut comp = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(r) = self.compose(g, f) {
                    comp.push([g, f, r]);
                }
            }
        }
        RawCategory {
            objects: self.objects,
            morphisms: self.morphisms().map(|f| [self.src[f], self.dst[f]]).collect(),
            identities: self.identity.clone(),
            comp,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> Range<Obj> {
        0..self.objects
    }

    pub fn morphisms(&self) -> Range<Mor> {
        0..self.src.len()
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.src[f]
    }

    pub fn dst(&self, f: Mor) -> Obj {
        self.dst[f]
    }

    pub fn identity(&self, x: Obj) -> Mor {
        self.identity[x]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g∘f` ("g after f"), or `None` when `dst(f) != src(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        let m = self.morphism_count();
        match self.comp[g * m + f] {
            UNDEFINED => None,
            r => Some(r as Mor),
        }
    }

    /// Composite of a path given in diagram order: `seq(&[f, g, h]) = h∘g∘f`.
    pub fn seq(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &next| self.compose(next, acc))
    }

    /// Morphisms `a -> b` in id order.
    pub fn hom_set(&self, a: Obj, b: Obj) -> Result<&[Mor], FinCatError> {
        for x in [a, b] {
            if x >= self.objects {
                return Err(FinCatError::UnknownObject(x));
            }
        }
        Ok(&self.homs[a * self.objects + b])
    }

    /// Hom-set for ids already known to be objects.
    pub(crate) fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects + b]
    }

    /// Two-sided inverse by exhaustive search of `hom(dst f, src f)`.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (s, d) = (self.src[f], self.dst[f]);
        self.hom(d, s).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity[s]) && self.compose(f, g) == Some(self.identity[d])
        })
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }
}

fn check_caps(n: usize, m: usize, errs: &mut Vec<CategoryViolation>) {
    if n > MAX_OBJECTS {
        errs.push(CategoryViolation::CapExceeded {
            what: "objects",
            count: n,
            cap: MAX_OBJECTS,
        });
    }
    if m > MAX_MORPHISMS {
        errs.push(CategoryViolation::CapExceeded {
            what: "morphisms",
            count: m,
            cap: MAX_MORPHISMS,
        });
    }
}
