//! Families of morphisms indexed by tuples of objects, and naturality.

use serde::{Deserialize, Serialize};

use super::{FinCatError, FinCategory, FinFunctor, Mor, Obj};

type ObjMap<'a> = Box<dyn Fn(&[Obj]) -> Option<Obj> + Send + Sync + 'a>;
type MorMap<'a> = Box<dyn Fn(&[Mor]) -> Option<Mor> + Send + Sync + 'a>;

/// A (possibly partial) functor `C^k -> D`, given by its action on tuples.
pub struct Leg<'a> {
    arity: usize,
    on_objects: ObjMap<'a>,
    on_morphisms: MorMap<'a>,
}

impl<'a> Leg<'a> {
    pub fn new(
        arity: usize,
        on_objects: impl Fn(&[Obj]) -> Option<Obj> + Send + Sync + 'a,
        on_morphisms: impl Fn(&[Mor]) -> Option<Mor> + Send + Sync + 'a,
    ) -> Self {
        Leg {
            arity,
            on_objects: Box::new(on_objects),
            on_morphisms: Box::new(on_morphisms),
        }
    }

    /// The identity functor, arity one.
    pub fn identity() -> Leg<'static> {
        Leg::new(1, |xs| Some(xs[0]), |fs| Some(fs[0]))
    }

    pub fn functor(f: &'a FinFunctor) -> Self {
        Leg::new(1, |xs| Some(f.object(xs[0])), |fs| Some(f.morphism(fs[0])))
    }

    /// Constant at `object`, sending every morphism tuple to its identity.
    pub fn constant(target: &'a FinCategory, arity: usize, object: Obj) -> Self {
        let id = target.identity(object);
        Leg::new(arity, move |_| Some(object), move |_| Some(id))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn object(&self, xs: &[Obj]) -> Option<Obj> {
        (self.on_objects)(xs)
    }

    pub fn morphism(&self, fs: &[Mor]) -> Option<Mor> {
        (self.on_morphisms)(fs)
    }
}

/// Components `eta_{x1..xk}` stored in lexicographic order of the index tuple.
///
/// A `None` component marks an index where the family is not defined, which
/// only happens on bounded structures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorphismFamily {
    arity: usize,
    index_objects: usize,
    components: Vec<Option<Mor>>,
}

impl MorphismFamily {
    pub fn new(
        arity: usize,
        index_objects: usize,
        components: Vec<Option<Mor>>,
    ) -> Result<Self, FinCatError> {
        let expected = index_objects.pow(arity as u32);
        if components.len() != expected {
            return Err(FinCatError::ComponentCount {
                expected,
                found: components.len(),
            });
        }
        Ok(MorphismFamily {
            arity,
            index_objects,
            components,
        })
    }

    /// Total family from a list of components.
    pub fn total(arity: usize, index_objects: usize, components: Vec<Mor>) -> Result<Self, FinCatError> {
        Self::new(arity, index_objects, components.into_iter().map(Some).collect())
    }

    pub fn tabulate(
        arity: usize,
        index_objects: usize,
        mut f: impl FnMut(&[Obj]) -> Option<Mor>,
    ) -> Self {
        let components = index_tuples(index_objects, arity).map(|t| f(&t)).collect();
        MorphismFamily {
            arity,
            index_objects,
            components,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn index_objects(&self) -> usize {
        self.index_objects
    }

    pub fn components(&self) -> &[Option<Mor>] {
        &self.components
    }

    pub fn is_total(&self) -> bool {
        self.components.iter().all(Option::is_some)
    }

    fn offset(&self, index: &[Obj]) -> usize {
        index.iter().fold(0, |acc, &x| acc * self.index_objects + x)
    }

    pub fn get(&self, index: &[Obj]) -> Option<Mor> {
        debug_assert_eq!(index.len(), self.arity);
        self.components[self.offset(index)]
    }

    /// Component of a unary family.
    pub fn at(&self, x: Obj) -> Option<Mor> {
        self.components[x]
    }

    /// Checks that every defined component runs `left(index) -> right(index)`,
    /// and that components are defined exactly where both legs are.
    pub fn check_shape(&self, target: &FinCategory, left: &Leg, right: &Leg) -> Result<(), FinCatError> {
        for leg in [left, right] {
            if leg.arity() != self.arity {
                return Err(FinCatError::ArityMismatch {
                    family: self.arity,
                    leg: leg.arity(),
                });
            }
        }
        for (index, &component) in index_tuples(self.index_objects, self.arity).zip(&self.components) {
            let expected = left.object(&index).zip(right.object(&index));
            let found = match component {
                Some(c) if c >= target.morphism_count() => return Err(FinCatError::UnknownMorphism(c)),
                Some(c) => Some((target.src(c), target.dst(c))),
                None => None,
            };
            if expected != found {
                return Err(FinCatError::ShapeMismatch {
                    index,
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }
}

/// Which morphism tuples a naturality check ranges over.
#[derive(Debug, Clone, Copy)]
pub enum NaturalityScope<'s> {
    /// Every tuple of morphisms of the index category.
    AllMorphisms,
    /// Tuples with one coordinate a listed generator and identities elsewhere.
    Generators(&'s [Mor]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Naturality {
    Natural,
    /// First failing square, given by the morphism tuple it is indexed by.
    Fails { morphisms: Vec<Mor> },
}

impl Naturality {
    pub fn holds(&self) -> bool {
        matches!(self, Naturality::Natural)
    }
}

/// Checks `right(fs) ∘ eta_X = eta_Y ∘ left(fs)` for each morphism tuple
/// `fs: X -> Y` in scope. Squares touching an undefined component or leg
/// value are skipped.
pub fn is_natural(
    index: &FinCategory,
    target: &FinCategory,
    family: &MorphismFamily,
    left: &Leg,
    right: &Leg,
    scope: NaturalityScope,
) -> Result<Naturality, FinCatError> {
    family.check_shape(target, left, right)?;
    let k = family.arity();
    let square = |fs: &[Mor]| -> bool {
        let xs: Vec<Obj> = fs.iter().map(|&f| index.src(f)).collect();
        let ys: Vec<Obj> = fs.iter().map(|&f| index.dst(f)).collect();
        let (Some(eta_x), Some(eta_y)) = (family.get(&xs), family.get(&ys)) else {
            return true;
        };
        let (Some(lf), Some(rf)) = (left.morphism(fs), right.morphism(fs)) else {
            return true;
        };
        target.compose(rf, eta_x) == target.compose(eta_y, lf)
    };
    match scope {
        NaturalityScope::AllMorphisms => {
            for fs in index_tuples(index.morphism_count(), k) {
                if !square(&fs) {
                    return Ok(Naturality::Fails { morphisms: fs });
                }
            }
        }
        NaturalityScope::Generators(gens) => {
            for coord in 0..k {
                for &g in gens {
                    for rest in index_tuples(index.object_count(), k.saturating_sub(1)) {
                        let mut fs: Vec<Mor> = rest.iter().map(|&x| index.identity(x)).collect();
                        fs.insert(coord, g);
                        if !square(&fs) {
                            return Ok(Naturality::Fails { morphisms: fs });
                        }
                    }
                }
            }
        }
    }
    Ok(Naturality::Natural)
}

/// All `k`-tuples over `0..n` in lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if n == 0 && k > 0 { None } else { Some(vec![0; k]) };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < n {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bz2() -> FinCategory {
        FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<_> = index_tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(index_tuples(3, 0).count(), 1);
        assert_eq!(index_tuples(0, 2).count(), 0);
    }

    #[test]
    fn identity_family_is_natural() {
        let c = bz2();
        let fam = MorphismFamily::total(1, 1, vec![0]).unwrap();
        let res = is_natural(
            &c,
            &c,
            &fam,
            &Leg::identity(),
            &Leg::identity(),
            NaturalityScope::AllMorphisms,
        )
        .unwrap();
        assert!(res.holds());
    }

    #[test]
    fn non_central_component_fails() {
        // left-zero monoid {1, a, b}: a is not central, b∘a != a∘b
        let c = FinCategory::from_monoid(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
        let fam = MorphismFamily::total(1, 1, vec![1]).unwrap();
        let res = is_natural(
            &c,
            &c,
            &fam,
            &Leg::identity(),
            &Leg::identity(),
            NaturalityScope::AllMorphisms,
        )
        .unwrap();
        assert_eq!(res, Naturality::Fails { morphisms: vec![2] });
    }

    #[test]
    fn generators_scope_agrees_on_binary_families() {
        let c = FinCategory::preorder(2, |a, b| a <= b).unwrap();
        let proj1 = Leg::new(2, |xs| Some(xs[0]), |fs| Some(fs[0]));
        let join_obj = |xs: &[Obj]| Some(xs[0].max(xs[1]));
        let cref = &c;
        let join = Leg::new(2, join_obj, move |fs: &[Mor]| {
            let s = cref.src(fs[0]).max(cref.src(fs[1]));
            let d = cref.dst(fs[0]).max(cref.dst(fs[1]));
            cref.hom(s, d).first().copied()
        });
        let fam = MorphismFamily::tabulate(2, 2, |xs| c.hom(xs[0], xs[0].max(xs[1])).first().copied());
        let all: Vec<Mor> = c.morphisms().collect();
        let a = is_natural(&c, &c, &fam, &proj1, &join, NaturalityScope::AllMorphisms).unwrap();
        let g = is_natural(&c, &c, &fam, &proj1, &join, NaturalityScope::Generators(&all)).unwrap();
        assert!(a.holds());
        assert!(g.holds());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let c = FinCategory::discrete(2);
        let fam = MorphismFamily::total(1, 2, vec![1, 1]).unwrap();
        let err = is_natural(
            &c,
            &c,
            &fam,
            &Leg::identity(),
            &Leg::identity(),
            NaturalityScope::AllMorphisms,
        )
        .unwrap_err();
        assert!(matches!(err, FinCatError::ShapeMismatch { .. }));
    }

    #[test]
    fn wrong_component_count() {
        assert_eq!(
            MorphismFamily::total(2, 2, vec![0, 0, 0]),
            Err(FinCatError::ComponentCount { expected: 4, found: 3 })
        );
    }
}
