//! Small named structures and functors used by the binary and the test suites.

use crate::fincat::{FinCategory, FinFunctor, MorphismFamily, Obj};
use crate::monfun::SkewMonoidalCategory;
use crate::setmodels::{builtin_model, PointwiseModel, BUILTIN_MODEL_NAMES};
use crate::skewstruct::{constant_tensor, strict_commutative_monoid, TensorStructure, UnitCandidate};

/// A structure with an optional chosen unit.
#[derive(Debug, Clone)]
pub struct StructureFixture {
    pub name: &'static str,
    pub structure: TensorStructure,
    pub unit: Option<UnitCandidate>,
}

impl StructureFixture {
    pub fn with_unit(&self) -> Option<SkewMonoidalCategory> {
        self.unit.clone().map(|unit| SkewMonoidalCategory {
            structure: self.structure.clone(),
            unit,
        })
    }
}

/// A functor with a candidate `φ`; the unit map is left to enumeration.
#[derive(Debug, Clone)]
pub struct FunctorFixture {
    pub name: &'static str,
    pub src: SkewMonoidalCategory,
    pub dst: SkewMonoidalCategory,
    pub functor: FinFunctor,
    pub phi: MorphismFamily,
}

fn smc(structure: TensorStructure, unit: UnitCandidate) -> SkewMonoidalCategory {
    SkewMonoidalCategory { structure, unit }
}

fn bz2_category() -> FinCategory {
    FinCategory::from_monoid(&[vec![0, 1], vec![1, 0]], 0).expect("group table")
}

/// The only morphism `a -> b` of a thin category.
fn arrow(c: &FinCategory, a: Obj, b: Obj) -> Option<usize> {
    c.hom(a, b).first().copied()
}

/// Structure on a thin category: the tensor of morphisms and the associator
/// are the unique arrows between the right objects.
fn thin_structure(c: FinCategory, tensor: impl Fn(Obj, Obj) -> Obj) -> TensorStructure {
    let n = c.object_count();
    let assoc = MorphismFamily::tabulate(3, n, |t| {
        arrow(&c, tensor(tensor(t[0], t[1]), t[2]), tensor(t[0], tensor(t[1], t[2])))
    });
    let cc = c.clone();
    TensorStructure::from_fn(
        c,
        |x, y| Some(tensor(x, y)),
        |f, g| arrow(&cc, tensor(cc.src(f), cc.src(g)), tensor(cc.dst(f), cc.dst(g))),
        assoc,
        None,
    )
    .expect("thin structure")
}

/// Unit at `i` on a thin category, with `λ` and `ρ` the unique arrows.
fn thin_unit(s: &TensorStructure, i: Obj) -> UnitCandidate {
    let c = s.base();
    let lambda = c.objects().map(|x| arrow(c, s.tensor(i, x)?, x)).collect();
    let rho = c.objects().map(|x| arrow(c, x, s.tensor(x, i)?)).collect();
    UnitCandidate::new(s, i, lambda, rho).expect("thin unit")
}

fn chain(n: usize) -> FinCategory {
    FinCategory::preorder(n, |a, b| a <= b).expect("chain")
}

pub fn terminal() -> SkewMonoidalCategory {
    let (s, u) = strict_commutative_monoid(FinCategory::terminal()).expect("terminal structure");
    smc(s, u)
}

/// Two isomorphic objects, tensor constant at object `0`, unit at `unit`.
pub fn codisc2(unit: Obj) -> SkewMonoidalCategory {
    let base = FinCategory::codiscrete(2);
    let s = constant_tensor(base.clone(), 0, |_, _, _| base.identity(0)).expect("codiscrete structure");
    // morphism a -> b has id 2a + b
    let u = UnitCandidate::new(&s, unit, vec![Some(0), Some(1)], vec![Some(0), Some(2)]).expect("codiscrete unit");
    smc(s, u)
}

/// The group of order two, strict, with the identity unit.
pub fn bz2() -> SkewMonoidalCategory {
    let (s, u) = strict_commutative_monoid(bz2_category()).expect("bz2 structure");
    smc(s, u)
}

/// Two objects, identities only, `X⊗Y = X`. Has no unit.
pub fn discrete2_projection() -> TensorStructure {
    thin_structure(FinCategory::discrete(2), |x, _| x)
}

/// Two objects, identities only, `X⊗Y = max(X, Y)`, unit `0`.
pub fn discrete2_max() -> SkewMonoidalCategory {
    let s = thin_structure(FinCategory::discrete(2), |x, y| x.max(y));
    let u = thin_unit(&s, 0);
    smc(s, u)
}

/// `0 -> 1` with `X⊗Y = max(X, Y)`, unit `0`.
pub fn arrow2_join() -> SkewMonoidalCategory {
    let s = thin_structure(chain(2), |x, y| x.max(y));
    let u = thin_unit(&s, 0);
    smc(s, u)
}

/// The chain `0 -> ... -> n-1` with `X⊗Y = X`, unit `0`; `λ_X: 0 -> X`
/// is not invertible for `X > 0`.
pub fn chain_left_projection(n: usize) -> SkewMonoidalCategory {
    let s = thin_structure(chain(n), |x, _| x);
    let u = thin_unit(&s, 0);
    smc(s, u)
}

/// Every fixture structure, with its chosen unit where it has one.
pub fn structure_corpus() -> Vec<StructureFixture> {
    let with = |name, c: SkewMonoidalCategory| StructureFixture {
        name,
        structure: c.structure,
        unit: Some(c.unit),
    };
    vec![
        with("terminal", terminal()),
        with("codisc2", codisc2(0)),
        with("bz2", bz2()),
        StructureFixture {
            name: "discrete2-proj",
            structure: discrete2_projection(),
            unit: None,
        },
        with("discrete2-max", discrete2_max()),
        with("arrow2-join", arrow2_join()),
        with("arrow2-leftproj", chain_left_projection(2)),
        with("chain3-leftproj", chain_left_projection(3)),
    ]
}

fn functor_of(src: &SkewMonoidalCategory, dst: &SkewMonoidalCategory, obj_map: Vec<Obj>) -> FinFunctor {
    let (c, d) = (src.structure.base(), dst.structure.base());
    let mor_map = c
        .morphisms()
        .map(|f| arrow(d, obj_map[c.src(f)], obj_map[c.dst(f)]).expect("monotone map"))
        .collect();
    FinFunctor::new(c, d, obj_map, mor_map).expect("thin functor")
}

/// `φ_{X,Y}` as the unique arrow `FX⊗FY -> F(X⊗Y)` in a thin target.
fn thin_phi(src: &SkewMonoidalCategory, dst: &SkewMonoidalCategory, f: &FinFunctor) -> MorphismFamily {
    let (s, t) = (&src.structure, &dst.structure);
    MorphismFamily::tabulate(2, s.object_count(), |p| {
        let a = t.tensor(f.object(p[0]), f.object(p[1]))?;
        let b = f.object(s.tensor(p[0], p[1])?);
        arrow(dst.structure.base(), a, b)
    })
}

/// Functors between fixtures, covering strong, normal, lax-only, and
/// unit-map-free cases.
pub fn functor_corpus() -> Vec<FunctorFixture> {
    let mut out = Vec::new();
    let t = terminal();
    out.push(FunctorFixture {
        name: "terminal-identity",
        functor: FinFunctor::identity(t.structure.base()),
        phi: MorphismFamily::total(2, 1, vec![0]).expect("one component"),
        src: t.clone(),
        dst: t.clone(),
    });
    let c1 = codisc2(1);
    out.push(FunctorFixture {
        name: "terminal-to-codisc2",
        functor: FinFunctor::new(t.structure.base(), c1.structure.base(), vec![0], vec![0]).expect("functor"),
        phi: MorphismFamily::total(2, 1, vec![0]).expect("one component"),
        src: t.clone(),
        dst: c1,
    });
    let b = bz2();
    out.push(FunctorFixture {
        name: "bz2-twist",
        functor: FinFunctor::identity(b.structure.base()),
        phi: MorphismFamily::total(2, 1, vec![1]).expect("one component"),
        src: b.clone(),
        dst: b,
    });
    let dm = discrete2_max();
    out.push(FunctorFixture {
        name: "terminal-to-discrete2-max",
        functor: FinFunctor::new(t.structure.base(), dm.structure.base(), vec![1], vec![1]).expect("functor"),
        phi: MorphismFamily::total(2, 1, vec![1]).expect("one component"),
        src: t,
        dst: dm,
    });
    let (join, lp2, lp3) = (arrow2_join(), chain_left_projection(2), chain_left_projection(3));
    let f = functor_of(&join, &lp2, vec![0, 1]);
    out.push(FunctorFixture {
        name: "arrow2-join-to-leftproj",
        phi: thin_phi(&join, &lp2, &f),
        functor: f,
        src: join.clone(),
        dst: lp2,
    });
    let f = functor_of(&join, &lp3, vec![1, 2]);
    out.push(FunctorFixture {
        name: "arrow2-join-to-chain3-shifted",
        phi: thin_phi(&join, &lp3, &f),
        functor: f,
        src: join,
        dst: lp3,
    });
    out
}

/// What a builtin name refers to.
#[derive(Debug, Clone)]
pub enum Builtin {
    Model(PointwiseModel),
    Structure(StructureFixture),
}

/// Names accepted by [`builtin`]: the four set models, then the structure corpus.
pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN_MODEL_NAMES
        .iter()
        .copied()
        .chain(structure_corpus().into_iter().map(|f| f.name))
        .collect()
}

pub fn builtin(name: &str) -> Option<Builtin> {
    if let Some(m) = builtin_model(name) {
        return Some(Builtin::Model(m));
    }
    structure_corpus().into_iter().find(|f| f.name == name).map(Builtin::Structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monfun::{classify, enumerate_unit_maps, MonoidalFunctorData};
    use crate::skewstruct::{check_all, normality_class, AxiomMask};
    use crate::units::enumerate_units;
    use crate::Budget;

    #[test]
    fn chosen_units_satisfy_all_axioms() {
        for f in structure_corpus() {
            if let Some(u) = &f.unit {
                assert!(check_all(&f.structure, Some(u), AxiomMask::ALL).all_pass(), "{}", f.name);
            }
        }
    }

    #[test]
    fn unit_counts() {
        let b = Budget::new(crate::DEFAULT_BUDGET);
        let counts: Vec<(&str, usize)> = structure_corpus()
            .iter()
            .map(|f| (f.name, enumerate_units(&f.structure, AxiomMask::ALL, &b).unwrap().len()))
            .collect();
        assert_eq!(
            counts,
            vec![
                ("terminal", 1),
                ("codisc2", 2),
                ("bz2", 2),
                ("discrete2-proj", 0),
                ("discrete2-max", 1),
                ("arrow2-join", 1),
                ("arrow2-leftproj", 1),
                ("chain3-leftproj", 1),
            ]
        );
    }

    #[test]
    fn left_projection_is_skew() {
        let c = chain_left_projection(2);
        let flags = normality_class(&c.structure, &c.unit).unwrap();
        assert!(flags.weakly_normal);
        assert!(!flags.left_normal);
        assert!(flags.right_normal);
    }

    #[test]
    fn functor_classifications() {
        let got: Vec<(&str, Option<&str>)> = functor_corpus()
            .iter()
            .map(|f| {
                let maps = enumerate_unit_maps(&f.src, &f.dst, &f.functor, &f.phi).unwrap();
                let class = maps.first().map(|&m| {
                    let data = MonoidalFunctorData {
                        functor: f.functor.clone(),
                        phi: f.phi.clone(),
                        unit_map: m,
                    };
                    classify(&f.src, &f.dst, &data).unwrap().name()
                });
                (f.name, class)
            })
            .collect();
        assert_eq!(
            got,
            vec![
                ("terminal-identity", Some("strong")),
                ("terminal-to-codisc2", Some("strong")),
                ("bz2-twist", Some("strong")),
                ("terminal-to-discrete2-max", None),
                ("arrow2-join-to-leftproj", Some("normal")),
                ("arrow2-join-to-chain3-shifted", Some("lax")),
            ]
        );
    }

    #[test]
    fn builtin_lookup() {
        assert!(matches!(builtin("paper-mid"), Some(Builtin::Model(_))));
        assert!(matches!(builtin("bz2"), Some(Builtin::Structure(_))));
        assert!(builtin("nope").is_none());
        assert_eq!(builtin_names().len(), 12);
    }
}
