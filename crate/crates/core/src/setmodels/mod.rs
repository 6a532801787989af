//! Skew monoidal structures on finite sets driven by a magma.
//!
//! For a magma `M` with designated element `e`, the tensor is
//! `X ⊗ Y = M × X × Y` with structure maps
//!
//! - `α(m, (n, x, y), z) = (m·n, x, (m, y, z))`
//! - `λ(m, i, x) = x`
//! - `ρ(x) = (e, x, i₀)`
//!
//! where the unit set `I` is a point. The cartesian variant takes the trivial
//! magma and a two-element `I = {a, b}` with `i₀ = a`. The five axioms are
//! evaluated elementwise on free sets of chosen sizes.

mod adapter;
mod census;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use adapter::{to_finite_structure, AdapterError, DEFAULT_MAX_NODES};
pub use census::{
    census, census_count, independence_certificates, Census, CensusClass, Certificate,
    CertificateSource, SizeSlice,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagmaError {
    #[error("magma must have at least one element")]
    Empty,
    #[error("table must be {size}x{size}")]
    TableShape { size: usize },
    #[error("table entry {value} at ({row}, {col}) is not an element")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("designated element {0} is not an element")]
    Designated(usize),
    #[error("test sizes must all be at least 1")]
    TestSize,
}

/// A finite set with a binary operation and a designated element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMagma", into = "RawMagma")]
pub struct Magma {
    size: usize,
    table: Vec<usize>,
    designated: usize,
}

#[derive(Serialize, Deserialize)]
struct RawMagma {
    size: usize,
    rows: Vec<Vec<usize>>,
    designated: usize,
}

impl TryFrom<RawMagma> for Magma {
    type Error = MagmaError;
    fn try_from(r: RawMagma) -> Result<Self, MagmaError> {
        Magma::new(r.size, &r.rows, r.designated)
    }
}

impl From<Magma> for RawMagma {
    fn from(m: Magma) -> Self {
        RawMagma {
            size: m.size,
            rows: m.rows(),
            designated: m.designated,
        }
    }
}

impl Magma {
    /// `rows[x][y]` is `x·y`.
    pub fn new(size: usize, rows: &[Vec<usize>], designated: usize) -> Result<Self, MagmaError> {
        if size == 0 {
            return Err(MagmaError::Empty);
        }
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(MagmaError::TableShape { size });
        }
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= size {
                    return Err(MagmaError::EntryOutOfRange { row, col, value });
                }
            }
        }
        if designated >= size {
            return Err(MagmaError::Designated(designated));
        }
        Ok(Magma {
            size,
            table: rows.concat(),
            designated,
        })
    }

    pub(crate) fn from_flat(size: usize, table: Vec<usize>, designated: usize) -> Self {
        debug_assert_eq!(table.len(), size * size);
        Magma {
            size,
            table,
            designated,
        }
    }

    /// One element, `e·e = e`.
    pub fn trivial() -> Self {
        Magma::from_flat(1, vec![0], 0)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn designated(&self) -> usize {
        self.designated
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.op(self.op(x, y), z) == self.op(x, self.op(y, z))))
        })
    }

    /// `x·e = x` for all `x`.
    pub fn designated_is_right_identity(&self) -> bool {
        (0..self.size).all(|x| self.op(x, self.designated) == x)
    }

    /// `e·x = x` for all `x`.
    pub fn designated_is_left_identity(&self) -> bool {
        (0..self.size).all(|x| self.op(self.designated, x) == x)
    }

    /// Display name: the designated element is `1`, the rest `a`, `b`, ... in order.
    pub fn element_name(&self, x: usize) -> String {
        if x == self.designated {
            return "1".to_string();
        }
        let k = if x < self.designated { x } else { x - 1 };
        if k < 26 {
            ((b'a' + k as u8) as char).to_string()
        } else {
            format!("m{k}")
        }
    }

    /// Rows written with element names, e.g. `(1,a,b | a,1,b | b,a,1)`.
    pub fn display_rows(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|&v| self.element_name(v)).collect::<Vec<_>>().join(","))
            .collect();
        format!("({})", rows.join(" | "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// `X ⊗ Y = M × X × Y`, one-point unit.
    Magma(Magma),
    /// `X ⊗ Y = X × Y`, unit set of the given size, `ρ` picks its first element.
    CartesianUnitUnit { unit_size: usize },
}

/// A model together with the sizes of the free sets it is instantiated at.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointwiseModel {
    pub kind: ModelKind,
    pub test_sizes: Vec<usize>,
}

impl PointwiseModel {
    pub fn new(kind: ModelKind, test_sizes: Vec<usize>) -> Result<Self, MagmaError> {
        if test_sizes.is_empty() || test_sizes.contains(&0) {
            return Err(MagmaError::TestSize);
        }
        if let ModelKind::CartesianUnitUnit { unit_size: 0 } = kind {
            return Err(MagmaError::Empty);
        }
        Ok(PointwiseModel { kind, test_sizes })
    }

    /// Instantiated at singletons only.
    pub fn magma(m: Magma) -> Self {
        PointwiseModel {
            kind: ModelKind::Magma(m),
            test_sizes: vec![1],
        }
    }

    pub fn cartesian(unit_size: usize) -> Self {
        PointwiseModel {
            kind: ModelKind::CartesianUnitUnit { unit_size },
            test_sizes: vec![1],
        }
    }

    pub(crate) fn parts(&self) -> (Magma, usize) {
        match &self.kind {
            ModelKind::Magma(m) => (m.clone(), 1),
            ModelKind::CartesianUnitUnit { unit_size } => (Magma::trivial(), *unit_size),
        }
    }
}

/// Which of the five axioms hold, in the order pentagon, left, mid, right, unit-unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomSignature {
    pub pentagon: bool,
    pub left: bool,
    pub mid: bool,
    pub right: bool,
    pub unitunit: bool,
}

impl AxiomSignature {
    pub const ALL_TRUE: AxiomSignature = AxiomSignature::from_array([true; 5]);

    pub const fn from_array(a: [bool; 5]) -> Self {
        AxiomSignature {
            pentagon: a[0],
            left: a[1],
            mid: a[2],
            right: a[3],
            unitunit: a[4],
        }
    }

    pub fn to_array(self) -> [bool; 5] {
        [self.pentagon, self.left, self.mid, self.right, self.unitunit]
    }

    /// Signature with exactly axiom `k` (0-based, in field order) failing.
    pub fn only_failing(k: usize) -> Self {
        let mut a = [true; 5];
        a[k] = false;
        Self::from_array(a)
    }

    /// Exchanges the left and right flags.
    pub fn dual(self) -> Self {
        AxiomSignature {
            left: self.right,
            right: self.left,
            ..self
        }
    }
}

/// Swaps the left and right unit flags, the effect of reversing tensor and arrows.
pub fn dual_signature(s: AxiomSignature) -> AxiomSignature {
    s.dual()
}

impl Ord for AxiomSignature {
    /// More passing axioms first, earlier axioms weighing more.
    fn cmp(&self, other: &Self) -> Ordering {
        other.to_array().cmp(&self.to_array())
    }
}

impl PartialOrd for AxiomSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AxiomSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags: Vec<&str> = self.to_array().iter().map(|&b| if b { "T" } else { "F" }).collect();
        write!(f, "({})", flags.join(","))
    }
}

/// An element of a tensor word: a leaf index or `(m, left, right)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Elem {
    Leaf(usize),
    Node(usize, Box<Elem>, Box<Elem>),
}

impl Elem {
    fn node(m: usize, a: Elem, b: Elem) -> Elem {
        Elem::Node(m, Box::new(a), Box::new(b))
    }
}

/// Object expression for pointwise evaluation.
#[derive(Debug, Clone)]
enum Shape {
    /// A free set, named for display.
    Var(char, usize),
    Unit,
    Tensor(Box<Shape>, Box<Shape>),
}

fn t(a: Shape, b: Shape) -> Shape {
    Shape::Tensor(Box::new(a), Box::new(b))
}

/// Magma, unit set size, and the element of the unit picked by `ρ`.
#[derive(Debug, Clone)]
pub(crate) struct SetModel {
    pub magma: Magma,
    pub unit_size: usize,
}

impl SetModel {
    pub fn of(model: &PointwiseModel) -> Self {
        let (magma, unit_size) = model.parts();
        SetModel { magma, unit_size }
    }

    fn unit_point(&self) -> usize {
        0
    }

    fn elements(&self, s: &Shape) -> Vec<Elem> {
        match s {
            Shape::Var(_, k) => (0..*k).map(Elem::Leaf).collect(),
            Shape::Unit => (0..self.unit_size).map(Elem::Leaf).collect(),
            Shape::Tensor(a, b) => {
                let (ea, eb) = (self.elements(a), self.elements(b));
                let mut out = Vec::with_capacity(self.magma.size() * ea.len() * eb.len());
                for m in 0..self.magma.size() {
                    for x in &ea {
                        for y in &eb {
                            out.push(Elem::node(m, x.clone(), y.clone()));
                        }
                    }
                }
                out
            }
        }
    }

    /// `α(m, (n, x, y), z) = (m·n, x, (m, y, z))`.
    pub fn alpha(&self, e: &Elem) -> Elem {
        let Elem::Node(m, inner, z) = e else {
            panic!("α applied to a leaf")
        };
        let Elem::Node(n, x, y) = inner.as_ref() else {
            panic!("α applied to a non-nested element")
        };
        Elem::node(self.magma.op(*m, *n), (**x).clone(), Elem::node(*m, (**y).clone(), (**z).clone()))
    }

    /// `λ(m, i, x) = x`.
    pub fn lambda(&self, e: &Elem) -> Elem {
        let Elem::Node(_, _, x) = e else {
            panic!("λ applied to a leaf")
        };
        (**x).clone()
    }

    /// `ρ(x) = (e, x, i₀)`.
    pub fn rho(&self, x: &Elem) -> Elem {
        Elem::node(self.magma.designated(), x.clone(), Elem::Leaf(self.unit_point()))
    }

    fn left_of(f: impl Fn(&Elem) -> Elem) -> impl Fn(&Elem) -> Elem {
        move |e| match e {
            Elem::Node(m, a, b) => Elem::node(*m, f(a), (**b).clone()),
            Elem::Leaf(_) => panic!("tensor of maps applied to a leaf"),
        }
    }

    fn right_of(f: impl Fn(&Elem) -> Elem) -> impl Fn(&Elem) -> Elem {
        move |e| match e {
            Elem::Node(m, a, b) => Elem::node(*m, (**a).clone(), f(b)),
            Elem::Leaf(_) => panic!("tensor of maps applied to a leaf"),
        }
    }

    /// First element of `domain` where the two maps differ.
    fn first_difference(
        &self,
        domain: &Shape,
        lhs: impl Fn(&Elem) -> Elem,
        rhs: impl Fn(&Elem) -> Elem,
    ) -> Option<Elem> {
        self.elements(domain).into_iter().find(|e| lhs(e) != rhs(e))
    }

    fn check(&self, axiom: usize, size: usize) -> Option<(Shape, Elem)> {
        let v = |c: char| Shape::Var(c, size);
        match axiom {
            0 => {
                let dom = t(t(t(v('w'), v('x')), v('y')), v('z'));
                let top = |e: &Elem| self.alpha(&self.alpha(e));
                let bottom = |e: &Elem| {
                    let a = Self::left_of(|x| self.alpha(x))(e);
                    let b = self.alpha(&a);
                    Self::right_of(|x| self.alpha(x))(&b)
                };
                self.first_difference(&dom, top, bottom).map(|e| (dom, e))
            }
            1 => {
                let dom = t(t(Shape::Unit, v('x')), v('y'));
                let lhs = |e: &Elem| self.lambda(&self.alpha(e));
                let rhs = Self::left_of(|x| self.lambda(x));
                self.first_difference(&dom, lhs, rhs).map(|e| (dom, e))
            }
            2 => {
                let dom = t(v('x'), v('y'));
                let lhs = |e: &Elem| {
                    let a = Self::left_of(|x| self.rho(x))(e);
                    let b = self.alpha(&a);
                    Self::right_of(|x| self.lambda(x))(&b)
                };
                self.first_difference(&dom, lhs, |e| e.clone()).map(|e| (dom, e))
            }
            3 => {
                let dom = t(v('x'), v('y'));
                let lhs = |e: &Elem| self.alpha(&self.rho(e));
                let rhs = Self::right_of(|x| self.rho(x));
                self.first_difference(&dom, lhs, rhs).map(|e| (dom, e))
            }
            4 => {
                let dom = Shape::Unit;
                let lhs = |e: &Elem| self.lambda(&self.rho(e));
                self.first_difference(&dom, lhs, |e| e.clone()).map(|e| (dom, e))
            }
            _ => unreachable!("five axioms"),
        }
    }

    fn render(&self, shape: &Shape, e: &Elem, out: &mut Vec<String>, flat: &mut Vec<usize>) -> String {
        match (shape, e) {
            (Shape::Var(c, k), Elem::Leaf(i)) => {
                flat.push(*i);
                let s = if *k == 1 { c.to_string() } else { format!("{c}{i}") };
                out.push(s.clone());
                s
            }
            (Shape::Unit, Elem::Leaf(i)) => {
                flat.push(*i);
                let s = if self.unit_size == 1 {
                    "*".to_string()
                } else {
                    ((b'a' + *i as u8) as char).to_string()
                };
                out.push(s.clone());
                s
            }
            (Shape::Tensor(sa, sb), Elem::Node(m, a, b)) => {
                let show_m = self.magma.size() > 1;
                let mut parts = Vec::new();
                if show_m {
                    flat.push(*m);
                    let name = self.magma.element_name(*m);
                    out.push(name.clone());
                    parts.push(name);
                }
                parts.push(self.render(sa, a, out, flat));
                parts.push(self.render(sb, b, out, flat));
                format!("({})", parts.join(","))
            }
            _ => unreachable!("element matches its shape"),
        }
    }
}

/// An input where the two sides of an axiom differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelWitness {
    /// Size of the free sets used.
    pub size: usize,
    /// Coordinates flattened in factor order `(m, x…, y…)`; magma
    /// coordinates are omitted for the trivial magma.
    pub coordinates: Vec<usize>,
    /// The same coordinates by display name.
    pub names: Vec<String>,
    /// Nested rendering, e.g. `(a,(b,(a,w,x),y),z)`.
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelEvaluation {
    pub signature: AxiomSignature,
    /// First witness per failing axiom, in field order.
    pub witnesses: [Option<ModelWitness>; 5],
}

/// Checks each axiom elementwise at every test size; an axiom fails if it
/// fails at any size, and the witness comes from the first such size.
pub fn evaluate_model(model: &PointwiseModel) -> ModelEvaluation {
    let sm = SetModel::of(model);
    let mut flags = [true; 5];
    let mut witnesses: [Option<ModelWitness>; 5] = Default::default();
    for axiom in 0..5 {
        for &size in &model.test_sizes {
            if let Some((shape, e)) = sm.check(axiom, size) {
                let (mut names, mut coordinates) = (Vec::new(), Vec::new());
                let element = sm.render(&shape, &e, &mut names, &mut coordinates);
                flags[axiom] = false;
                witnesses[axiom] = Some(ModelWitness {
                    size,
                    coordinates,
                    names,
                    element,
                });
                break;
            }
        }
    }
    ModelEvaluation {
        signature: AxiomSignature::from_array(flags),
        witnesses,
    }
}

/// Signature only, at singleton free sets.
pub(crate) fn signature_of(m: &Magma) -> AxiomSignature {
    let sm = SetModel {
        magma: m.clone(),
        unit_size: 1,
    };
    AxiomSignature::from_array(std::array::from_fn(|k| sm.check(k, 1).is_none()))
}

/// Names accepted by [`builtin_model`].
pub const BUILTIN_MODEL_NAMES: [&str; 4] = ["paper-left", "paper-mid", "paper-right", "paper-unitunit"];

/// The four independence models: the three magma tables and the cartesian model.
pub fn builtin_models() -> Vec<(&'static str, PointwiseModel)> {
    let left = Magma::new(3, &[vec![0, 1, 2], vec![1, 0, 2], vec![2, 1, 0]], 0).expect("valid table");
    let mid = Magma::new(2, &[vec![0, 1], vec![0, 1]], 0).expect("valid table");
    let right = Magma::new(2, &[vec![0, 0], vec![1, 1]], 0).expect("valid table");
    vec![
        (BUILTIN_MODEL_NAMES[0], PointwiseModel::magma(left)),
        (BUILTIN_MODEL_NAMES[1], PointwiseModel::magma(mid)),
        (BUILTIN_MODEL_NAMES[2], PointwiseModel::magma(right)),
        (BUILTIN_MODEL_NAMES[3], PointwiseModel::cartesian(2)),
    ]
}

pub fn builtin_model(name: &str) -> Option<PointwiseModel> {
    builtin_models().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}
