//! Materializes a set model as a bounded structure on a finite category.
//!
//! Objects are the tensor words over the unit with at most `max_nodes`
//! tensor nodes; each word denotes its set of elements `M × A × B`.
//! Morphisms are the functions generated from identities, `α`, `λ` and `ρ`
//! under composition and tensor, kept only while both endpoints stay inside
//! the fragment.

use std::collections::HashMap;

use thiserror::Error;

use super::{PointwiseModel, SetModel};
use crate::fincat::{FinCategory, MorphismFamily, Obj, ValidationError, MAX_MORPHISMS, MAX_OBJECTS};
use crate::skewstruct::{StructureError, TensorStructure, UnitCandidate};

/// Enough depth for every instance of the five axioms at the unit.
pub const DEFAULT_MAX_NODES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdapterError {
    #[error("fragment exceeds caps: {objects} objects, at least {morphisms} morphisms")]
    CapExceeded { objects: usize, morphisms: usize },
    #[error(transparent)]
    Category(#[from] ValidationError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Clone, Copy)]
enum Shape {
    Unit,
    Node(Obj, Obj),
}

struct Fragment {
    shapes: Vec<Shape>,
    nodes: Vec<usize>,
    card: Vec<usize>,
    tensor: HashMap<(Obj, Obj), Obj>,
}

impl Fragment {
    fn new(magma_size: usize, unit_size: usize, max_nodes: usize) -> Self {
        let mut f = Fragment {
            shapes: vec![Shape::Unit],
            nodes: vec![0],
            card: vec![unit_size],
            tensor: HashMap::new(),
        };
        for total in 1..=max_nodes {
            let before = f.shapes.len();
            for l in 0..before {
                for r in 0..before {
                    if f.nodes[l] + f.nodes[r] + 1 == total {
                        f.shapes.push(Shape::Node(l, r));
                        f.nodes.push(total);
                        f.card.push(magma_size * f.card[l] * f.card[r]);
                        f.tensor.insert((l, r), f.shapes.len() - 1);
                    }
                }
            }
        }
        f
    }

    fn tensor(&self, x: Obj, y: Obj) -> Option<Obj> {
        self.tensor.get(&(x, y)).copied()
    }

    /// Splits an element of a node into `(m, a, b)`.
    fn split(&self, w: Obj, e: usize) -> (usize, usize, usize) {
        let Shape::Node(l, r) = self.shapes[w] else {
            unreachable!("split of the unit")
        };
        let (cl, cr) = (self.card[l], self.card[r]);
        (e / (cl * cr), (e / cr) % cl, e % cr)
    }

    fn join(&self, w: Obj, m: usize, a: usize, b: usize) -> usize {
        let Shape::Node(l, r) = self.shapes[w] else {
            unreachable!("join into the unit")
        };
        (m * self.card[l] + a) * self.card[r] + b
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Function {
    src: Obj,
    dst: Obj,
    map: Vec<u32>,
}

struct Closure {
    funcs: Vec<Function>,
    index: HashMap<Function, usize>,
    comp: HashMap<(usize, usize), usize>,
    tens: HashMap<(usize, usize), usize>,
}

impl Closure {
    fn add(&mut self, f: Function) -> usize {
        if let Some(&i) = self.index.get(&f) {
            return i;
        }
        let i = self.funcs.len();
        self.index.insert(f.clone(), i);
        self.funcs.push(f);
        i
    }
}

/// Builds the fragment of `model` with words of at most `max_nodes` tensors
/// over the unit, together with its unit `(I, λ, ρ)`.
///
/// Naturality is checked one coordinate at a time over all morphisms.
pub fn to_finite_structure(
    model: &PointwiseModel,
    max_nodes: usize,
) -> Result<(TensorStructure, UnitCandidate), AdapterError> {
    let sm = SetModel::of(model);
    let magma = &sm.magma;
    let frag = Fragment::new(magma.size(), sm.unit_size, max_nodes);
    let n = frag.shapes.len();
    if n > MAX_OBJECTS {
        return Err(AdapterError::CapExceeded { objects: n, morphisms: 0 });
    }
    let mut cl = Closure {
        funcs: Vec::new(),
        index: HashMap::new(),
        comp: HashMap::new(),
        tens: HashMap::new(),
    };
    for w in 0..n {
        cl.add(Function {
            src: w,
            dst: w,
            map: (0..frag.card[w] as u32).collect(),
        });
    }
    let mut alpha = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (Some(xy), Some(yz)) = (frag.tensor(x, y), frag.tensor(y, z)) else {
                    continue;
                };
                let (Some(s), Some(d)) = (frag.tensor(xy, z), frag.tensor(x, yz)) else {
                    continue;
                };
                let map = (0..frag.card[s])
                    .map(|e| {
                        let (m, p, c) = frag.split(s, e);
                        let (k, a, b) = frag.split(xy, p);
                        frag.join(d, magma.op(m, k), a, frag.join(yz, m, b, c)) as u32
                    })
                    .collect();
                alpha.insert((x, y, z), cl.add(Function { src: s, dst: d, map }));
            }
        }
    }
    let mut lambda = vec![None; n];
    let mut rho = vec![None; n];
    for x in 0..n {
        if let Some(s) = frag.tensor(0, x) {
            let map = (0..frag.card[s]).map(|e| frag.split(s, e).2 as u32).collect();
            lambda[x] = Some(cl.add(Function { src: s, dst: x, map }));
        }
        if let Some(d) = frag.tensor(x, 0) {
            let map = (0..frag.card[x])
                .map(|e| frag.join(d, magma.designated(), e, 0) as u32)
                .collect();
            rho[x] = Some(cl.add(Function { src: x, dst: d, map }));
        }
    }

    let cap_error = |m: usize| AdapterError::CapExceeded { objects: n, morphisms: m };
    let mut done = 0;
    while done < cl.funcs.len() {
        let count = cl.funcs.len();
        if count > MAX_MORPHISMS {
            return Err(cap_error(count));
        }
        for f in 0..count {
            for g in 0..count {
                if f < done && g < done {
                    continue;
                }
                let (ff, gf) = (&cl.funcs[f], &cl.funcs[g]);
                if ff.dst == gf.src {
                    let h = Function {
                        src: ff.src,
                        dst: gf.dst,
                        map: ff.map.iter().map(|&i| gf.map[i as usize]).collect(),
                    };
                    let id = cl.add(h);
                    cl.comp.insert((g, f), id);
                }
                let (ff, gf) = (&cl.funcs[f], &cl.funcs[g]);
                if let (Some(s), Some(d)) = (frag.tensor(ff.src, gf.src), frag.tensor(ff.dst, gf.dst)) {
                    let map = (0..frag.card[s])
                        .map(|e| {
                            let (m, a, b) = frag.split(s, e);
                            frag.join(d, m, ff.map[a] as usize, gf.map[b] as usize) as u32
                        })
                        .collect();
                    let id = cl.add(Function { src: s, dst: d, map });
                    cl.tens.insert((f, g), id);
                }
            }
            if cl.funcs.len() > MAX_MORPHISMS {
                return Err(cap_error(cl.funcs.len()));
            }
        }
        done = count;
    }

    let endpoints: Vec<(Obj, Obj)> = cl.funcs.iter().map(|f| (f.src, f.dst)).collect();
    let base = FinCategory::from_fn(n, &endpoints, (0..n).collect(), |g, f| cl.comp[&(g, f)])?;
    let assoc = MorphismFamily::tabulate(3, n, |t| alpha.get(&(t[0], t[1], t[2])).copied());
    let generators = Some(base.morphisms().collect());
    let s = TensorStructure::from_fn(
        base,
        |x, y| frag.tensor(x, y),
        |f, g| cl.tens.get(&(f, g)).copied(),
        assoc,
        generators,
    )?;
    let u = UnitCandidate::new(&s, 0, lambda, rho)?;
    Ok((s, u))
}
