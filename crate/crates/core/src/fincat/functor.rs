use serde::{Deserialize, Serialize};

use super::{FinCatError, FinCategory, Mor, Obj};

/// A functor between finite categories, stored as two lookup tables.
///
/// The source and target categories are not owned; [`FinFunctor::new`]
/// checks the tables against the pair it is given.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinFunctor {
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    pub fn new(
        source: &FinCategory,
        target: &FinCategory,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self, FinCatError> {
        if obj_map.len() != source.object_count() {
            return Err(FinCatError::FunctorTableLength { what: "objects" });
        }
        if mor_map.len() != source.morphism_count() {
            return Err(FinCatError::FunctorTableLength { what: "morphisms" });
        }
        if let Some(&x) = obj_map.iter().find(|&&x| x >= target.object_count()) {
            return Err(FinCatError::UnknownObject(x));
        }
        if let Some(&f) = mor_map.iter().find(|&&f| f >= target.morphism_count()) {
            return Err(FinCatError::UnknownMorphism(f));
        }
        for f in source.morphisms() {
            let image = mor_map[f];
            if target.src(image) != obj_map[source.src(f)] || target.dst(image) != obj_map[source.dst(f)] {
                return Err(FinCatError::FunctorEndpoints { morphism: f, image });
            }
        }
        for x in source.objects() {
            if mor_map[source.identity(x)] != target.identity(obj_map[x]) {
                return Err(FinCatError::FunctorIdentity(x));
            }
        }
        for f in source.morphisms() {
            for g in source.morphisms() {
                if let Some(gf) = source.compose(g, f) {
                    if target.compose(mor_map[g], mor_map[f]) != Some(mor_map[gf]) {
                        return Err(FinCatError::FunctorComposition { g, f });
                    }
                }
            }
        }
        Ok(FinFunctor { obj_map, mor_map })
    }

    pub fn identity(c: &FinCategory) -> Self {
        FinFunctor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn object(&self, x: Obj) -> Obj {
        self.obj_map[x]
    }

    pub fn morphism(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }
}
