//! JSON input documents: structures, set models, and functors.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCategory, FinFunctor, Mor, MorphismFamily, Obj, RawCategory};
use crate::setmodels::PointwiseModel;
use crate::skewstruct::{TensorStructure, UnitCandidate};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {field}: {message}")]
    Invalid {
        path: PathBuf,
        field: &'static str,
        message: String,
    },
}

/// `λ` and `ρ` components of a unit, one entry per object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitDoc {
    pub object: Obj,
    pub lambda: Vec<Option<Mor>>,
    pub rho: Vec<Option<Mor>>,
}

/// A category with tensor tables, associator components indexed by
/// `(x·n + y)·n + z`, and an optional unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub category: RawCategory,
    pub obj_tensor: Vec<Vec<Option<Obj>>>,
    pub mor_tensor: Vec<Vec<Option<Mor>>>,
    pub assoc: Vec<Option<Mor>>,
    /// Morphisms generating the category, for per-coordinate naturality checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Mor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitDoc>,
}

/// Any document accepted by `check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "snake_case")]
pub enum Document {
    Structure(StructureDoc),
    Model(PointwiseModel),
}

/// Functor tables, `φ` indexed by `x·n + y` over source objects, and an optional `F₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
    pub phi: Vec<Option<Mor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_map: Option<Mor>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Deserialize)]
struct Tag {
    format: Format,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Structure,
    Model,
}

/// Reads the `format` tag, then parses the body directly so that error
/// positions point into the original text.
pub fn parse_document(text: &str, path: &Path) -> Result<Document, IoError> {
    let doc = match parse::<Tag>(text, path)?.format {
        Format::Structure => Document::Structure(parse(text, path)?),
        Format::Model => Document::Model(parse(text, path)?),
    };
    if let Document::Model(m) = &doc {
        PointwiseModel::new(m.kind.clone(), m.test_sizes.clone()).map_err(|e| IoError::Invalid {
            path: path.to_path_buf(),
            field: "model",
            message: e.to_string(),
        })?;
    }
    Ok(doc)
}

pub fn load_document(path: &Path) -> Result<Document, IoError> {
    parse_document(&read(path)?, path)
}

pub fn parse_functor(text: &str, path: &Path) -> Result<FunctorDoc, IoError> {
    parse(text, path)
}

pub fn load_functor(path: &Path) -> Result<FunctorDoc, IoError> {
    parse_functor(&read(path)?, path)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

impl StructureDoc {
    pub fn from_structure(s: &TensorStructure, u: Option<&UnitCandidate>) -> Self {
        StructureDoc {
            category: s.base().to_raw(),
            obj_tensor: s.obj_tensor_table(),
            mor_tensor: s.mor_tensor_table(),
            assoc: s.assoc().components().to_vec(),
            generators: s.generators().map(<[Mor]>::to_vec),
            unit: u.map(|u| UnitDoc {
                object: u.unit(),
                lambda: u.lambda_family().components().to_vec(),
                rho: u.rho_family().components().to_vec(),
            }),
        }
    }

    /// Validates every layer, naming the field that failed.
    pub fn build(&self, path: &Path) -> Result<(TensorStructure, Option<UnitCandidate>), IoError> {
        let invalid = |field: &'static str, message: String| IoError::Invalid {
            path: path.to_path_buf(),
            field,
            message,
        };
        let base = FinCategory::validate(&self.category).map_err(|e| invalid("category", e.to_string()))?;
        let n = base.object_count();
        let assoc =
            MorphismFamily::new(3, n, self.assoc.clone()).map_err(|e| invalid("assoc", e.to_string()))?;
        let (m, ot, mt) = (base.morphism_count(), &self.obj_tensor, &self.mor_tensor);
        if ot.len() != n || ot.iter().any(|r| r.len() != n) {
            return Err(invalid("obj_tensor", format!("expected a {n}x{n} table")));
        }
        if mt.len() != m || mt.iter().any(|r| r.len() != m) {
            return Err(invalid("mor_tensor", format!("expected a {m}x{m} table")));
        }
        let s = TensorStructure::from_fn(base, |x, y| ot[x][y], |f, g| mt[f][g], assoc, self.generators.clone())
            .map_err(|e| invalid("structure", e.to_string()))?;
        let u = match &self.unit {
            None => None,
            Some(u) => Some(
                UnitCandidate::new(&s, u.object, u.lambda.clone(), u.rho.clone())
                    .map_err(|e| invalid("unit", e.to_string()))?,
            ),
        };
        Ok((s, u))
    }
}

impl FunctorDoc {
    pub fn build(
        &self,
        src: &TensorStructure,
        dst: &TensorStructure,
        path: &Path,
    ) -> Result<(FinFunctor, MorphismFamily), IoError> {
        let invalid = |field: &'static str, message: String| IoError::Invalid {
            path: path.to_path_buf(),
            field,
            message,
        };
        let f = FinFunctor::new(src.base(), dst.base(), self.obj_map.clone(), self.mor_map.clone())
            .map_err(|e| invalid("functor", e.to_string()))?;
        let phi = MorphismFamily::new(2, src.object_count(), self.phi.clone())
            .map_err(|e| invalid("phi", e.to_string()))?;
        Ok((f, phi))
    }
}
