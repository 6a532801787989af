//! Command-line front end: argument parsing, the four commands, and exit codes.
//!
//! Exit codes: 0 when every requested check passes, 1 when an axiom or
//! functor condition fails, 2 on bad input, 3 when a search exceeds its
//! budget, 4 when a proposition that must hold is violated.

mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::fincat::{FinFunctor, MorphismFamily, Naturality};
use crate::fixtures::{builtin, builtin_names, Builtin};
use crate::io::{load_document, load_functor, to_json, Document, StructureDoc};
use crate::monfun::{
    check_monoidal_functor, check_phi, classify, enumerate_unit_maps, transported_unit_agreement,
    MonFunError, MonoidalFunctorData, SkewMonoidalCategory,
};
use crate::setmodels::{
    builtin_models, census, evaluate_model, to_finite_structure, AdapterError, ModelKind, PointwiseModel,
    DEFAULT_MAX_NODES,
};
use crate::skewstruct::{
    check_all, normality_class, Axiom, AxiomMask, AxiomStatus, StructureError, TensorStructure, UnitCandidate,
};
use crate::units::{build_units_category, UnitsError};
use crate::{budget_from_env, Budget, PropositionViolated, SearchBudgetExceeded};

pub use report::{
    CensusReport, CheckReport, Fragment, FunctorCheck, ModelAxiom, ModelCheck, StructureCheck, UnitEntry,
    UnitSource,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_PROPOSITION: i32 = 4;

/// Largest census bound accepted.
pub const MAX_CENSUS_SIZE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "skewcheck", version, about = "Check skew monoidal structures on finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Search budget; defaults to the SKEWCHECK_BUDGET environment variable.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Check the axioms of a structure or set model and enumerate its units.
    Check {
        /// Structure or model document.
        #[arg(long = "in", required_unless_present = "builtin", conflicts_with = "builtin")]
        input: Option<PathBuf>,
        /// Builtin structure or model.
        #[arg(long)]
        builtin: Option<String>,
        /// Comma-separated axioms to check.
        #[arg(long, default_value_t = AxiomMask::ALL)]
        mask: AxiomMask,
        /// Sizes of the free sets used by set models.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Classify every magma up to the given size by axiom signature.
    Census {
        #[arg(long)]
        max_size: usize,
    },
    /// Check a monoidal functor between two structures with units.
    Functor {
        /// Source structure file or builtin name.
        #[arg(long)]
        src: String,
        /// Target structure file or builtin name.
        #[arg(long)]
        dst: String,
        /// Functor document.
        #[arg(long)]
        map: PathBuf,
    },
    /// Write a builtin as an input document.
    Export {
        #[arg(long)]
        builtin: String,
    },
    /// List builtin names.
    List,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check {
        source: Source,
        mask: AxiomMask,
        sizes: Option<Vec<usize>>,
    },
    Census {
        max_size: usize,
    },
    Functor {
        src: String,
        dst: String,
        map: PathBuf,
    },
    Export {
        builtin: String,
    },
    List,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub budget: u64,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CliCommand::Check {
                input,
                builtin,
                mask,
                sizes,
            } => Command::Check {
                source: match (input, builtin) {
                    (Some(p), _) => Source::File(p),
                    (None, Some(b)) => Source::Builtin(b),
                    (None, None) => unreachable!("clap requires one source"),
                },
                mask,
                sizes: (!sizes.is_empty()).then_some(sizes),
            },
            CliCommand::Census { max_size } => Command::Census { max_size },
            CliCommand::Functor { src, dst, map } => Command::Functor { src, dst, map },
            CliCommand::Export { builtin } => Command::Export { builtin },
            CliCommand::List => Command::List,
        };
        RunConfig {
            command,
            format: cli.format,
            out: cli.out,
            budget: cli.budget.unwrap_or_else(budget_from_env),
        }
    }
}

/// What a run produced: exit code, the document for `--out` or standard
/// output, and diagnostics for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub output: String,
    pub diagnostics: String,
}

/// Failures that end a command before a report exists.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Budget(SearchBudgetExceeded),
    #[error(transparent)]
    Proposition(PropositionViolated),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Proposition(_) => EXIT_PROPOSITION,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Budget(_) => "budget",
            CliError::Proposition(_) => "proposition_violated",
        }
    }

    fn message(&self) -> String {
        self.to_string()
    }
}

impl From<crate::io::IoError> for CliError {
    fn from(e: crate::io::IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Proposition(p) => CliError::Proposition(p),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<UnitsError> for CliError {
    fn from(e: UnitsError) -> Self {
        match e {
            UnitsError::Budget(b) => CliError::Budget(b),
            UnitsError::Proposition(p) => CliError::Proposition(p),
            UnitsError::Structure(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MonFunError> for CliError {
    fn from(e: MonFunError) -> Self {
        match e {
            MonFunError::Proposition(p) => CliError::Proposition(p),
            MonFunError::Units(u) => u.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    exit_code: i32,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct ReportBody<T: Serialize> {
    report: T,
}

#[derive(Serialize)]
struct ErrorBody {
    error: ErrorDoc,
}

#[derive(Serialize)]
struct ErrorDoc {
    kind: &'static str,
    message: String,
}

/// A command's report with its text form and exit code.
struct Produced<T> {
    report: T,
    text: String,
    code: i32,
}

fn emit<T: Serialize>(cfg: &RunConfig, name: &str, r: Result<Produced<T>, CliError>) -> RunOutcome {
    match r {
        Ok(p) => RunOutcome {
            code: p.code,
            output: match cfg.format {
                OutputFormat::Text => p.text,
                OutputFormat::Structured => to_json(&Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: name,
                    exit_code: p.code,
                    body: ReportBody { report: p.report },
                }),
            },
            diagnostics: String::new(),
        },
        Err(e) => {
            let diagnostics = format!("error: {}\n", e.message());
            let output = match cfg.format {
                OutputFormat::Text => String::new(),
                OutputFormat::Structured => to_json(&Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: name,
                    exit_code: e.code(),
                    body: ErrorBody {
                        error: ErrorDoc {
                            kind: e.kind(),
                            message: e.message(),
                        },
                    },
                }),
            };
            RunOutcome {
                code: e.code(),
                output,
                diagnostics,
            }
        }
    }
}

/// Runs one command. Nothing is written; the caller routes the outcome.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    match &cfg.command {
        Command::Check { source, mask, sizes } => {
            emit(cfg, "check", cmd_check(source, *mask, sizes.as_deref(), cfg.budget))
        }
        Command::Census { max_size } => emit(cfg, "census", cmd_census(*max_size, cfg.budget)),
        Command::Functor { src, dst, map } => emit(cfg, "functor", cmd_functor(src, dst, map)),
        Command::Export { builtin } => match export_document(builtin) {
            Ok(doc) => RunOutcome {
                code: EXIT_PASS,
                output: to_json(&doc),
                diagnostics: String::new(),
            },
            Err(e) => emit::<()>(cfg, "export", Err(e)),
        },
        Command::List => {
            let names = builtin_names();
            let text = names.iter().map(|n| format!("{n}\n")).collect();
            emit(
                cfg,
                "list",
                Ok(Produced {
                    report: names,
                    text,
                    code: EXIT_PASS,
                }),
            )
        }
    }
}

fn unknown_builtin(name: &str) -> CliError {
    CliError::Input(format!(
        "unknown builtin `{name}`; known: {}",
        builtin_names().join(", ")
    ))
}

/// The document a builtin exports to.
pub fn builtin_document(name: &str) -> Option<Document> {
    Some(match builtin(name)? {
        Builtin::Model(m) => Document::Model(m),
        Builtin::Structure(f) => Document::Structure(StructureDoc::from_structure(&f.structure, f.unit.as_ref())),
    })
}

fn export_document(name: &str) -> Result<Document, CliError> {
    builtin_document(name).ok_or_else(|| unknown_builtin(name))
}

enum Input {
    Model(PointwiseModel),
    Structure(TensorStructure, Option<UnitCandidate>),
}

fn load_input(source: &Source) -> Result<Input, CliError> {
    match source {
        Source::Builtin(name) => match builtin(name).ok_or_else(|| unknown_builtin(name))? {
            Builtin::Model(m) => Ok(Input::Model(m)),
            Builtin::Structure(f) => Ok(Input::Structure(f.structure, f.unit)),
        },
        Source::File(path) => match load_document(path)? {
            Document::Model(m) => Ok(Input::Model(m)),
            Document::Structure(doc) => {
                let (s, u) = doc.build(path)?;
                Ok(Input::Structure(s, u))
            }
        },
    }
}

fn cmd_check(
    source: &Source,
    mask: AxiomMask,
    sizes: Option<&[usize]>,
    budget: u64,
) -> Result<Produced<CheckReport>, CliError> {
    let report = match load_input(source)? {
        Input::Model(mut m) => {
            if let Some(sizes) = sizes {
                m = PointwiseModel::new(m.kind, sizes.to_vec()).map_err(|e| CliError::Input(e.to_string()))?;
            }
            CheckReport::Model(check_model(&m, mask)?)
        }
        Input::Structure(s, u) => CheckReport::Structure(check_structure(&s, u, mask, budget)?),
    };
    let failed = match &report {
        CheckReport::Model(m) => m.passed < m.requested,
        CheckReport::Structure(s) => s.passed < s.requested,
    };
    Ok(Produced {
        text: report.render(),
        report,
        code: if failed { EXIT_FAIL } else { EXIT_PASS },
    })
}

fn describe_model(m: &PointwiseModel) -> String {
    match &m.kind {
        ModelKind::Magma(g) => format!("magma {}", g.display_rows()),
        ModelKind::CartesianUnitUnit { unit_size } => format!("cartesian, unit set of size {unit_size}"),
    }
}

pub fn check_model(m: &PointwiseModel, mask: AxiomMask) -> Result<ModelCheck, CliError> {
    let eval = evaluate_model(m);
    let flags = eval.signature.to_array();
    let axioms: Vec<ModelAxiom> = Axiom::ALL
        .into_iter()
        .map(|axiom| {
            let k = axiom.index();
            let (status, element) = if !mask.contains(axiom) {
                (AxiomStatus::Skipped, None)
            } else if flags[k] {
                (AxiomStatus::Pass, None)
            } else {
                let w = eval.witnesses[k].clone().expect("failing axiom has a witness");
                (
                    AxiomStatus::Fail {
                        witness: w.coordinates.clone(),
                    },
                    Some(w),
                )
            };
            ModelAxiom { axiom, status, element }
        })
        .collect();
    let fragment = match to_finite_structure(m, DEFAULT_MAX_NODES) {
        Ok((s, u)) => {
            let r = check_all(&s, Some(&u), mask);
            let agrees = mask
                .axioms()
                .all(|a| r.status(a).is_fail() == !flags[a.index()]);
            if !agrees {
                return Err(CliError::Proposition(PropositionViolated::new(
                    "pointwise evaluation and the materialized fragment agree",
                    format!("{}: pointwise {}, fragment {:?}", describe_model(m), eval.signature, r.failing()),
                )));
            }
            Some(Fragment {
                max_nodes: DEFAULT_MAX_NODES,
                objects: s.object_count(),
                morphisms: s.base().morphism_count(),
                agrees,
            })
        }
        Err(AdapterError::CapExceeded { .. }) => None,
        Err(AdapterError::Structure(e)) => return Err(e.into()),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let passed = axioms.iter().filter(|a| a.status.is_pass()).count();
    Ok(ModelCheck {
        description: describe_model(m),
        test_sizes: m.test_sizes.clone(),
        axioms,
        signature: eval.signature,
        fragment,
        passed,
        requested: mask.axioms().count(),
    })
}

pub fn check_structure(
    s: &TensorStructure,
    given: Option<UnitCandidate>,
    mask: AxiomMask,
    budget: u64,
) -> Result<StructureCheck, CliError> {
    let cat = if s.is_bounded() {
        None
    } else {
        Some(build_units_category(s, mask, &Budget::new(budget))?)
    };
    let (unit, unit_source) = match (given, &cat) {
        (Some(u), _) => (Some(u), UnitSource::Given),
        (None, Some(c)) if !c.units.is_empty() => (Some(c.units[0].clone()), UnitSource::Enumerated),
        _ => (None, UnitSource::None),
    };
    let axioms = check_all(s, unit.as_ref(), mask);
    let mut units = None;
    let mut unit_morphisms = None;
    if let Some(c) = cat {
        let mut entries = Vec::with_capacity(c.units.len());
        for u in &c.units {
            let normality = match normality_class(s, u) {
                Ok(f) => Some(f),
                Err(StructureError::NotAUnit { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            entries.push(UnitEntry {
                object: u.unit(),
                lambda: u.lambda_family().components().to_vec(),
                rho: u.rho_family().components().to_vec(),
                normality,
            });
        }
        units = Some(entries);
        unit_morphisms = Some(c.morphism_sets);
    }
    // unit axioms skipped for lack of a unit count against `passed`
    let passed = axioms.passed();
    Ok(StructureCheck {
        objects: s.object_count(),
        morphisms: s.base().morphism_count(),
        bounded: s.is_bounded(),
        degenerate: s.is_degenerate(),
        unit_source,
        axioms,
        units,
        unit_morphisms,
        passed,
        requested: mask.axioms().count(),
    })
}

fn cmd_census(max_size: usize, budget: u64) -> Result<Produced<CensusReport>, CliError> {
    if max_size == 0 || max_size > MAX_CENSUS_SIZE {
        return Err(CliError::Input(format!(
            "census bound must be between 1 and {MAX_CENSUS_SIZE}, got {max_size}"
        )));
    }
    let c = census(max_size, &Budget::new(budget)).map_err(CliError::Budget)?;
    let extra: Vec<PointwiseModel> = builtin_models().into_iter().map(|(_, m)| m).collect();
    let report = CensusReport::new(c, &extra);
    Ok(Produced {
        text: report.render(),
        report,
        code: EXIT_PASS,
    })
}

/// A structure argument: an existing file, otherwise a builtin name.
fn load_endpoint(arg: &str) -> Result<SkewMonoidalCategory, CliError> {
    let path = Path::new(arg);
    let (structure, unit) = if path.exists() {
        match load_input(&Source::File(path.to_path_buf()))? {
            Input::Structure(s, u) => (s, u),
            Input::Model(_) => {
                return Err(CliError::Input(format!("{arg}: functor endpoints must be structures")))
            }
        }
    } else {
        match builtin(arg) {
            Some(Builtin::Structure(f)) => (f.structure, f.unit),
            Some(Builtin::Model(_)) => {
                return Err(CliError::Input(format!("{arg}: functor endpoints must be structures")))
            }
            None => {
                return Err(CliError::Input(format!(
                    "{arg}: no such file or builtin structure"
                )))
            }
        }
    };
    let unit = unit.ok_or_else(|| CliError::Input(format!("{arg}: structure has no chosen unit")))?;
    Ok(SkewMonoidalCategory { structure, unit })
}

fn cmd_functor(src: &str, dst: &str, map: &Path) -> Result<Produced<FunctorCheck>, CliError> {
    let (a, b) = (load_endpoint(src)?, load_endpoint(dst)?);
    let doc = load_functor(map)?;
    let (functor, phi) = doc.build(&a.structure, &b.structure, map)?;
    let check = functor_check(&a, &b, functor, phi, doc.unit_map)?;
    let code = if check.classification.is_some() { EXIT_PASS } else { EXIT_FAIL };
    Ok(Produced {
        text: check.render(),
        report: check,
        code,
    })
}

pub fn functor_check(
    a: &SkewMonoidalCategory,
    b: &SkewMonoidalCategory,
    functor: FinFunctor,
    phi: MorphismFamily,
    given: Option<usize>,
) -> Result<FunctorCheck, CliError> {
    let (natural, assoc_witness) = check_phi(&a.structure, &b.structure, &functor, &phi)?;
    let phi_failing_squares = match &natural {
        Naturality::Natural => Vec::new(),
        Naturality::Fails { morphisms } => morphisms.clone(),
    };
    let candidates = if natural.holds() && assoc_witness.is_none() {
        Some(enumerate_unit_maps(a, b, &functor, &phi)?)
    } else {
        None
    };
    let unit_map = given.or_else(|| candidates.as_ref().and_then(|c| c.first().copied()));
    let mut monoidal = None;
    let mut classification = None;
    if let Some(f0) = unit_map {
        let data = MonoidalFunctorData {
            functor,
            phi,
            unit_map: f0,
        };
        let report = check_monoidal_functor(a, b, &data)?;
        if report.holds() {
            let class = classify(a, b, &data)?;
            if class.normal {
                transported_unit_agreement(a, b, &data)?;
            }
            classification = Some(class);
        }
        monoidal = Some(report);
    }
    Ok(FunctorCheck {
        phi_natural: natural.holds(),
        phi_failing_squares,
        assoc_witness,
        unit_map_candidates: candidates,
        unit_map,
        monoidal,
        classification,
    })
}
