//! Report documents and their plaintext rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::fincat::{Mor, Obj};
use crate::monfun::{Classification, MonoidalReport};
use crate::setmodels::{
    independence_certificates, AxiomSignature, Census, Certificate, CertificateSource, ModelKind,
    ModelWitness, PointwiseModel,
};
use crate::skewstruct::{Axiom, AxiomReport, AxiomStatus, NormalityFlags};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckReport {
    Model(ModelCheck),
    Structure(StructureCheck),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelAxiom {
    pub axiom: Axiom,
    #[serde(flatten)]
    pub status: AxiomStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<ModelWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fragment {
    pub max_nodes: usize,
    pub objects: usize,
    pub morphisms: usize,
    /// The fragment's axiom results match the pointwise ones.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelCheck {
    pub description: String,
    pub test_sizes: Vec<usize>,
    pub axioms: Vec<ModelAxiom>,
    pub signature: AxiomSignature,
    /// Absent when the fragment would exceed the category caps.
    pub fragment: Option<Fragment>,
    pub passed: usize,
    pub requested: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitEntry {
    pub object: Obj,
    pub lambda: Vec<Option<Mor>>,
    pub rho: Vec<Option<Mor>>,
    pub normality: Option<NormalityFlags>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSource {
    Given,
    Enumerated,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub objects: usize,
    pub morphisms: usize,
    pub bounded: bool,
    pub degenerate: bool,
    /// Which unit the unit axioms were checked against.
    pub unit_source: UnitSource,
    pub axioms: AxiomReport,
    /// `None` when the tensor is partial and units are not enumerated.
    pub units: Option<Vec<UnitEntry>>,
    /// `unit_morphisms[a][b]` lists the unit morphisms from unit `a` to unit `b`.
    pub unit_morphisms: Option<Vec<Vec<Vec<Mor>>>>,
    pub passed: usize,
    pub requested: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorCheck {
    pub phi_natural: bool,
    pub phi_failing_squares: Vec<Mor>,
    pub assoc_witness: Option<Vec<Obj>>,
    /// `None` when the preconditions for enumeration fail.
    pub unit_map_candidates: Option<Vec<Mor>>,
    /// The unit map checked: the one given, or the unique candidate.
    pub unit_map: Option<Mor>,
    pub monoidal: Option<MonoidalReport>,
    pub classification: Option<Classification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub census: Census,
    pub certificates: Vec<Option<Certificate>>,
}

impl CensusReport {
    pub fn new(census: Census, extra: &[PointwiseModel]) -> Self {
        let certificates = independence_certificates(&census, extra).into_iter().collect();
        CensusReport { census, certificates }
    }
}

fn tuple(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn opt_list(xs: &[Option<Mor>]) -> String {
    let parts: Vec<String> = xs
        .iter()
        .map(|x| x.map_or_else(|| "-".to_string(), |m| m.to_string()))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn status_text(s: &AxiomStatus) -> &'static str {
    match s {
        AxiomStatus::Pass => "pass",
        AxiomStatus::Fail { .. } => "FAIL",
        AxiomStatus::Skipped => "skipped",
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn normality_text(f: &NormalityFlags) -> &'static str {
    if f.normal {
        "normal"
    } else if f.left_normal {
        "left normal"
    } else if f.right_normal {
        "right normal"
    } else if f.weakly_normal {
        "weakly normal"
    } else {
        "skew"
    }
}

impl CheckReport {
    pub fn render(&self) -> String {
        match self {
            CheckReport::Model(m) => m.render(),
            CheckReport::Structure(s) => s.render(),
        }
    }
}

impl ModelCheck {
    fn render(&self) -> String {
        let mut out = format!("model: {}, test sizes {:?}\n", self.description, self.test_sizes);
        for a in &self.axioms {
            let _ = write!(out, "  {:<10} {}", a.axiom.short_name(), status_text(&a.status));
            if let Some(w) = &a.element {
                let _ = write!(out, "  at {} (size {})", w.element, w.size);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "signature {}", self.signature);
        match &self.fragment {
            Some(f) => {
                let _ = writeln!(
                    out,
                    "fragment: {}, {}, words up to {} tensors; results {}",
                    plural(f.objects, "object"),
                    plural(f.morphisms, "morphism"),
                    f.max_nodes,
                    if f.agrees { "agree" } else { "DISAGREE" }
                );
            }
            None => out.push_str("fragment: exceeds category caps, not built\n"),
        }
        out.push_str("units: not enumerated on a set model\n");
        let _ = writeln!(out, "{}/{} axioms", self.passed, self.requested);
        out
    }
}

impl StructureCheck {
    fn render(&self) -> String {
        let mut out = format!(
            "structure: {}, {}{}{}\n",
            plural(self.objects, "object"),
            plural(self.morphisms, "morphism"),
            if self.bounded { ", partial tensor" } else { "" },
            if self.degenerate { ", constant tensor" } else { "" },
        );
        let source = match self.unit_source {
            UnitSource::Given => "given unit",
            UnitSource::Enumerated => "first enumerated unit",
            UnitSource::None => "no unit",
        };
        let _ = writeln!(out, "axioms ({source}):");
        for e in &self.axioms.axioms {
            let _ = write!(out, "  {:<10} {}", e.axiom.short_name(), status_text(&e.status));
            if let AxiomStatus::Fail { witness } = &e.status {
                let _ = write!(out, "  at objects {}", tuple(witness));
            }
            out.push('\n');
        }
        match (&self.units, &self.unit_morphisms) {
            (Some(units), Some(homs)) => {
                let _ = writeln!(out, "units ({}):", units.len());
                for (k, u) in units.iter().enumerate() {
                    let _ = write!(
                        out,
                        "  U{k}: I = {}, lambda {}, rho {}",
                        u.object,
                        opt_list(&u.lambda),
                        opt_list(&u.rho)
                    );
                    if let Some(f) = &u.normality {
                        let _ = write!(out, ", {}", normality_text(f));
                    }
                    out.push('\n');
                }
                if !units.is_empty() {
                    out.push_str("unit morphisms:\n");
                    let cells: Vec<Vec<String>> = homs
                        .iter()
                        .map(|row| row.iter().map(|set| tuple(set).replace(['(', ')'], "")).collect())
                        .collect();
                    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
                    let _ = write!(out, "  {:>5}", "");
                    for b in 0..units.len() {
                        let _ = write!(out, " {:>width$}", format!("U{b}"));
                    }
                    out.push('\n');
                    for (a, row) in cells.iter().enumerate() {
                        let _ = write!(out, "  {:>5}", format!("U{a}"));
                        for c in row {
                            let _ = write!(out, " {c:>width$}");
                        }
                        out.push('\n');
                    }
                }
            }
            _ => out.push_str("units: not enumerated on a partial tensor\n"),
        }
        let _ = write!(out, "{}/{} axioms", self.passed, self.requested);
        if let Some(units) = &self.units {
            let _ = write!(out, ", {}", plural(units.len(), "unit"));
        }
        out.push('\n');
        out
    }
}

impl FunctorCheck {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "phi natural: {}", if self.phi_natural { "yes" } else { "no" });
        if !self.phi_natural {
            let _ = write!(out, " (square at {} fails)", tuple(&self.phi_failing_squares));
        }
        out.push('\n');
        match &self.assoc_witness {
            None => out.push_str("associativity: holds\n"),
            Some(w) => {
                let _ = writeln!(out, "associativity: FAIL at objects {}", tuple(w));
            }
        }
        match &self.unit_map_candidates {
            None => out.push_str("F0 candidates: not enumerated (phi fails)\n"),
            Some(c) if c.is_empty() => out.push_str("F0 candidates: 0 (no unit map exists)\n"),
            Some(c) => {
                let _ = writeln!(out, "F0 candidates: {} {}", c.len(), tuple(c));
            }
        }
        if let (Some(f0), Some(m)) = (self.unit_map, &self.monoidal) {
            let _ = write!(out, "unit map {f0}: ");
            match (m.left_unit_witness, m.right_unit_witness) {
                (None, None) => out.push_str("unit squares hold\n"),
                (l, r) => {
                    let show = |w: Option<Obj>| w.map_or_else(|| "holds".to_string(), |x| format!("fails at {x}"));
                    let _ = writeln!(out, "left square {}, right square {}", show(l), show(r));
                }
            }
        }
        let count = self.unit_map_candidates.as_ref().map(Vec::len);
        match (&self.classification, count) {
            (Some(c), Some(k)) => {
                let _ = writeln!(out, "{}, F0 candidates: {k}", c.name());
            }
            (Some(c), None) => {
                let _ = writeln!(out, "{}", c.name());
            }
            (None, _) => out.push_str("not monoidal\n"),
        }
        out
    }
}

impl CensusReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "census of magmas with designated element, sizes 1..={}: {}\n",
            self.census.max_size,
            plural(self.census.total as usize, "table")
        );
        out.push_str(&self.census.render_table());
        out.push_str("independence certificates:\n");
        for (k, c) in self.certificates.iter().enumerate() {
            let name = Axiom::ALL[k].short_name();
            match c {
                None => {
                    let _ = writeln!(out, "  {name:<10} none found");
                }
                Some(c) => {
                    let source = match &c.source {
                        CertificateSource::Census { magma } => {
                            format!("census magma {}", magma.display_rows())
                        }
                        CertificateSource::Dual { magma, original } => {
                            format!("dual of census magma {} with {}", magma.display_rows(), original)
                        }
                        CertificateSource::Model { model } => match &model.kind {
                            ModelKind::Magma(m) => format!("model {}", m.display_rows()),
                            ModelKind::CartesianUnitUnit { unit_size } => {
                                format!("cartesian model, unit set of size {unit_size}")
                            }
                        },
                    };
                    let _ = writeln!(out, "  {name:<10} {}  {source}", c.signature);
                }
            }
        }
        out
    }
}
