//! Exhaustive census of small magmas by axiom signature.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate_model, signature_of, AxiomSignature, Magma, PointwiseModel};
use crate::skewstruct::Axiom;
use crate::{Budget, SearchBudgetExceeded};

/// All magmas of one signature: how many, and the first in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub signature: AxiomSignature,
    pub count: u64,
    pub sample: Magma,
}

/// Census restricted to magmas of one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSlice {
    pub size: usize,
    pub total: u64,
    pub classes: Vec<CensusClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub max_size: usize,
    pub total: u64,
    pub slices: Vec<SizeSlice>,
    /// Classes over all sizes; the sample is the smallest witness.
    pub classes: Vec<CensusClass>,
}

/// Number of (table, designated) pairs of size at most `n`, saturating.
pub fn census_count(n: usize) -> u64 {
    (1..=n as u64).fold(0u64, |acc, k| {
        let tables = u32::try_from(k * k)
            .ok()
            .and_then(|e| k.checked_pow(e))
            .and_then(|t| t.checked_mul(k));
        acc.saturating_add(tables.unwrap_or(u64::MAX))
    })
}

/// Decodes table number `index` of size `k`; entry `(x, y)` is digit `x·k + y`,
/// most significant first.
fn table_at(k: usize, mut index: u64) -> Vec<usize> {
    let mut table = vec![0; k * k];
    for slot in table.iter_mut().rev() {
        *slot = (index % k as u64) as usize;
        index /= k as u64;
    }
    table
}

type Tally = BTreeMap<AxiomSignature, (u64, (usize, u64))>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (sig, (count, first)) in b {
        let e = a.entry(sig).or_insert((0, first));
        e.0 += count;
        e.1 = e.1.min(first);
    }
    a
}

fn slice(k: usize) -> SizeSlice {
    let tables = (k as u64).pow((k * k) as u32);
    let tally = (0..k)
        .into_par_iter()
        .flat_map(|d| (0..tables).into_par_iter().map(move |t| (d, t)))
        .fold(Tally::new, |mut acc, (d, t)| {
            let sig = signature_of(&Magma::from_flat(k, table_at(k, t), d));
            let e = acc.entry(sig).or_insert((0, (d, t)));
            e.0 += 1;
            e.1 = e.1.min((d, t));
            acc
        })
        .reduce(Tally::new, merge);
    let classes = tally
        .into_iter()
        .map(|(signature, (count, (d, t)))| CensusClass {
            signature,
            count,
            sample: Magma::from_flat(k, table_at(k, t), d),
        })
        .collect();
    SizeSlice {
        size: k,
        total: tables * k as u64,
        classes,
    }
}

/// Evaluates every magma of size `1..=n` with every designated element.
///
/// The whole enumeration is charged to `budget` before any work starts.
pub fn census(n: usize, budget: &Budget) -> Result<Census, SearchBudgetExceeded> {
    let total = census_count(n);
    if total == u64::MAX || !budget.charge(total) {
        return Err(budget.exceeded(0));
    }
    let slices: Vec<SizeSlice> = (1..=n).map(slice).collect();
    let mut all: BTreeMap<AxiomSignature, CensusClass> = BTreeMap::new();
    for s in &slices {
        for c in &s.classes {
            all.entry(c.signature)
                .and_modify(|e| e.count += c.count)
                .or_insert_with(|| c.clone());
        }
    }
    Ok(Census {
        max_size: n,
        total,
        slices,
        classes: all.into_values().collect(),
    })
}

impl Census {
    pub fn class(&self, sig: AxiomSignature) -> Option<&CensusClass> {
        self.classes.iter().find(|c| c.signature == sig)
    }

    /// Boxed plaintext table, one row per signature.
    pub fn render_table(&self) -> String {
        let header = ["signature", "count", "sample (1 designated)"];
        let rows: Vec<[String; 3]> = self
            .classes
            .iter()
            .map(|c| [c.signature.to_string(), c.count.to_string(), c.sample.display_rows()])
            .collect();
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let rule = {
            let parts: Vec<String> = widths.iter().map(|w| "-".repeat(w + 2)).collect();
            format!("+{}+\n", parts.join("+"))
        };
        let line = |cells: [&str; 3]| {
            let mut s = String::from("|");
            for (i, cell) in cells.iter().enumerate() {
                let pad = widths[i] - cell.chars().count();
                if i == 1 {
                    let _ = write!(s, " {}{} |", " ".repeat(pad), cell);
                } else {
                    let _ = write!(s, " {}{} |", cell, " ".repeat(pad));
                }
            }
            s.push('\n');
            s
        };
        let mut out = rule.clone();
        out += &line(header);
        out += &rule;
        for r in &rows {
            out += &line([r[0].as_str(), r[1].as_str(), r[2].as_str()]);
        }
        out += &rule;
        let total = self.total.to_string();
        out += &line(["total", total.as_str(), ""]);
        out += &rule;
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateSource {
    /// A census magma with exactly this signature.
    Census { magma: Magma },
    /// The dual of a census magma's signature.
    Dual { magma: Magma, original: AxiomSignature },
    /// A model outside the magma family, evaluated directly.
    Model { model: PointwiseModel },
}

/// A model in which exactly one axiom fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub axiom: Axiom,
    pub signature: AxiomSignature,
    pub source: CertificateSource,
}

/// For each axiom, a certificate that it is independent of the other four,
/// drawn from the census, its duals, or the extra models given.
pub fn independence_certificates(census: &Census, extra: &[PointwiseModel]) -> [Option<Certificate>; 5] {
    std::array::from_fn(|k| {
        let target = AxiomSignature::only_failing(k);
        let axiom = Axiom::ALL[k];
        if let Some(c) = census.class(target) {
            return Some(Certificate {
                axiom,
                signature: target,
                source: CertificateSource::Census { magma: c.sample.clone() },
            });
        }
        if let Some(c) = census.class(target.dual()) {
            return Some(Certificate {
                axiom,
                signature: target,
                source: CertificateSource::Dual {
                    magma: c.sample.clone(),
                    original: c.signature,
                },
            });
        }
        extra
            .iter()
            .find(|m| evaluate_model(m).signature == target)
            .map(|m| Certificate {
                axiom,
                signature: target,
                source: CertificateSource::Model { model: m.clone() },
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setmodels::builtin_models;

    #[test]
    fn counts_by_size() {
        assert_eq!(census_count(1), 1);
        assert_eq!(census_count(2), 33);
        assert_eq!(census_count(3), 59082);
        assert!(census_count(4) > crate::DEFAULT_BUDGET);
        assert_eq!(census_count(9), u64::MAX);
    }

    #[test]
    fn table_decoding_is_lexicographic() {
        assert_eq!(table_at(2, 0), vec![0, 0, 0, 0]);
        assert_eq!(table_at(2, 1), vec![0, 0, 0, 1]);
        assert_eq!(table_at(2, 8), vec![1, 0, 0, 0]);
    }

    #[test]
    fn size_two_census() {
        let c = census(2, &Budget::new(1000)).unwrap();
        assert_eq!(c.total, 33);
        assert_eq!(c.slices[1].total, 32);
        assert_eq!(c.slices[1].classes.iter().map(|k| k.count).sum::<u64>(), 32);
        assert!(c.classes.iter().all(|k| k.signature.unitunit && k.signature.left));
        assert_eq!(c.classes[0].signature, AxiomSignature::ALL_TRUE);
        assert_eq!(c.classes[0].count, 5);
    }

    #[test]
    fn budget_is_charged_up_front() {
        let b = Budget::new(32);
        let err = census(2, &b).unwrap_err();
        assert_eq!(err.budget, 32);
        assert_eq!(err.found, 0);
    }

    #[test]
    fn certificates_at_size_three() {
        let c = census(3, &Budget::new(crate::DEFAULT_BUDGET)).unwrap();
        let extra: Vec<_> = builtin_models().into_iter().map(|(_, m)| m).collect();
        let certs = independence_certificates(&c, &extra);
        for (k, cert) in certs.iter().enumerate() {
            let cert = cert.as_ref().expect("certificate");
            assert_eq!(cert.signature, AxiomSignature::only_failing(k));
        }
        assert!(matches!(certs[1].as_ref().unwrap().source, CertificateSource::Dual { .. }));
        assert!(matches!(certs[4].as_ref().unwrap().source, CertificateSource::Model { .. }));
    }

    #[test]
    fn table_rendering() {
        let c = census(1, &Budget::new(10)).unwrap();
        let t = c.render_table();
        assert!(t.contains("| (T,T,T,T,T) |     1 | (1)"));
        assert!(t.starts_with("+-"));
    }
}
