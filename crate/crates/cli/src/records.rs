//! Report records and the output sink.

use std::io::Write;

use adjminor::primes::{ClassificationReport, PrimeSummary};
use adjminor::radicality::{CertificateSummary, Method, RadicalVerdict, Radicality};
use adjminor::{CellCollection, Vertex};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// A flat view of a record for CSV output.
pub trait Record: Serialize {
    fn header() -> &'static [&'static str];
    fn row(&self) -> Vec<String>;
}

pub struct Sink<W: Write> {
    format: Format,
    out: W,
    last_header: Option<&'static [&'static str]>,
}

impl<W: Write> Sink<W> {
    pub fn new(format: Format, out: W) -> Self {
        Sink {
            format,
            out,
            last_header: None,
        }
    }

    pub fn emit<R: Record>(&mut self, r: &R) -> Result<(), CliError> {
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut self.out, r)?;
                self.out.write_all(b"\n")?;
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                if self.last_header != Some(R::header()) {
                    w.write_record(R::header())?;
                    self.last_header = Some(R::header());
                }
                w.write_record(r.row())?;
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                self.out.write_all(&bytes)?;
            }
        }
        self.out.flush()?;
        Ok(())
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn vertices(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn kebab<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_string))
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateRecord {
    pub collection: String,
    pub rank: usize,
}

impl Record for EnumerateRecord {
    fn header() -> &'static [&'static str] {
        &["collection", "rank"]
    }
    fn row(&self) -> Vec<String> {
        vec![self.collection.clone(), self.rank.to_string()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictFields {
    pub verdict: Radicality,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
}

impl VerdictFields {
    pub fn new(v: &RadicalVerdict, c: &CellCollection) -> Self {
        VerdictFields {
            verdict: v.verdict,
            method: v.method,
            certificate: v.certificate.as_ref().map(|cert| cert.summary(c)),
        }
    }

    fn certificate_text(&self) -> String {
        self.certificate
            .as_ref()
            .map(|c| serde_json::to_string(c).unwrap_or_default())
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub collection: String,
    #[serde(flatten)]
    pub report: ClassificationReport,
    pub radical: VerdictFields,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Record for ClassifyRecord {
    fn header() -> &'static [&'static str] {
        &[
            "collection",
            "rank",
            "min_height",
            "unmixed",
            "deficient_w",
            "convex",
            "square_tetromino",
            "x_pentomino",
            "minimal_primes",
            "radical",
            "radical_method",
            "certificate",
            "elapsed_ms",
        ]
    }
    fn row(&self) -> Vec<String> {
        let r = &self.report;
        vec![
            self.collection.clone(),
            r.rank.to_string(),
            r.min_height.to_string(),
            r.unmixed.to_string(),
            r.deficient_w.as_deref().map(vertices).unwrap_or_default(),
            r.convex.to_string(),
            r.square_tetromino.to_string(),
            r.x_pentomino.to_string(),
            opt(&r.minimal_primes.as_ref().map(|p| p.len())),
            kebab(&self.radical.verdict),
            kebab(&self.radical.method),
            self.radical.certificate_text(),
            opt(&self.elapsed_ms),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    #[serde(flatten)]
    pub summary: PrimeSummary,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalPrimesRecord {
    pub collection: String,
    pub rank: usize,
    pub primes: Vec<PrimeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Record for MinimalPrimesRecord {
    fn header() -> &'static [&'static str] {
        &["collection", "rank", "w", "height", "generators"]
    }
    /// One CSV line per record; primes are separated by `|`.
    fn row(&self) -> Vec<String> {
        let join = |f: &dyn Fn(&PrimeRecord) -> String| {
            self.primes.iter().map(f).collect::<Vec<_>>().join("|")
        };
        vec![
            self.collection.clone(),
            self.rank.to_string(),
            join(&|p| vertices(&p.summary.w)),
            join(&|p| p.summary.height.to_string()),
            join(&|p| p.generators.join("; ")),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadicalRecord {
    pub collection: String,
    pub rank: usize,
    #[serde(flatten)]
    pub verdict: VerdictFields,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Record for RadicalRecord {
    fn header() -> &'static [&'static str] {
        &[
            "collection",
            "rank",
            "verdict",
            "method",
            "certificate",
            "elapsed_ms",
        ]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.collection.clone(),
            self.rank.to_string(),
            kebab(&self.verdict.verdict),
            kebab(&self.verdict.method),
            self.verdict.certificate_text(),
            opt(&self.elapsed_ms),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerRecord {
    pub collection: String,
    pub order: String,
    pub basis: Vec<String>,
}

impl Record for GroebnerRecord {
    fn header() -> &'static [&'static str] {
        &["collection", "order", "basis"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.collection.clone(),
            self.order.clone(),
            self.basis.join("; "),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub rank: usize,
    pub collections: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_radical: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknown: Option<usize>,
}

impl Record for CensusRow {
    fn header() -> &'static [&'static str] {
        &["rank", "collections", "non_radical", "unknown"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.rank.to_string(),
            self.collections.to_string(),
            opt(&self.non_radical),
            opt(&self.unknown),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtRecord {
    pub t: usize,
    pub collection: String,
    pub order: String,
    pub basis: Vec<String>,
    pub basis_matches: bool,
    pub witness: String,
    pub witness_reduces_to_zero: bool,
    pub witness_square_reduces_to_zero: bool,
    pub min_height: usize,
    pub complete_intersection: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimally_non_radical: Option<bool>,
}

impl Record for DtRecord {
    fn header() -> &'static [&'static str] {
        &[
            "t",
            "collection",
            "order",
            "basis",
            "basis_matches",
            "witness",
            "witness_reduces_to_zero",
            "witness_square_reduces_to_zero",
            "min_height",
            "complete_intersection",
            "minimally_non_radical",
        ]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.t.to_string(),
            self.collection.clone(),
            self.order.clone(),
            self.basis.join("; "),
            self.basis_matches.to_string(),
            self.witness.clone(),
            self.witness_reduces_to_zero.to_string(),
            self.witness_square_reduces_to_zero.to_string(),
            self.min_height.to_string(),
            self.complete_intersection.to_string(),
            opt(&self.minimally_non_radical),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateRecord {
    pub name: String,
    pub rank: usize,
    pub collection: String,
    pub minimally_non_radical: bool,
}

impl Record for ValidateRecord {
    fn header() -> &'static [&'static str] {
        &["name", "rank", "collection", "minimally_non_radical"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            self.rank.to_string(),
            self.collection.clone(),
            self.minimally_non_radical.to_string(),
        ]
    }
}
