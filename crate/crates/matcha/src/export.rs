//! Label export: the canonical CSV, the Play Console CSV and a JSON twin.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use matcha_core::diag::{Diagnostic, Severity};
use matcha_core::label::{LabelRow, SafetyLabel, Source};
use matcha_core::taxonomy::{DataType, Purpose, Taxonomy};
use serde::{Deserialize, Serialize};

use crate::project::write_atomic;

pub const CANONICAL_HEADER: [&str; 9] = [
    "category",
    "data_type",
    "collected",
    "shared",
    "ephemeral",
    "required",
    "collection_purposes",
    "sharing_purposes",
    "sources",
];

pub const BUNDLED_CONSOLE_MAPPING: &str = include_str!("../data/console_mapping.json");

pub const CANONICAL_CSV: &str = "data-safety.csv";
pub const CONSOLE_CSV: &str = "data-safety-console.csv";
pub const LABEL_JSON: &str = "data-safety.json";

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("libraries not verified yet: {}; review matcha-libraries.xml first", .0.join(", "))]
    PendingVerification(Vec<String>),
    #[error("{0} error diagnostic(s) outstanding; run `matcha check` and fix them first")]
    OutstandingErrors(usize),
    #[error("console mapping: {0}")]
    Mapping(String),
    #[error("canonical CSV line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn join<T, F: Fn(&T) -> &str>(items: impl IntoIterator<Item = T>, f: F) -> String {
    items.into_iter().map(|x| f(&x).to_string()).collect::<Vec<_>>().join(";")
}

fn to_csv(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 fields")
}

/// One row per data type, sorted by category then type. Purposes and
/// sources are `;`-joined; sources are `app` or `sdk:<id>`.
pub fn canonical_csv(label: &SafetyLabel) -> String {
    let mut rows = vec![CANONICAL_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    for (dt, r) in &label.rows {
        rows.push(vec![
            dt.category.clone(),
            dt.name.clone(),
            r.collected.to_string(),
            r.shared.to_string(),
            r.ephemeral.to_string(),
            r.required.to_string(),
            join(r.collection_purposes.iter().copied(), |p| p.id()),
            join(r.sharing_purposes.iter().copied(), |p| p.id()),
            r.sources.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";"),
        ]);
    }
    to_csv(&rows)
}

fn parse_bool(v: &str, line: u64) -> Result<bool, ExportError> {
    v.parse().map_err(|_| ExportError::Csv {
        line,
        message: format!("\"{v}\" is not true or false"),
    })
}

fn parse_purposes(v: &str, line: u64) -> Result<BTreeSet<Purpose>, ExportError> {
    v.split(';')
        .filter(|s| !s.is_empty())
        .map(|s| {
            Purpose::from_id(s).ok_or_else(|| ExportError::Csv {
                line,
                message: format!("unknown purpose {s}"),
            })
        })
        .collect()
}

/// Read a canonical CSV back into label rows (without provenance).
pub fn parse_canonical_csv(text: &str, taxonomy: &Taxonomy) -> Result<BTreeMap<DataType, LabelRow>, ExportError> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| ExportError::Csv { line: 1, message: e.to_string() })?;
    if header.iter().ne(CANONICAL_HEADER) {
        return Err(ExportError::Csv {
            line: 1,
            message: String::from("unexpected header"),
        });
    }
    let mut rows = BTreeMap::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| ExportError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let dt = taxonomy
            .data_type(&rec[1])
            .filter(|d| d.category == rec[0])
            .ok_or_else(|| ExportError::Csv {
                line,
                message: format!("unknown data type {}/{}", &rec[0], &rec[1]),
            })?;
        let sources = rec[8]
            .split(';')
            .map(|s| {
                s.parse::<Source>().map_err(|e| ExportError::Csv {
                    line,
                    message: e.to_string(),
                })
            })
            .collect::<Result<BTreeSet<_>, _>>()?;
        rows.insert(
            dt,
            LabelRow {
                collected: parse_bool(&rec[2], line)?,
                shared: parse_bool(&rec[3], line)?,
                ephemeral: parse_bool(&rec[4], line)?,
                required: parse_bool(&rec[5], line)?,
                collection_purposes: parse_purposes(&rec[6], line)?,
                sharing_purposes: parse_purposes(&rec[7], line)?,
                sources,
                provenance: Vec::new(),
            },
        );
    }
    Ok(rows)
}

/// Translation of label rows into the Play Console's question/response
/// rows. Templates use `{category}`, `{category_label}`, `{type}` and
/// `{type_label}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConsoleMapping {
    pub version: String,
    pub header: Vec<String>,
    pub collects_any: Question,
    pub encrypted_in_transit: Question,
    pub category_question: String,
    pub category_label: String,
    pub usage_question: String,
    pub usage_label: String,
    pub collected_response: String,
    pub shared_response: String,
    pub ephemeral_question: String,
    pub ephemeral_label: String,
    pub user_control_question: String,
    pub user_control_label: String,
    pub required_response: String,
    pub optional_response: String,
    pub collection_purpose_question: String,
    pub collection_purpose_label: String,
    pub sharing_purpose_question: String,
    pub sharing_purpose_label: String,
    pub category_ids: BTreeMap<String, String>,
    pub type_ids: BTreeMap<String, String>,
    pub purpose_ids: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Question {
    pub question: String,
    pub label: String,
}

impl ConsoleMapping {
    pub fn bundled(taxonomy: &Taxonomy) -> ConsoleMapping {
        ConsoleMapping::from_json(BUNDLED_CONSOLE_MAPPING, taxonomy).expect("bundled console mapping is valid")
    }

    /// Parse and check that every category, data type and purpose has an id.
    pub fn from_json(text: &str, taxonomy: &Taxonomy) -> Result<ConsoleMapping, ExportError> {
        let m: ConsoleMapping = serde_json::from_str(text).map_err(|e| ExportError::Mapping(e.to_string()))?;
        if m.header.len() != 5 {
            return Err(ExportError::Mapping(String::from("header must have five columns")));
        }
        for c in &taxonomy.categories {
            if !m.category_ids.contains_key(&c.id) {
                return Err(ExportError::Mapping(format!("no id for category {}", c.id)));
            }
        }
        for t in taxonomy.all_types() {
            if !m.type_ids.contains_key(&t.name) {
                return Err(ExportError::Mapping(format!("no id for data type {}", t.name)));
            }
        }
        for p in Purpose::ALL {
            if !m.purpose_ids.contains_key(p.id()) {
                return Err(ExportError::Mapping(format!("no id for purpose {}", p.id())));
            }
        }
        Ok(m)
    }
}

fn fill(template: &str, dt: &DataType, m: &ConsoleMapping, t: &Taxonomy) -> String {
    template
        .replace("{category_label}", t.category_label(&dt.category))
        .replace("{category}", &m.category_ids[&dt.category])
        .replace("{type_label}", t.type_label(&dt.name))
        .replace("{type}", &m.type_ids[&dt.name])
}

/// The console upload CSV for `label`.
pub fn console_csv(label: &SafetyLabel, mapping: &ConsoleMapping, taxonomy: &Taxonomy) -> String {
    let m = mapping;
    let mut rows = vec![m.header.clone()];
    let mut row = |q: String, r: &str, v: &str, label: String| rows.push(vec![q, r.to_string(), v.to_string(), String::from("MULTIPLE_CHOICE"), label]);
    row(m.collects_any.question.clone(), "", &(!label.is_empty()).to_string(), m.collects_any.label.clone());
    if label.is_empty() {
        return to_csv(&rows);
    }
    let encrypted = if label.collects_any() { label.all_encrypted_in_transit.to_string() } else { String::new() };
    row(m.encrypted_in_transit.question.clone(), "", &encrypted, m.encrypted_in_transit.label.clone());
    for dt in label.rows.keys() {
        row(fill(&m.category_question, dt, m, taxonomy), &m.type_ids[&dt.name], "true", fill(&m.category_label, dt, m, taxonomy));
    }
    for (dt, r) in &label.rows {
        let f = |s: &str| fill(s, dt, m, taxonomy);
        if r.collected {
            row(f(&m.usage_question), &m.collected_response, "true", f(&m.usage_label));
        }
        if r.shared {
            row(f(&m.usage_question), &m.shared_response, "true", f(&m.usage_label));
        }
        if r.collected {
            row(f(&m.ephemeral_question), "", &r.ephemeral.to_string(), f(&m.ephemeral_label));
            let control = if r.required { &m.required_response } else { &m.optional_response };
            row(f(&m.user_control_question), control, "true", f(&m.user_control_label));
            for p in &r.collection_purposes {
                row(f(&m.collection_purpose_question), &m.purpose_ids[p.id()], "true", f(&m.collection_purpose_label));
            }
        }
        for p in &r.sharing_purposes {
            row(f(&m.sharing_purpose_question), &m.purpose_ids[p.id()], "true", f(&m.sharing_purpose_label));
        }
    }
    to_csv(&rows)
}

/// The label with provenance, as pretty JSON.
pub fn label_json(label: &SafetyLabel) -> String {
    let mut s = serde_json::to_string_pretty(label).expect("label serializes");
    s.push('\n');
    s
}

/// Refuse export while libraries are unverified or errors remain.
pub fn check_exportable(label: &SafetyLabel, diagnostics: &[Diagnostic]) -> Result<(), ExportError> {
    if !label.pending.is_empty() {
        return Err(ExportError::PendingVerification(label.pending.iter().cloned().collect()));
    }
    let errors = diagnostics.iter().filter(|d| d.severity == Severity::Error).count();
    if errors > 0 {
        return Err(ExportError::OutstandingErrors(errors));
    }
    Ok(())
}

/// Write the three export files into `dir`; returns their paths.
pub fn write_exports(
    dir: &Path,
    label: &SafetyLabel,
    diagnostics: &[Diagnostic],
    mapping: &ConsoleMapping,
    taxonomy: &Taxonomy,
) -> Result<Vec<PathBuf>, ExportError> {
    check_exportable(label, diagnostics)?;
    let files = [
        (CANONICAL_CSV, canonical_csv(label)),
        (CONSOLE_CSV, console_csv(label, mapping, taxonomy)),
        (LABEL_JSON, label_json(label)),
    ];
    let mut out = Vec::new();
    for (name, text) in files {
        let path = dir.join(name);
        write_atomic(&path, text.as_bytes()).map_err(|source| ExportError::Io { path: path.clone(), source })?;
        out.push(path);
    }
    Ok(out)
}
