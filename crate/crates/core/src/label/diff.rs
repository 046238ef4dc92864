//! Structured differences between two labels, ignoring provenance.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::merge::{LabelRow, SafetyLabel};
use crate::taxonomy::DataType;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldChange {
    pub field: String,
    pub before: String,
    pub after: String,
}

impl FieldChange {
    fn mirror(&self) -> FieldChange {
        FieldChange {
            field: self.field.clone(),
            before: self.after.clone(),
            after: self.before.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowChange {
    Added(LabelRow),
    Removed(LabelRow),
    Changed(Vec<FieldChange>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDiff {
    pub rows: BTreeMap<DataType, RowChange>,
    /// Label-wide fields.
    pub fields: Vec<FieldChange>,
}

impl LabelDiff {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.fields.is_empty()
    }

    /// The diff in the other direction.
    pub fn mirror(&self) -> LabelDiff {
        LabelDiff {
            rows: self
                .rows
                .iter()
                .map(|(k, c)| {
                    let m = match c {
                        RowChange::Added(r) => RowChange::Removed(r.clone()),
                        RowChange::Removed(r) => RowChange::Added(r.clone()),
                        RowChange::Changed(f) => RowChange::Changed(f.iter().map(FieldChange::mirror).collect()),
                    };
                    (k.clone(), m)
                })
                .collect(),
            fields: self.fields.iter().map(FieldChange::mirror).collect(),
        }
    }
}

fn set_text<T: core::fmt::Display>(s: &BTreeSet<T>) -> String {
    let v: Vec<String> = s.iter().map(|x| format!("{x}")).collect();
    v.join(";")
}

fn without_provenance(row: &LabelRow) -> LabelRow {
    LabelRow {
        provenance: Vec::new(),
        ..row.clone()
    }
}

fn row_fields(r: &LabelRow) -> [(&'static str, String); 7] {
    [
        ("collected", format!("{}", r.collected)),
        ("shared", format!("{}", r.shared)),
        ("ephemeral", format!("{}", r.ephemeral)),
        ("required", format!("{}", r.required)),
        ("collection_purposes", set_text(&r.collection_purposes)),
        ("sharing_purposes", set_text(&r.sharing_purposes)),
        ("sources", set_text(&r.sources)),
    ]
}

fn changes(before: &[(&'static str, String)], after: &[(&'static str, String)]) -> Vec<FieldChange> {
    before
        .iter()
        .zip(after)
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, b)| FieldChange {
            field: String::from(a.0),
            before: a.1.clone(),
            after: b.1.clone(),
        })
        .collect()
}

/// What changes from `a` to `b`. Empty exactly when the labels agree on
/// everything except provenance.
pub fn diff_labels(a: &SafetyLabel, b: &SafetyLabel) -> LabelDiff {
    let mut rows = BTreeMap::new();
    for (k, ra) in &a.rows {
        match b.rows.get(k) {
            None => {
                rows.insert(k.clone(), RowChange::Removed(without_provenance(ra)));
            }
            Some(rb) => {
                let c = changes(&row_fields(ra), &row_fields(rb));
                if !c.is_empty() {
                    rows.insert(k.clone(), RowChange::Changed(c));
                }
            }
        }
    }
    for (k, rb) in &b.rows {
        if !a.rows.contains_key(k) {
            rows.insert(k.clone(), RowChange::Added(without_provenance(rb)));
        }
    }
    let top = |l: &SafetyLabel| {
        [
            ("all_encrypted_in_transit", format!("{}", l.all_encrypted_in_transit)),
            ("pending", set_text(&l.pending)),
        ]
    };
    LabelDiff {
        rows,
        fields: changes(&top(a), &top(b)),
    }
}
