//! Merging practice facts into label rows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

use super::{PracticeFact, Provenance, Source};
use crate::taxonomy::{DataType, Purpose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SourceNote {
    ByApp,
    ByLibrary,
    ByAppAndLibrary,
}

impl SourceNote {
    pub fn of(sources: &BTreeSet<Source>) -> Option<SourceNote> {
        let app = sources.contains(&Source::App);
        let lib = sources.iter().any(|s| matches!(s, Source::Sdk(_)));
        match (app, lib) {
            (true, true) => Some(SourceNote::ByAppAndLibrary),
            (true, false) => Some(SourceNote::ByApp),
            (false, true) => Some(SourceNote::ByLibrary),
            (false, false) => None,
        }
    }
}

impl fmt::Display for SourceNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceNote::ByApp => "by app",
            SourceNote::ByLibrary => "by library",
            SourceNote::ByAppAndLibrary => "by app and library",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRow {
    pub collected: bool,
    pub shared: bool,
    /// All collecting facts are processed ephemerally.
    pub ephemeral: bool,
    /// Some collecting fact is not optional for the user.
    pub required: bool,
    pub collection_purposes: BTreeSet<Purpose>,
    pub sharing_purposes: BTreeSet<Purpose>,
    pub sources: BTreeSet<Source>,
    /// Sorted, without repeats.
    pub provenance: Vec<Provenance>,
}

impl LabelRow {
    pub fn note(&self) -> SourceNote {
        SourceNote::of(&self.sources).unwrap_or(SourceNote::ByApp)
    }

    /// Equal in everything but provenance.
    pub fn same_content(&self, other: &LabelRow) -> bool {
        self.collected == other.collected
            && self.shared == other.shared
            && self.ephemeral == other.ephemeral
            && self.required == other.required
            && self.collection_purposes == other.collection_purposes
            && self.sharing_purposes == other.sharing_purposes
            && self.sources == other.sources
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SafetyLabel {
    pub rows: BTreeMap<DataType, LabelRow>,
    /// Over data the app itself collects; true when there is none.
    pub all_encrypted_in_transit: bool,
    /// Unverified libraries. Export is refused while any remain.
    pub pending: BTreeSet<String>,
}

impl Default for SafetyLabel {
    fn default() -> Self {
        SafetyLabel {
            rows: BTreeMap::new(),
            all_encrypted_in_transit: true,
            pending: BTreeSet::new(),
        }
    }
}

impl SafetyLabel {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn collects_any(&self) -> bool {
        self.rows.values().any(|r| r.collected)
    }

    pub fn shares_any(&self) -> bool {
        self.rows.values().any(|r| r.shared)
    }
}

/// Combine facts into a label. Inert facts are left out; purposes only
/// count from facts that collect (or share) the data.
pub fn merge_label(facts: &[PracticeFact]) -> SafetyLabel {
    let mut label = SafetyLabel::default();
    // (any collecting fact seen, all collecting facts ephemeral)
    let mut eph: BTreeMap<&DataType, bool> = BTreeMap::new();
    for f in facts.iter().filter(|f| !f.is_inert()) {
        let row = label.rows.entry(f.data_type.clone()).or_default();
        row.sources.insert(f.source.clone());
        row.provenance.push(f.provenance.clone());
        if f.collected {
            row.collected = true;
            row.collection_purposes.extend(f.collection_purposes.iter().copied());
            row.required |= !f.optional;
            let e = eph.entry(&f.data_type).or_insert(true);
            *e &= f.ephemeral;
            if f.source == Source::App {
                label.all_encrypted_in_transit &= f.encrypted_in_transit;
            }
        }
        if f.shared {
            row.shared = true;
            row.sharing_purposes.extend(f.sharing_purposes.iter().copied());
        }
    }
    for (dt, row) in label.rows.iter_mut() {
        row.ephemeral = eph.get(dt).copied().unwrap_or(false);
        row.provenance.sort();
        row.provenance.dedup();
    }
    label
}
