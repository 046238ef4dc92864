//! From annotations and SDK practices to a data safety label.

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;
use serde::{Deserialize, Serialize};

use crate::annotation::SourceLoc;
use crate::taxonomy::{DataType, Purpose};

mod diff;
mod facts;
mod merge;

pub use diff::{diff_labels, FieldChange, LabelDiff, RowChange};
pub use facts::{collected, facts_from_annotations, facts_from_sdks, shared, SdkFactInput};
pub use merge::{merge_label, LabelRow, SafetyLabel, SourceNote};

/// Who handles the data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Source {
    App,
    Sdk(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::App => f.write_str("app"),
            Source::Sdk(id) => write!(f, "sdk:{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid source tag \"{0}\"")]
pub struct SourceParseError(pub String);

impl FromStr for Source {
    type Err = SourceParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "app" => Ok(Source::App),
            _ => match s.strip_prefix("sdk:") {
                Some(id) if !id.is_empty() => Ok(Source::Sdk(String::from(id))),
                _ => Err(SourceParseError(String::from(s))),
            },
        }
    }
}

impl From<Source> for String {
    fn from(s: Source) -> String {
        alloc::format!("{s}")
    }
}

impl TryFrom<String> for Source {
    type Error = SourceParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// What produced a fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// A `@DataTransmission`, with the access it cites.
    Annotation { transmission: SourceLoc, access_id: String, access: SourceLoc },
    /// A retained `<data>` element of a verified library entry.
    XmlElement { file: String, sdk_id: String, key: String, line: u32 },
    /// A practice the SDK always performs.
    KbPractice { sdk_id: String, key: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Annotation { transmission, access_id, .. } => write!(
                f,
                "{}:{}:{} (@DataTransmission citing \"{access_id}\")",
                transmission.file, transmission.pos.line, transmission.pos.col
            ),
            Provenance::XmlElement { file, sdk_id, key, line } => {
                write!(f, "{file}:{line} (library-custom-usage[@lib='{sdk_id}']/data[@key='{key}'])")
            }
            Provenance::KbPractice { sdk_id, key } => write!(f, "SDK {sdk_id} always: {key}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PracticeFact {
    pub data_type: DataType,
    pub collected: bool,
    pub shared: bool,
    pub ephemeral: bool,
    pub optional: bool,
    pub encrypted_in_transit: bool,
    pub collection_purposes: BTreeSet<Purpose>,
    pub sharing_purposes: BTreeSet<Purpose>,
    pub source: Source,
    pub provenance: Provenance,
    /// For inert facts, the rule that kept them off the label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inert_reason: Option<String>,
}

impl PracticeFact {
    /// Neither collected nor shared: kept only to explain the preview.
    pub fn is_inert(&self) -> bool {
        !self.collected && !self.shared
    }
}
