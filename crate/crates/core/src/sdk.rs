//! Third-party SDK knowledge base, Maven coordinate matching, and the model
//! of the per-library custom usage overlay.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diag::{Code, Diagnostic, Location};
use crate::span::Span;
use crate::taxonomy::{DataType, Purpose, Taxonomy};

pub const BUNDLED_KB: &str = include_str!("../data/sdk_kb.json");

/// Root element of the custom usage file.
pub const LIBRARIES_ELEMENT: &str = "matcha-libraries";
pub const LIBRARY_ELEMENT: &str = "library-custom-usage";
pub const DATA_ELEMENT: &str = "data";
pub const XML_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Collect,
    Share,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Collect => "collect",
            Role::Share => "share",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdkPractice {
    /// Unique within its entry.
    pub key: String,
    pub data_type: DataType,
    pub role: Role,
    pub purposes: BTreeSet<Purpose>,
    pub ephemeral: bool,
    pub optional: bool,
    /// When the practice applies; present on optional practices.
    pub condition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdkEntry {
    pub sdk_id: String,
    pub display_name: String,
    pub maven_patterns: Vec<String>,
    pub always_practices: Vec<SdkPractice>,
    pub optional_practices: Vec<SdkPractice>,
    pub guideline_url: String,
    pub practices_known: bool,
    pub encrypted_in_transit: bool,
}

impl SdkEntry {
    pub fn optional_practice(&self, key: &str) -> Option<&SdkPractice> {
        self.optional_practices.iter().find(|p| p.key == key)
    }

    pub fn optional_keys(&self) -> impl Iterator<Item = &str> {
        self.optional_practices.iter().map(|p| p.key.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KbError {
    #[error("knowledge base is not valid JSON: {0}")]
    Json(String),
    #[error("knowledge base schema violation at {path}: {reason}")]
    SchemaViolation { path: String, reason: String },
}

#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    pub version: String,
    /// Sorted by `sdk_id`.
    pub entries: Vec<SdkEntry>,
    matchers: Vec<Vec<Regex>>,
}

impl PartialEq for KnowledgeBase {
    fn eq(&self, other: &Self) -> bool {
        self.version == other.version && self.entries == other.entries
    }
}

fn violation(path: &str, reason: impl Into<String>) -> KbError {
    KbError::SchemaViolation {
        path: String::from(path),
        reason: reason.into(),
    }
}

fn field<'v>(obj: &'v serde_json::Map<String, Value>, path: &str, name: &str) -> Result<&'v Value, KbError> {
    obj.get(name).ok_or_else(|| violation(&format!("{path}.{name}"), "missing field"))
}

fn str_field(obj: &serde_json::Map<String, Value>, path: &str, name: &str) -> Result<String, KbError> {
    field(obj, path, name)?
        .as_str()
        .map(String::from)
        .ok_or_else(|| violation(&format!("{path}.{name}"), "expected a string"))
}

fn bool_field(obj: &serde_json::Map<String, Value>, path: &str, name: &str) -> Result<bool, KbError> {
    field(obj, path, name)?
        .as_bool()
        .ok_or_else(|| violation(&format!("{path}.{name}"), "expected a boolean"))
}

fn array_field<'v>(obj: &'v serde_json::Map<String, Value>, path: &str, name: &str) -> Result<&'v Vec<Value>, KbError> {
    field(obj, path, name)?
        .as_array()
        .ok_or_else(|| violation(&format!("{path}.{name}"), "expected an array"))
}

fn object<'v>(v: &'v Value, path: &str) -> Result<&'v serde_json::Map<String, Value>, KbError> {
    v.as_object().ok_or_else(|| violation(path, "expected an object"))
}

fn parse_practice(v: &Value, path: &str, taxonomy: &Taxonomy) -> Result<SdkPractice, KbError> {
    let o = object(v, path)?;
    let key = str_field(o, path, "key")?;
    if key.is_empty() || key.contains(char::is_whitespace) {
        return Err(violation(&format!("{path}.key"), "must be non-empty without whitespace"));
    }
    let ty = str_field(o, path, "data_type")?;
    let data_type = taxonomy
        .data_type(&ty)
        .ok_or_else(|| violation(&format!("{path}.data_type"), format!("unknown data type \"{ty}\"")))?;
    let role = match str_field(o, path, "role")?.as_str() {
        "collect" => Role::Collect,
        "share" => Role::Share,
        other => return Err(violation(&format!("{path}.role"), format!("expected collect or share, got \"{other}\""))),
    };
    let mut purposes = BTreeSet::new();
    for (i, p) in array_field(o, path, "purposes")?.iter().enumerate() {
        let ppath = format!("{path}.purposes[{i}]");
        let id = p.as_str().ok_or_else(|| violation(&ppath, "expected a string"))?;
        purposes.insert(Purpose::from_id(id).ok_or_else(|| violation(&ppath, format!("unknown purpose \"{id}\"")))?);
    }
    if purposes.is_empty() {
        return Err(violation(&format!("{path}.purposes"), "must not be empty"));
    }
    let condition = match o.get("condition") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(violation(&format!("{path}.condition"), "expected a string")),
    };
    Ok(SdkPractice {
        key,
        data_type,
        role,
        purposes,
        ephemeral: bool_field(o, path, "ephemeral")?,
        optional: bool_field(o, path, "optional")?,
        condition,
    })
}

fn parse_entry(v: &Value, path: &str, taxonomy: &Taxonomy) -> Result<(SdkEntry, Vec<Regex>), KbError> {
    let o = object(v, path)?;
    let sdk_id = str_field(o, path, "sdk_id")?;
    if sdk_id.is_empty() || sdk_id.contains(|c: char| c.is_whitespace() || c == '"' || c == '<' || c == '&') {
        return Err(violation(&format!("{path}.sdk_id"), "must be a non-empty token"));
    }
    let mut maven_patterns = Vec::new();
    let mut matchers = Vec::new();
    let patterns = array_field(o, path, "maven_patterns")?;
    if patterns.is_empty() {
        return Err(violation(&format!("{path}.maven_patterns"), "must not be empty"));
    }
    for (i, p) in patterns.iter().enumerate() {
        let ppath = format!("{path}.maven_patterns[{i}]");
        let pat = p.as_str().ok_or_else(|| violation(&ppath, "expected a string"))?;
        let re = Regex::new(&format!("^(?:{pat})$")).map_err(|e| violation(&ppath, format!("invalid regex: {e}")))?;
        maven_patterns.push(String::from(pat));
        matchers.push(re);
    }
    let mut lists: [Vec<SdkPractice>; 2] = [Vec::new(), Vec::new()];
    for (slot, name) in ["always_practices", "optional_practices"].into_iter().enumerate() {
        for (i, p) in array_field(o, path, name)?.iter().enumerate() {
            lists[slot].push(parse_practice(p, &format!("{path}.{name}[{i}]"), taxonomy)?);
        }
    }
    let [always_practices, optional_practices] = lists;
    let practices_known = bool_field(o, path, "practices_known")?;
    if !practices_known && !(always_practices.is_empty() && optional_practices.is_empty()) {
        return Err(violation(path, "practices_known is false but practices are listed"));
    }
    let mut keys = BTreeSet::new();
    for (i, p) in always_practices.iter().chain(&optional_practices).enumerate() {
        if !keys.insert(p.key.as_str()) {
            return Err(violation(path, format!("practice key \"{}\" repeated (practice {i})", p.key)));
        }
    }
    if let Some(p) = optional_practices.iter().find(|p| p.condition.is_none()) {
        return Err(violation(path, format!("optional practice \"{}\" has no condition", p.key)));
    }
    let entry = SdkEntry {
        sdk_id,
        display_name: str_field(o, path, "display_name")?,
        maven_patterns,
        always_practices,
        optional_practices,
        guideline_url: str_field(o, path, "guideline_url")?,
        practices_known,
        encrypted_in_transit: match o.get("encrypted_in_transit") {
            None => false,
            Some(v) => v
                .as_bool()
                .ok_or_else(|| violation(&format!("{path}.encrypted_in_transit"), "expected a boolean"))?,
        },
    };
    Ok((entry, matchers))
}

impl KnowledgeBase {
    pub fn bundled(taxonomy: &Taxonomy) -> KnowledgeBase {
        KnowledgeBase::from_json(BUNDLED_KB, taxonomy).expect("bundled knowledge base is valid")
    }

    /// Parse and validate a knowledge base document. Violations name the
    /// offending field, e.g. `entries[3].maven_patterns`.
    pub fn from_json(text: &str, taxonomy: &Taxonomy) -> Result<KnowledgeBase, KbError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| KbError::Json(format!("{e}")))?;
        let root = object(&doc, "$")?;
        let version = str_field(root, "$", "version")?;
        let mut pairs = Vec::new();
        let mut ids = BTreeSet::new();
        for (i, e) in array_field(root, "$", "entries")?.iter().enumerate() {
            let path = format!("entries[{i}]");
            let (entry, matchers) = parse_entry(e, &path, taxonomy)?;
            if !ids.insert(entry.sdk_id.clone()) {
                return Err(violation(&format!("{path}.sdk_id"), format!("duplicate sdk_id \"{}\"", entry.sdk_id)));
            }
            pairs.push((entry, matchers));
        }
        pairs.sort_by(|a, b| a.0.sdk_id.cmp(&b.0.sdk_id));
        let (entries, matchers) = pairs.into_iter().unzip();
        Ok(KnowledgeBase {
            version,
            entries,
            matchers,
        })
    }

    pub fn entry(&self, sdk_id: &str) -> Option<&SdkEntry> {
        self.entries
            .binary_search_by(|e| e.sdk_id.as_str().cmp(sdk_id))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Whether `coordinate` matches one of the entry's patterns.
    pub fn matches(&self, sdk_id: &str, coordinate: &str) -> bool {
        match self.entries.binary_search_by(|e| e.sdk_id.as_str().cmp(sdk_id)) {
            Ok(i) => self.matchers[i].iter().any(|r| r.is_match(coordinate)),
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdkMatch {
    pub sdk_id: String,
    /// The smallest matching coordinate.
    pub coordinate: String,
}

/// SDKs whose patterns match any coordinate, each once, sorted by id.
pub fn match_sdks<S: AsRef<str>>(coordinates: &[S], kb: &KnowledgeBase) -> Vec<SdkMatch> {
    let mut out = Vec::new();
    for (entry, matchers) in kb.entries.iter().zip(&kb.matchers) {
        let hit = coordinates
            .iter()
            .map(AsRef::as_ref)
            .filter(|c| matchers.iter().any(|r| r.is_match(c)))
            .min();
        if let Some(c) = hit {
            out.push(SdkMatch {
                sdk_id: entry.sdk_id.clone(),
                coordinate: String::from(c),
            });
        }
    }
    out
}

/// A `<data>` element of a library entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataElement {
    pub key: String,
    pub span: Span,
    pub line: u32,
}

/// A `<library-custom-usage>` element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LibraryUsage {
    pub verified: bool,
    /// Keys of the optional practices offered when the element was
    /// generated; `None` for hand-written elements.
    pub offered: Option<BTreeSet<String>>,
    /// `<data>` children the developer kept, in document order.
    pub retained: Vec<DataElement>,
    pub span: Span,
    pub line: u32,
}

impl LibraryUsage {
    pub fn retained_keys(&self) -> impl Iterator<Item = &str> {
        self.retained.iter().map(|d| d.key.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomUsageDoc {
    pub entries: BTreeMap<String, LibraryUsage>,
}

impl CustomUsageDoc {
    pub fn is_verified(&self, sdk_id: &str) -> bool {
        self.entries.get(sdk_id).is_some_and(|e| e.verified)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CustomUsageError {
    #[error("line {line}: unknown library \"{sdk_id}\"")]
    UnknownSdkId { sdk_id: String, line: u32 },
    #[error("line {line}: <data key=\"{key}\"> is not an optional practice of \"{sdk_id}\"")]
    UnknownPracticeKey { sdk_id: String, key: String, line: u32 },
}

impl CustomUsageError {
    pub fn to_diagnostic(&self, file: &str) -> Diagnostic {
        let (code, line) = match self {
            CustomUsageError::UnknownSdkId { line, .. } => (Code::UnknownCustomUsageEntry, *line),
            CustomUsageError::UnknownPracticeKey { line, .. } => (Code::UnknownCustomUsageEntry, *line),
        };
        let mut loc = Location::file(file);
        loc.line = line;
        loc.col = 1;
        Diagnostic::error(code, format!("{self}")).at(loc)
    }
}

/// Check every library id and retained key against the knowledge base.
pub fn check_custom_usage(doc: &CustomUsageDoc, kb: &KnowledgeBase) -> Vec<CustomUsageError> {
    let mut out = Vec::new();
    for (id, usage) in &doc.entries {
        let Some(entry) = kb.entry(id) else {
            out.push(CustomUsageError::UnknownSdkId {
                sdk_id: id.clone(),
                line: usage.line,
            });
            continue;
        };
        for d in &usage.retained {
            if entry.optional_practice(&d.key).is_none() {
                out.push(CustomUsageError::UnknownPracticeKey {
                    sdk_id: id.clone(),
                    key: d.key.clone(),
                    line: d.line,
                });
            }
        }
    }
    out
}

/// Optional practices the knowledge base has added since the element was
/// generated.
pub fn new_optional_practices<'k>(entry: &'k SdkEntry, usage: &LibraryUsage) -> Vec<&'k str> {
    match &usage.offered {
        Some(offered) => entry.optional_keys().filter(|k| !offered.contains(*k)).collect(),
        None => entry
            .optional_keys()
            .filter(|k| !usage.retained.iter().any(|d| d.key == *k))
            .collect(),
    }
}

pub fn escape_xml(text: &str) -> String {
    let mut s = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => s.push_str("&amp;"),
            '<' => s.push_str("&lt;"),
            '>' => s.push_str("&gt;"),
            '"' => s.push_str("&quot;"),
            '\'' => s.push_str("&apos;"),
            c => s.push(c),
        }
    }
    s
}

/// A fresh, unverified `<library-custom-usage>` element for an SDK, with one
/// `<data>` child per optional practice. Indented by two spaces; ends with a
/// newline.
pub fn render_library_element(entry: &SdkEntry) -> String {
    let mut s = String::new();
    let offered: Vec<&str> = entry.optional_keys().collect();
    let _ = write!(
        s,
        "  <{LIBRARY_ELEMENT} lib=\"{}\" verified=\"false\" offered=\"{}\">\n",
        escape_xml(&entry.sdk_id),
        escape_xml(&offered.join(" "))
    );
    let note = if !entry.practices_known {
        format!(
            "{}: data practices are not in the knowledge base. Read {} and declare them with annotations, then set verified=\"true\".",
            entry.display_name, entry.guideline_url
        )
    } else if entry.optional_practices.is_empty() {
        format!(
            "{}: no optional practices. Set verified=\"true\" once reviewed. Guideline: {}",
            entry.display_name, entry.guideline_url
        )
    } else {
        format!(
            "{}: remove each data tag whose condition does not hold for this app, then set verified=\"true\". Guideline: {}",
            entry.display_name, entry.guideline_url
        )
    };
    let _ = writeln!(s, "    <!-- {} -->", note.replace("--", "- -"));
    for p in &entry.optional_practices {
        s.push_str(&render_data_element(p));
    }
    let _ = writeln!(s, "  </{LIBRARY_ELEMENT}>");
    s
}

/// One `<data>` line for a practice, indented for a library element.
pub fn render_data_element(p: &SdkPractice) -> String {
    let purposes: Vec<&str> = p.purposes.iter().map(|p| p.id()).collect();
    format!(
        "    <{DATA_ELEMENT} key=\"{}\" type=\"{}\" role=\"{}\" purposes=\"{}\" condition=\"{}\"/>\n",
        escape_xml(&p.key),
        escape_xml(&p.data_type.name),
        p.role.as_str(),
        purposes.join(" "),
        escape_xml(p.condition.as_deref().unwrap_or(""))
    )
}

/// A complete custom usage document holding the given elements.
pub fn render_libraries_document(elements: &[String]) -> String {
    let mut s = format!("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<{LIBRARIES_ELEMENT} schema-version=\"{XML_SCHEMA_VERSION}\">\n");
    for e in elements {
        s.push_str(e);
    }
    let _ = writeln!(s, "</{LIBRARIES_ELEMENT}>");
    s
}
