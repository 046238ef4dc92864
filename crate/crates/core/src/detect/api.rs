//! Precise suggestions: calls to known data access and transmission APIs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::java::{
    declaration_in_scope, find_covering_declaration, resolve_call_candidates, simple_type_name, CallSite,
    CompilationUnit, VarDeclaration, DATA_ACCESS, DATA_TRANSMISSION, NOT_PERSONAL_DATA_ACCESS,
    NOT_PERSONAL_DATA_TRANSMISSION,
};
use crate::span::{Pos, Span};
use crate::taxonomy::{DataType, Taxonomy};

pub const BUNDLED_API_LIST: &str = include_str!("../../data/api_list.json");

/// Method names too common to match on name alone when the receiver's type
/// is unknown.
const GENERIC_METHOD_NAMES: &[&str] = &[
    "add", "connect", "create", "delete", "enqueue", "execute", "get", "getAddress", "getId", "getInputStream",
    "getOutputStream", "getString", "getText", "getUrl", "insert", "log", "open", "put", "query", "read", "send",
    "set", "setText", "setValue", "start", "update", "write",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApiKind {
    Access,
    Transmission,
}

/// Attributes a transmission API implies, offered pre-checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetHints {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transmitted_off_device: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_stored_in_backend: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shared_with_third_party: Option<bool>,
}

/// The argument that carries the transmitted data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataArg {
    pub index: usize,
    #[serde(rename = "type")]
    pub type_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiSpec {
    /// Qualified method name, or a package/class prefix matching every
    /// method below it.
    pub pattern: String,
    pub kind: ApiKind,
    pub data_types: Vec<DataType>,
    pub preset: PresetHints,
    pub return_type: Option<String>,
    pub data_arg: Option<DataArg>,
    pub notes: String,
}

impl ApiSpec {
    /// Terminal method name when the pattern names a method.
    pub fn method_name(&self) -> Option<&str> {
        let (owner, last) = self.pattern.rsplit_once('.')?;
        let owner_last = owner.rsplit('.').next().unwrap_or(owner);
        let is_method = last.starts_with(|c: char| c.is_lowercase()) && owner_last.starts_with(|c: char| c.is_uppercase());
        is_method.then_some(last)
    }

    /// Simple name of the declaring class when the pattern names a method.
    pub fn class_simple_name(&self) -> Option<&str> {
        self.method_name()?;
        let owner = self.pattern.rsplit_once('.')?.0;
        Some(owner.rsplit('.').next().unwrap_or(owner))
    }

    /// Package part of the pattern: the segments before the first
    /// capitalised one.
    pub fn package(&self) -> String {
        let segs: Vec<&str> = self
            .pattern
            .split('.')
            .take_while(|s| !s.starts_with(|c: char| c.is_uppercase()))
            .collect();
        segs.join(".")
    }

    /// `Some(true)` for an exact match, `Some(false)` for a prefix match.
    fn matches(&self, candidate: &str) -> Option<bool> {
        if candidate == self.pattern {
            Some(true)
        } else if candidate.len() > self.pattern.len()
            && candidate.starts_with(self.pattern.as_str())
            && candidate.as_bytes()[self.pattern.len()] == b'.'
        {
            Some(false)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApiListError {
    #[error("API list is not valid JSON: {0}")]
    Json(String),
    #[error("apis[{index}]: {reason}")]
    Invalid { index: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiList {
    pub version: String,
    pub apis: Vec<ApiSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    pattern: String,
    kind: ApiKind,
    #[serde(default)]
    data_types: Vec<String>,
    preset: Option<PresetHints>,
    return_type: Option<String>,
    data_arg: Option<DataArg>,
    #[serde(default)]
    notes: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawList {
    version: String,
    apis: Vec<RawSpec>,
}

impl ApiList {
    pub fn bundled(taxonomy: &Taxonomy) -> ApiList {
        ApiList::from_json(BUNDLED_API_LIST, taxonomy).expect("bundled API list is valid")
    }

    pub fn from_json(text: &str, taxonomy: &Taxonomy) -> Result<ApiList, ApiListError> {
        let raw: RawList = serde_json::from_str(text).map_err(|e| ApiListError::Json(format!("{e}")))?;
        let mut apis = Vec::with_capacity(raw.apis.len());
        for (index, r) in raw.apis.into_iter().enumerate() {
            let bad = |reason: String| ApiListError::Invalid { index, reason };
            if r.pattern.is_empty() || !r.pattern.split('.').all(|s| !s.is_empty()) {
                return Err(bad(format!("malformed pattern \"{}\"", r.pattern)));
            }
            let mut data_types = Vec::new();
            for name in &r.data_types {
                let dt = taxonomy.data_type(name).ok_or_else(|| bad(format!("unknown data type \"{name}\"")))?;
                data_types.push(dt);
            }
            match r.kind {
                ApiKind::Access if data_types.is_empty() => {
                    return Err(bad(String::from("access APIs must list data_types")))
                }
                ApiKind::Transmission if r.preset.is_none() => {
                    return Err(bad(String::from("transmission APIs must give a preset")))
                }
                _ => {}
            }
            apis.push(ApiSpec {
                pattern: r.pattern,
                kind: r.kind,
                data_types,
                preset: r.preset.unwrap_or_default(),
                return_type: r.return_type,
                data_arg: r.data_arg,
                notes: r.notes,
            });
        }
        Ok(ApiList { version: raw.version, apis })
    }

    /// Packages named by the list, for wildcard import expansion.
    pub fn known_packages(&self) -> Vec<String> {
        let set: BTreeSet<String> = self.apis.iter().map(ApiSpec::package).filter(|p| !p.is_empty()).collect();
        set.into_iter().collect()
    }

    pub fn count(&self, kind: ApiKind) -> usize {
        self.apis.iter().filter(|a| a.kind == kind).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Confidence {
    /// Resolved through the imports.
    High,
    /// Matched on method name only.
    Low,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coverage {
    Covered { annotation_span: Span, marker: bool },
    Uncovered,
}

impl Coverage {
    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::Covered { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectedCall {
    pub file: String,
    pub pos: Pos,
    pub call: CallSite,
    pub spec: ApiSpec,
    pub confidence: Confidence,
    pub coverage: Coverage,
}

impl DetectedCall {
    pub fn kind(&self) -> ApiKind {
        self.spec.kind
    }
}

/// Simple type of the receiver when the source says what it is.
fn receiver_simple_type<'u>(unit: &'u CompilationUnit, call: &'u CallSite) -> Option<&'u str> {
    let r = call.receiver_text.trim();
    if call.method_name == "<init>" {
        return Some(simple_type_name(r));
    }
    if let Some(inner) = r.strip_prefix("((").and_then(|s| s.split_once(')')) {
        return Some(simple_type_name(inner.0));
    }
    let name = r.strip_prefix("this.").unwrap_or(r);
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$' || c == '.') {
        return None;
    }
    let (head, tail) = name.split_once('.').map_or((name, ""), |(h, t)| (h, t));
    match declaration_in_scope(unit, head, call.span.start) {
        Some(d) if tail.is_empty() => Some(simple_type_name(&d.declared_type_text)),
        Some(_) => None,
        None if name.starts_with(|c: char| c.is_uppercase()) => Some(name.rsplit('.').next().unwrap_or(name)),
        None => None,
    }
}

fn marker_name(kind: ApiKind) -> (&'static str, &'static str) {
    match kind {
        ApiKind::Access => (DATA_ACCESS, NOT_PERSONAL_DATA_ACCESS),
        ApiKind::Transmission => (DATA_TRANSMISSION, NOT_PERSONAL_DATA_TRANSMISSION),
    }
}

fn annotated(decl: &VarDeclaration, kind: ApiKind) -> Option<Coverage> {
    let (full, marker) = marker_name(kind);
    decl.annotations.iter().find_map(|a| {
        let n = a.simple_name();
        (n == full || n == marker).then(|| Coverage::Covered {
            annotation_span: a.span,
            marker: n == marker,
        })
    })
}

/// Covered when the declaration the call feeds, or a variable passed to it,
/// carries an annotation of the matching kind.
fn coverage(unit: &CompilationUnit, call: &CallSite, kind: ApiKind) -> Coverage {
    if let Some(c) = find_covering_declaration(unit, call).and_then(|d| annotated(d, kind)) {
        return c;
    }
    for arg in &call.arguments {
        if let Some(d) = declaration_in_scope(unit, arg.text.trim(), call.span.start) {
            if let Some(c) = annotated(d, kind) {
                return c;
            }
        }
    }
    Coverage::Uncovered
}

fn match_call(unit: &CompilationUnit, call: &CallSite, candidates: &[String], list: &ApiList) -> Option<(usize, Confidence)> {
    // rank: (confidence, prefix match, spec order)
    let mut ranks: Vec<(Confidence, bool, usize)> = Vec::new();
    for (i, spec) in list.apis.iter().enumerate() {
        if let Some(exact) = candidates.iter().filter_map(|c| spec.matches(c)).max() {
            ranks.push((Confidence::High, !exact, i));
        }
    }
    if ranks.is_empty() && !call.receiver_text.trim().is_empty() {
        let receiver = receiver_simple_type(unit, call);
        for (i, spec) in list.apis.iter().enumerate() {
            if spec.method_name() != Some(call.method_name.as_str()) {
                continue;
            }
            let ok = match receiver {
                Some(ty) => Some(ty) == spec.class_simple_name(),
                None => !GENERIC_METHOD_NAMES.contains(&call.method_name.as_str()),
            };
            if ok {
                ranks.push((Confidence::Low, false, i));
            }
        }
    }
    ranks.into_iter().min().map(|(conf, _, i)| (i, conf))
}

/// Calls to listed APIs across all units, one entry per call, sorted by
/// file and position.
pub fn detect_api_calls(units: &[CompilationUnit], list: &ApiList) -> Vec<DetectedCall> {
    let known = list.known_packages();
    let mut out = Vec::new();
    for unit in units {
        for call in &unit.calls {
            let candidates = resolve_call_candidates(unit, call, &known);
            let Some((i, confidence)) = match_call(unit, call, &candidates, list) else {
                continue;
            };
            let spec = &list.apis[i];
            let mut call = call.clone();
            call.qualified_candidates = candidates;
            out.push(DetectedCall {
                file: unit.file_path.clone(),
                pos: call.pos,
                coverage: coverage(unit, &call, spec.kind),
                call,
                spec: spec.clone(),
                confidence,
            });
        }
    }
    out.sort_by(|a, b| (&a.file, a.pos, a.call.name_span).cmp(&(&b.file, b.pos, b.call.name_span)));
    out
}
