//! Reading and updating `matcha-libraries.xml`.
//!
//! Updates are text splices: existing elements, comments and formatting are
//! kept as they are, and new material is inserted next to them.

use std::collections::{BTreeMap, BTreeSet};

use matcha_core::diag::{Code, Diagnostic, Location};
use matcha_core::sdk::{
    check_custom_usage, escape_xml, new_optional_practices, render_data_element, render_libraries_document,
    render_library_element, CustomUsageDoc, CustomUsageError, DataElement, KnowledgeBase, LibraryUsage, SdkEntry,
    DATA_ELEMENT, LIBRARIES_ELEMENT, LIBRARY_ELEMENT,
};
use matcha_core::span::Span;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XmlError {
    #[error("malformed XML at {line}:{col}: {message}")]
    Malformed { line: u32, col: u32, message: String },
    #[error(transparent)]
    Unknown(#[from] CustomUsageError),
}

impl XmlError {
    pub fn to_diagnostic(&self, file: &str) -> Diagnostic {
        match self {
            XmlError::Malformed { line, col, .. } => {
                let mut loc = Location::file(file);
                loc.line = *line;
                loc.col = *col;
                Diagnostic::error(Code::MalformedCustomUsage, self.to_string()).at(loc)
            }
            XmlError::Unknown(e) => e.to_diagnostic(file),
        }
    }
}

fn malformed(doc: &roxmltree::Document<'_>, pos: usize, message: impl Into<String>) -> XmlError {
    let p = doc.text_pos_at(pos);
    XmlError::Malformed {
        line: p.row,
        col: p.col,
        message: message.into(),
    }
}

fn span_of(node: roxmltree::Node<'_, '_>) -> Span {
    let r = node.range();
    Span::new(r.start, r.end)
}

/// Structural parse: element names, required attributes and duplicate
/// libraries. Library ids and practice keys are not checked here.
pub fn read_custom_usage_xml(text: &str) -> Result<CustomUsageDoc, XmlError> {
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let p = e.pos();
        XmlError::Malformed {
            line: p.row,
            col: p.col,
            message: e.to_string(),
        }
    })?;
    let root = doc.root_element();
    if root.tag_name().name() != LIBRARIES_ELEMENT {
        return Err(malformed(&doc, root.range().start, format!("root element must be <{LIBRARIES_ELEMENT}>")));
    }
    let mut entries = BTreeMap::new();
    for lib in root.children().filter(|n| n.is_element()) {
        let start = lib.range().start;
        if lib.tag_name().name() != LIBRARY_ELEMENT {
            return Err(malformed(&doc, start, format!("unexpected <{}>", lib.tag_name().name())));
        }
        let id = lib
            .attribute("lib")
            .ok_or_else(|| malformed(&doc, start, format!("<{LIBRARY_ELEMENT}> needs a lib attribute")))?;
        let verified = match lib.attribute("verified") {
            None | Some("false") => false,
            Some("true") => true,
            Some(v) => return Err(malformed(&doc, start, format!("verified must be \"true\" or \"false\", not \"{v}\""))),
        };
        let offered = lib
            .attribute("offered")
            .map(|o| o.split_whitespace().map(String::from).collect::<BTreeSet<_>>());
        let mut retained = Vec::new();
        for d in lib.children().filter(|n| n.is_element()) {
            let at = d.range().start;
            if d.tag_name().name() != DATA_ELEMENT {
                return Err(malformed(&doc, at, format!("unexpected <{}> in <{LIBRARY_ELEMENT}>", d.tag_name().name())));
            }
            let key = d
                .attribute("key")
                .ok_or_else(|| malformed(&doc, at, format!("<{DATA_ELEMENT}> needs a key attribute")))?;
            retained.push(DataElement {
                key: key.to_string(),
                span: span_of(d),
                line: doc.text_pos_at(at).row,
            });
        }
        let usage = LibraryUsage {
            verified,
            offered,
            retained,
            span: span_of(lib),
            line: doc.text_pos_at(start).row,
        };
        if entries.insert(id.to_string(), usage).is_some() {
            return Err(malformed(&doc, start, format!("library \"{id}\" appears twice")));
        }
    }
    Ok(CustomUsageDoc { entries })
}

/// Parse and check every library id and practice key against `kb`.
pub fn parse_custom_usage_xml(text: &str, kb: &KnowledgeBase) -> Result<CustomUsageDoc, XmlError> {
    let doc = read_custom_usage_xml(text)?;
    match check_custom_usage(&doc, kb).into_iter().next() {
        Some(e) => Err(e.into()),
        None => Ok(doc),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SyncOutcome {
    pub text: String,
    pub diagnostics: Vec<Diagnostic>,
    /// Libraries given a new element.
    pub added: Vec<String>,
    /// Unverified libraries whose element gained `<data>` children.
    pub extended: Vec<String>,
}

impl SyncOutcome {
    pub fn changed(&self) -> bool {
        !self.added.is_empty() || !self.extended.is_empty()
    }
}

struct Splice {
    at: Span,
    text: String,
}

fn line_start(text: &str, offset: usize) -> usize {
    let before = &text[..offset];
    match before.rfind('\n') {
        Some(i) if before[i + 1..].trim().is_empty() => i + 1,
        _ => offset,
    }
}

/// Bring the document up to date with the matched SDKs.
///
/// New SDKs get a fresh unverified element. Unverified elements gain
/// `<data>` children for optional practices added to the knowledge base
/// since they were generated. Verified elements are never touched; new
/// practices there produce a StaleVerification warning instead.
pub fn sync_custom_usage_xml(matched: &[&SdkEntry], existing: Option<&str>, xml_file: &str) -> Result<SyncOutcome, XmlError> {
    let mut out = SyncOutcome::default();
    let Some(text) = existing else {
        let elements: Vec<String> = matched.iter().map(|e| render_library_element(e)).collect();
        out.added = matched.iter().map(|e| e.sdk_id.clone()).collect();
        out.text = render_libraries_document(&elements);
        return Ok(out);
    };
    let doc = read_custom_usage_xml(text)?;
    let tree = roxmltree::Document::parse(text).expect("parsed above");
    let mut splices = Vec::new();
    let mut appended = String::new();
    for entry in matched {
        let Some(usage) = doc.entries.get(&entry.sdk_id) else {
            appended.push_str(&render_library_element(entry));
            out.added.push(entry.sdk_id.clone());
            continue;
        };
        let new = new_optional_practices(entry, usage);
        if new.is_empty() {
            continue;
        }
        let mut loc = Location::file(xml_file);
        loc.line = usage.line;
        loc.col = 1;
        loc.xml_path = Some(format!("{LIBRARIES_ELEMENT}/{LIBRARY_ELEMENT}[@lib='{}']", entry.sdk_id));
        if usage.verified {
            out.diagnostics.push(
                Diagnostic::warning(
                    Code::StaleVerification,
                    format!("{} was verified before the knowledge base added: {}; the file was not changed", entry.sdk_id, new.join(", ")),
                )
                .at(loc),
            );
            continue;
        }
        let element = &text[usage.span.start..usage.span.end];
        let Some(close) = element.rfind(&format!("</{LIBRARY_ELEMENT}")) else {
            out.diagnostics.push(
                Diagnostic::warning(
                    Code::NewOptionalPractices,
                    format!("{} has new optional practices ({}); delete its empty element to regenerate it", entry.sdk_id, new.join(", ")),
                )
                .at(loc),
            );
            continue;
        };
        let at = line_start(text, usage.span.start + close);
        let lines: String = new
            .iter()
            .filter_map(|k| entry.optional_practice(k))
            .map(render_data_element)
            .collect();
        splices.push(Splice { at: Span::new(at, at), text: lines });
        if usage.offered.is_some() {
            let node = tree
                .descendants()
                .find(|n| n.range().start == usage.span.start)
                .expect("element found by its start");
            let attr = node.attributes().find(|a| a.name() == "offered").expect("offered attribute");
            let r = attr.range_value();
            let all: Vec<&str> = entry.optional_keys().collect();
            splices.push(Splice {
                at: Span::new(r.start, r.end),
                text: escape_xml(&all.join(" ")),
            });
        }
        out.extended.push(entry.sdk_id.clone());
        out.diagnostics.push(
            Diagnostic::info(Code::NewOptionalPractices, format!("added {} to {} for review", new.join(", "), entry.sdk_id)).at(loc),
        );
    }
    if !appended.is_empty() {
        let close = text
            .rfind(&format!("</{LIBRARIES_ELEMENT}"))
            .expect("root element has a closing tag when it has no children or some");
        let at = line_start(text, close);
        splices.push(Splice { at: Span::new(at, at), text: appended });
    }
    splices.sort_by_key(|s| std::cmp::Reverse(s.at.start));
    let mut new_text = text.to_string();
    for s in splices {
        new_text.replace_range(s.at.start..s.at.end, &s.text);
    }
    out.text = new_text;
    Ok(out)
}
