//! Annotation insertion as text edits.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::lexer::TokenKind;
use super::{parse_annotation_text, CallSite, CompilationUnit, DeclKind, StatementHost, VarDeclaration};
use super::{DATA_ACCESS, DATA_TRANSMISSION, NOT_PERSONAL_DATA_ACCESS, NOT_PERSONAL_DATA_TRANSMISSION};
use crate::span::Span;

/// Package of the generated annotation types.
pub const ANNOTATION_PACKAGE: &str = "matcha.annotation";

pub const SOURCE_PREFIX: &str = "matchaSrc";
pub const SINK_PREFIX: &str = "matchaSink";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextEdit {
    pub file_path: String,
    pub range: Span,
    pub new_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InsertionError {
    #[error("no place to insert a declaration: {0}")]
    NoInsertionPoint(String),
    #[error("not a single annotation: {0}")]
    InvalidAnnotation(String),
    #[error("edits overlap at byte {0}")]
    OverlappingEdits(usize),
}

/// How to introduce a declaration when no existing one covers the call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extraction<'a> {
    /// Assign the call's result to a new local of this type.
    CallResult { type_text: &'a str },
    /// Move argument `index` into a new local. The type is taken from the
    /// argument's declaration when it is a simple name, else `type_text`.
    Argument { index: usize, type_text: &'a str },
}

fn annotation_kind(simple_name: &str) -> Option<bool> {
    match simple_name {
        DATA_ACCESS | NOT_PERSONAL_DATA_ACCESS => Some(true),
        DATA_TRANSMISSION | NOT_PERSONAL_DATA_TRANSMISSION => Some(false),
        _ => None,
    }
}

fn line_prefix(unit: &CompilationUnit, offset: usize) -> &str {
    let line = unit.line_index.line_of(offset);
    let start = unit.line_index.line_start(line);
    &unit.source[start..offset]
}

/// Indentation to reuse when the construct at `offset` starts its line.
fn own_line_indent(unit: &CompilationUnit, offset: usize) -> Option<&str> {
    let prefix = line_prefix(unit, offset);
    prefix.chars().all(|c| c == ' ' || c == '\t').then_some(prefix)
}

fn fresh_name(unit: &CompilationUnit, prefix: &str) -> String {
    let taken: alloc::collections::BTreeSet<&str> = unit
        .tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Ident && t.text(&unit.source).starts_with(prefix))
        .map(|t| t.text(&unit.source))
        .collect();
    (1..)
        .map(|n| format!("{prefix}{n}"))
        .find(|n| !taken.contains(n.as_str()))
        .unwrap_or_default()
}

/// Spell a qualified type the way this file can refer to it.
fn type_for_unit(unit: &CompilationUnit, type_text: &str) -> String {
    let (base, dims) = match type_text.find('[') {
        Some(i) => (&type_text[..i], &type_text[i..]),
        None => (type_text, ""),
    };
    let Some(dot) = base.rfind('.') else {
        return type_text.to_string();
    };
    let (pkg, simple) = (&base[..dot], &base[dot + 1..]);
    let visible = pkg == "java.lang"
        || unit.package_name.as_deref() == Some(pkg)
        || unit.imports.iter().any(|i| {
            !i.is_static && ((!i.wildcard && i.qualified_name == base) || (i.wildcard && i.qualified_name == pkg))
        });
    let clash = unit
        .imports
        .iter()
        .any(|i| !i.is_static && !i.wildcard && i.qualified_name != base && i.qualified_name.rsplit('.').next() == Some(simple));
    if visible && !clash {
        format!("{simple}{dims}")
    } else {
        type_text.to_string()
    }
}

fn import_edit(unit: &CompilationUnit) -> Option<TextEdit> {
    if unit.imports.iter().any(|i| !i.is_static && i.wildcard && i.qualified_name == ANNOTATION_PACKAGE) {
        return None;
    }
    if unit.package_name.as_deref() == Some(ANNOTATION_PACKAGE) {
        return None;
    }
    let line = format!("import {ANNOTATION_PACKAGE}.*;");
    let (at, text) = if let Some(last) = unit.imports.last() {
        (last.span.end, format!("\n{line}"))
    } else if let Some(pkg) = unit
        .tokens
        .iter()
        .position(|t| t.kind == TokenKind::Keyword && t.text(&unit.source) == "package")
        .and_then(|i| unit.tokens[i..].iter().find(|t| t.text(&unit.source) == ";"))
    {
        (pkg.span.end, format!("\n\n{line}"))
    } else {
        (0, format!("{line}\n\n"))
    };
    Some(TextEdit {
        file_path: unit.file_path.clone(),
        range: Span::empty(at),
        new_text: text,
    })
}

/// True when `[lo, hi)` holds a token that makes the call conditional or
/// deferred relative to its statement.
fn conditional_context(unit: &CompilationUnit, lo: usize, hi: usize) -> bool {
    unit.tokens
        .iter()
        .filter(|t| t.span.start >= lo && t.span.end <= hi && t.kind == TokenKind::Punct)
        .any(|t| matches!(t.text(&unit.source), "->" | "?" | "&&" | "||"))
}

/// Edits that attach `annotation_text` to `target`, or, with no target,
/// extract the call (or one of its arguments) into a new annotated local.
/// Returns no edits when the declaration already carries an annotation of
/// the same kind.
pub fn apply_annotation_insertion(
    unit: &CompilationUnit,
    target: Option<&VarDeclaration>,
    call: &CallSite,
    annotation_text: &str,
    extraction: Extraction<'_>,
) -> Result<Vec<TextEdit>, InsertionError> {
    let annotation_text = annotation_text.trim();
    let ann = parse_annotation_text(annotation_text)
        .ok_or_else(|| InsertionError::InvalidAnnotation(annotation_text.to_string()))?;
    let kind = annotation_kind(ann.simple_name());
    let mut edits = match target {
        Some(t) => {
            if t.annotations.iter().any(|a| kind.is_some() && annotation_kind(a.simple_name()) == kind) {
                return Ok(Vec::new());
            }
            annotate_declaration(unit, t, annotation_text)
        }
        None => extract(unit, call, annotation_text, extraction)?,
    };
    if let Some(e) = import_edit(unit) {
        edits.push(e);
    }
    edits.sort_by_key(|e| (e.range.start, e.range.end));
    check_edits_disjoint(&edits)?;
    Ok(edits)
}

fn annotate_declaration(unit: &CompilationUnit, target: &VarDeclaration, annotation_text: &str) -> Vec<TextEdit> {
    let file_path = unit.file_path.clone();
    if target.kind == DeclKind::Parameter {
        return alloc::vec![TextEdit {
            file_path,
            range: Span::empty(target.span.start),
            new_text: format!("{annotation_text} "),
        }];
    }
    let indent = own_line_indent(unit, target.span.start);
    let separator = match indent {
        Some(ind) => format!("\n{ind}"),
        None => String::from(" "),
    };
    if target.declarator_group_size <= 1 {
        return alloc::vec![TextEdit {
            file_path,
            range: Span::empty(target.span.start),
            new_text: format!("{annotation_text}{separator}"),
        }];
    }
    // Split `T a, b;` into one statement per declarator.
    let mut group: Vec<&VarDeclaration> = unit
        .declarations
        .iter()
        .filter(|d| d.span == target.span && d.kind == target.kind)
        .collect();
    group.sort_by_key(|d| d.group_index);
    let first = group.first().map_or(target.name_span.start, |d| d.name_span.start);
    let prefix = unit.source[target.span.start..first].trim_end();
    let mut text = String::new();
    for (i, d) in group.iter().enumerate() {
        if i > 0 {
            text.push_str(&separator);
        }
        if d.name_span == target.name_span {
            text.push_str(annotation_text);
            text.push_str(&separator);
        }
        text.push_str(prefix);
        text.push(' ');
        text.push_str(unit.text(d.declarator_span).trim_end());
        text.push(';');
    }
    alloc::vec![TextEdit {
        file_path,
        range: target.span,
        new_text: text,
    }]
}

fn extract(
    unit: &CompilationUnit,
    call: &CallSite,
    annotation_text: &str,
    extraction: Extraction<'_>,
) -> Result<Vec<TextEdit>, InsertionError> {
    let stmt = call.enclosing_statement_span;
    if call.host != StatementHost::Block {
        return Err(InsertionError::NoInsertionPoint(String::from(
            "the call is not in a statement directly inside a block",
        )));
    }
    if conditional_context(unit, stmt.start, call.span.start) {
        return Err(InsertionError::NoInsertionPoint(String::from(
            "the call is evaluated conditionally or inside a lambda",
        )));
    }
    let (prefix, type_text, moved) = match extraction {
        Extraction::CallResult { type_text } => {
            if type_text.trim().is_empty() || type_text.trim() == "void" {
                return Err(InsertionError::NoInsertionPoint(String::from("the call returns no value")));
            }
            (SOURCE_PREFIX, type_for_unit(unit, type_text.trim()), call.span)
        }
        Extraction::Argument { index, type_text } => {
            let Some(arg) = call.arguments.get(index) else {
                return Err(InsertionError::NoInsertionPoint(format!("the call has no argument {index}")));
            };
            let declared = super::declaration_in_scope(unit, arg.text.trim(), call.span.start)
                .map(|d| d.declared_type_text.as_str())
                .filter(|t| *t != "var" && !t.ends_with("..."));
            let ty = match declared {
                Some(t) => String::from(t),
                None => type_for_unit(unit, type_text.trim()),
            };
            (SINK_PREFIX, ty, arg.span)
        }
    };
    let name = fresh_name(unit, prefix);
    let moved_text = unit.text(moved);
    let indent = own_line_indent(unit, stmt.start);
    let separator = match indent {
        Some(ind) => format!("\n{ind}"),
        None => String::from(" "),
    };
    let declaration = format!("{annotation_text}{separator}{type_text} {name} = {moved_text};");
    let file_path = unit.file_path.clone();
    if matches!(extraction, Extraction::CallResult { .. }) && call.is_expression_statement {
        return Ok(alloc::vec![TextEdit {
            file_path,
            range: stmt,
            new_text: declaration,
        }]);
    }
    Ok(alloc::vec![
        TextEdit {
            file_path: file_path.clone(),
            range: Span::empty(stmt.start),
            new_text: format!("{declaration}{separator}"),
        },
        TextEdit {
            file_path,
            range: moved,
            new_text: name,
        },
    ])
}

/// Fails if two edits touch the same byte, or two insertions share a point.
pub fn check_edits_disjoint(edits: &[TextEdit]) -> Result<(), InsertionError> {
    let mut sorted: Vec<&TextEdit> = edits.iter().collect();
    sorted.sort_by_key(|e| (e.range.start, e.range.end));
    for w in sorted.windows(2) {
        let (a, b) = (w[0].range, w[1].range);
        let same_point = a.is_empty() && b.is_empty() && a.start == b.start;
        if a.overlaps(b) || same_point || (!a.is_empty() && b.start < a.end) {
            return Err(InsertionError::OverlappingEdits(b.start));
        }
    }
    Ok(())
}

/// Apply non-overlapping edits to `source`.
pub fn apply_edits(source: &str, edits: &[TextEdit]) -> Result<String, InsertionError> {
    check_edits_disjoint(edits)?;
    let mut sorted: Vec<&TextEdit> = edits.iter().collect();
    sorted.sort_by_key(|e| (e.range.start, e.range.end));
    let mut out = String::with_capacity(source.len() + edits.iter().map(|e| e.new_text.len()).sum::<usize>());
    let mut cursor = 0;
    for e in sorted {
        if e.range.end > source.len() || !source.is_char_boundary(e.range.start) || !source.is_char_boundary(e.range.end) {
            return Err(InsertionError::OverlappingEdits(e.range.start));
        }
        out.push_str(&source[cursor..e.range.start]);
        out.push_str(&e.new_text);
        cursor = e.range.end;
    }
    out.push_str(&source[cursor..]);
    Ok(out)
}
