//! Tolerant Java front end: a recovering parser that finds variable
//! declarations, call sites and annotations, plus import-level name
//! resolution and text-edit rewriting for annotation insertion.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::span::{LineIndex, Pos, Span};

pub mod lexer;
mod parser;
mod resolve;
mod rewrite;

pub use lexer::{Token, TokenKind};
pub use parser::{parse_annotation_text, parse_unit};
pub use resolve::{
    declaration_in_scope, find_covering_declaration, resolve_call_candidates, simple_type_name,
};
pub use rewrite::{
    apply_annotation_insertion, apply_edits, check_edits_disjoint, Extraction, InsertionError, TextEdit,
    ANNOTATION_PACKAGE, SINK_PREFIX, SOURCE_PREFIX,
};

/// The four privacy annotation names.
pub const DATA_ACCESS: &str = "DataAccess";
pub const NOT_PERSONAL_DATA_ACCESS: &str = "NotPersonalDataAccess";
pub const DATA_TRANSMISSION: &str = "DataTransmission";
pub const NOT_PERSONAL_DATA_TRANSMISSION: &str = "NotPersonalDataTransmission";

pub const PRIVACY_ANNOTATIONS: [&str; 4] = [
    DATA_ACCESS,
    NOT_PERSONAL_DATA_ACCESS,
    DATA_TRANSMISSION,
    NOT_PERSONAL_DATA_TRANSMISSION,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Import {
    pub qualified_name: String,
    pub wildcard: bool,
    pub is_static: bool,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DeclKind {
    Local,
    Field,
    Parameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnnotationValue {
    Str(String),
    /// Dotted name such as `DataType.PreciseLocation`.
    Enum(String),
    Array(Vec<AnnotationValue>),
    /// Any other expression, kept verbatim.
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnnotationTarget {
    /// Index of the first declaration of the annotated declarator group.
    Declaration(usize),
    Type,
    Method,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAnnotation {
    /// Name as written; may be qualified.
    pub name: String,
    pub elements: BTreeMap<String, AnnotationValue>,
    /// Element names that appeared more than once (first occurrence kept).
    pub duplicate_elements: Vec<String>,
    pub span: Span,
    pub pos: Pos,
    pub target: AnnotationTarget,
}

impl RawAnnotation {
    pub fn simple_name(&self) -> &str {
        self.name.rsplit('.').next().unwrap_or(&self.name)
    }

    pub fn is_privacy_annotation(&self) -> bool {
        let simple = self.simple_name();
        PRIVACY_ANNOTATIONS.contains(&simple)
            && (self.name == simple || self.name == alloc::format!("{ANNOTATION_PACKAGE}.{simple}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarDeclaration {
    pub name: String,
    pub declared_type_text: String,
    /// The whole declaration statement (annotations and modifiers through
    /// the terminating `;`). For parameters, the parameter text.
    pub span: Span,
    pub pos: Pos,
    pub name_span: Span,
    /// This declarator's own text: name, dimensions and initializer.
    pub declarator_span: Span,
    pub initializer_span: Option<Span>,
    pub annotations: Vec<RawAnnotation>,
    pub declarator_group_size: usize,
    pub group_index: usize,
    pub kind: DeclKind,
    /// Region of the file in which the name is visible.
    pub scope: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatementHost {
    /// Statement directly inside a block; a local declaration may be
    /// inserted in front of it.
    Block,
    /// Loop header, field initializer, braceless body and similar places
    /// where a preceding local declaration is not possible.
    NotExtractable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argument {
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallSite {
    /// Terminal method name; `<init>` for constructor calls.
    pub method_name: String,
    pub receiver_text: String,
    pub arguments: Vec<Argument>,
    /// Receiver through closing parenthesis.
    pub span: Span,
    pub pos: Pos,
    pub name_span: Span,
    /// Candidates found from explicit and static imports alone.
    pub qualified_candidates: Vec<String>,
    pub enclosing_statement_span: Span,
    pub host: StatementHost,
    /// Whether the statement consists of exactly this call.
    pub is_expression_statement: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompilationUnit {
    pub file_path: String,
    pub source: String,
    pub package_name: Option<String>,
    pub imports: Vec<Import>,
    pub declarations: Vec<VarDeclaration>,
    pub calls: Vec<CallSite>,
    pub raw_annotations: Vec<RawAnnotation>,
    /// Sorted, non-overlapping regions skipped during error recovery.
    pub parse_gaps: Vec<Span>,
    /// All tokens including comments.
    pub tokens: Vec<Token>,
    pub line_index: LineIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrontError {
    #[error("{file}:{}:{}: @{name} must annotate a variable declaration", pos.line, pos.col)]
    OrphanAnnotation {
        file: String,
        name: String,
        span: Span,
        pos: Pos,
    },
}

impl CompilationUnit {
    pub fn text(&self, span: Span) -> &str {
        &self.source[span.start..span.end]
    }

    pub fn pos(&self, offset: usize) -> Pos {
        self.line_index.pos(&self.source, offset)
    }

    pub fn declaration_of(&self, annotation: &RawAnnotation) -> Option<&VarDeclaration> {
        match annotation.target {
            AnnotationTarget::Declaration(i) => self.declarations.get(i),
            _ => None,
        }
    }

    /// Privacy annotations paired with the declaration they adorn, plus the
    /// ones sitting on something other than a variable declaration.
    pub fn partition_raw_annotations(&self) -> (Vec<(RawAnnotation, VarDeclaration)>, Vec<FrontError>) {
        let mut pairs = Vec::new();
        let mut orphans = Vec::new();
        for ann in self.raw_annotations.iter().filter(|a| a.is_privacy_annotation()) {
            match self.declaration_of(ann) {
                Some(decl) => pairs.push((ann.clone(), decl.clone())),
                None => orphans.push(FrontError::OrphanAnnotation {
                    file: self.file_path.clone(),
                    name: String::from(ann.simple_name()),
                    span: ann.span,
                    pos: ann.pos,
                }),
            }
        }
        pairs.sort_by_key(|(a, _)| (a.pos, a.span));
        (pairs, orphans)
    }
}

/// Privacy annotations in the unit paired with their declarations, ordered by
/// position. Fails on the first privacy annotation that adorns anything other
/// than a variable declaration.
pub fn collect_raw_annotations(
    unit: &CompilationUnit,
) -> Result<Vec<(RawAnnotation, VarDeclaration)>, FrontError> {
    let (pairs, mut orphans) = unit.partition_raw_annotations();
    if orphans.is_empty() {
        Ok(pairs)
    } else {
        Err(orphans.swap_remove(0))
    }
}
