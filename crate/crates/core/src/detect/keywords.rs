//! Fuzzy suggestions: case-insensitive keyword search over identifiers,
//! string literals and comments.

use aho_corasick::{AhoCorasick, AhoCorasickBuilder, MatchKind};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::split_identifier;
use crate::java::{CompilationUnit, TokenKind};
use crate::span::{Pos, Span};
use crate::taxonomy::{DataType, Taxonomy};

pub const BUNDLED_KEYWORDS: &str = include_str!("../../data/keywords.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeywordOrigin {
    /// From the data type definitions.
    Definition,
    /// An Android permission name.
    Permission,
    /// Mined from a code corpus.
    Corpus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordSpec {
    pub phrase: String,
    pub data_types: Vec<DataType>,
    pub origin: KeywordOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContextKind {
    Identifier,
    StringLiteral,
    Comment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordHit {
    pub spec: KeywordSpec,
    pub file: String,
    pub span: Span,
    pub pos: Pos,
    pub surface_form: String,
    pub context: ContextKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeywordListError {
    #[error("keyword list is not valid JSON: {0}")]
    Json(String),
    #[error("keywords[{index}]: {reason}")]
    Invalid { index: usize, reason: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKeyword {
    phrase: String,
    data_types: Vec<String>,
    origin: KeywordOrigin,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawList {
    version: String,
    keywords: Vec<RawKeyword>,
}

/// Lowercase with word separators removed, so `searchHistory`,
/// `SEARCH_HISTORY` and "search history" all agree.
fn squash(text: &str) -> String {
    text.chars()
        .filter(|c| !matches!(c, ' ' | '_' | '-' | '$'))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Identifier words, lowercased and concatenated.
fn squash_identifier(ident: &str) -> String {
    let mut s = String::with_capacity(ident.len());
    for w in split_identifier(ident) {
        s.extend(w.chars().flat_map(char::to_lowercase));
    }
    s
}

#[derive(Debug, Clone)]
pub struct KeywordList {
    pub version: String,
    pub keywords: Vec<KeywordSpec>,
    /// Over squashed phrases; pattern i belongs to `squashed_owner[i]`.
    squashed: AhoCorasick,
    squashed_owner: Vec<Vec<usize>>,
    /// Over raw phrases, ASCII case-insensitive.
    raw: AhoCorasick,
    raw_owner: Vec<Vec<usize>>,
}

fn automaton(patterns: &BTreeMap<String, Vec<usize>>, ascii_ci: bool) -> (AhoCorasick, Vec<Vec<usize>>) {
    let ac = AhoCorasickBuilder::new()
        .match_kind(MatchKind::Standard)
        .ascii_case_insensitive(ascii_ci)
        .build(patterns.keys())
        .expect("keyword automaton fits");
    (ac, patterns.values().cloned().collect())
}

impl KeywordList {
    pub fn bundled(taxonomy: &Taxonomy) -> KeywordList {
        KeywordList::from_json(BUNDLED_KEYWORDS, taxonomy).expect("bundled keyword list is valid")
    }

    pub fn from_json(text: &str, taxonomy: &Taxonomy) -> Result<KeywordList, KeywordListError> {
        let raw: RawList = serde_json::from_str(text).map_err(|e| KeywordListError::Json(format!("{e}")))?;
        let mut keywords = Vec::with_capacity(raw.keywords.len());
        for (index, k) in raw.keywords.into_iter().enumerate() {
            let bad = |reason: String| KeywordListError::Invalid { index, reason };
            if k.phrase.trim().is_empty() {
                return Err(bad(String::from("empty phrase")));
            }
            if k.phrase != k.phrase.to_lowercase() || k.phrase.trim() != k.phrase {
                return Err(bad(format!("phrase \"{}\" must be lowercase and trimmed", k.phrase)));
            }
            let mut data_types = Vec::new();
            for name in &k.data_types {
                data_types.push(taxonomy.data_type(name).ok_or_else(|| bad(format!("unknown data type \"{name}\"")))?);
            }
            if data_types.is_empty() {
                return Err(bad(String::from("no data types")));
            }
            keywords.push(KeywordSpec {
                phrase: k.phrase,
                data_types,
                origin: k.origin,
            });
        }
        Ok(KeywordList::new(raw.version, keywords))
    }

    pub fn new(version: String, keywords: Vec<KeywordSpec>) -> KeywordList {
        let mut squashed: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut raw: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, k) in keywords.iter().enumerate() {
            let s = squash(&k.phrase);
            if !s.is_empty() {
                squashed.entry(s).or_default().push(i);
            }
            raw.entry(k.phrase.clone()).or_default().push(i);
        }
        let (squashed, squashed_owner) = automaton(&squashed, false);
        let (raw, raw_owner) = automaton(&raw, true);
        KeywordList {
            version,
            keywords,
            squashed,
            squashed_owner,
            raw,
            raw_owner,
        }
    }

    /// Number of distinct phrases.
    pub fn unique_phrases(&self) -> usize {
        let mut p: Vec<&str> = self.keywords.iter().map(|k| k.phrase.as_str()).collect();
        p.sort_unstable();
        p.dedup();
        p.len()
    }
}

/// Regions whose text is not program content: package and import
/// statements, and privacy annotations.
fn skipped_regions(unit: &CompilationUnit) -> Vec<Span> {
    let mut out: Vec<Span> = unit.imports.iter().map(|i| i.span).collect();
    out.extend(unit.raw_annotations.iter().filter(|a| a.is_privacy_annotation()).map(|a| a.span));
    let src = unit.source.as_str();
    let mut toks = unit.tokens.iter().filter(|t| !t.is_comment());
    if let Some(first) = toks.next() {
        if first.kind == TokenKind::Keyword && first.text(src) == "package" {
            if let Some(semi) = toks.find(|t| t.text(src) == ";") {
                out.push(first.span.cover(semi.span));
            }
        }
    }
    out.sort();
    out
}

fn in_regions(regions: &[Span], span: Span) -> bool {
    let i = regions.partition_point(|r| r.start <= span.start);
    i > 0 && regions[i - 1].contains(span)
}

/// Keyword hits across all units, one per (keyword, location), sorted by
/// file, position and phrase.
pub fn detect_keywords(units: &[CompilationUnit], list: &KeywordList) -> Vec<KeywordHit> {
    let mut out = Vec::new();
    for unit in units {
        let src = unit.source.as_str();
        let skip = skipped_regions(unit);
        let mut found: BTreeMap<(Span, usize), ContextKind> = BTreeMap::new();
        for tok in &unit.tokens {
            if in_regions(&skip, tok.span) {
                continue;
            }
            let text = tok.text(src);
            match tok.kind {
                TokenKind::Ident => {
                    let squashed = squash_identifier(text);
                    for m in list.squashed.find_overlapping_iter(squashed.as_str()) {
                        for &k in &list.squashed_owner[m.pattern().as_usize()] {
                            found.insert((tok.span, k), ContextKind::Identifier);
                        }
                    }
                }
                TokenKind::StringLit | TokenKind::TextBlock | TokenKind::LineComment | TokenKind::BlockComment => {
                    let ctx = if tok.is_comment() {
                        ContextKind::Comment
                    } else {
                        ContextKind::StringLiteral
                    };
                    for m in list.raw.find_overlapping_iter(text) {
                        let span = Span::new(tok.span.start + m.start(), tok.span.start + m.end());
                        for &k in &list.raw_owner[m.pattern().as_usize()] {
                            found.insert((span, k), ctx);
                        }
                    }
                }
                _ => {}
            }
        }
        for ((span, k), context) in found {
            out.push(KeywordHit {
                spec: list.keywords[k].clone(),
                file: unit.file_path.clone(),
                span,
                pos: unit.pos(span.start),
                surface_form: String::from(&src[span.start..span.end]),
                context,
            });
        }
    }
    out.sort_by(|a, b| (&a.file, a.span, &a.spec.phrase).cmp(&(&b.file, b.span, &b.spec.phrase)));
    out
}
