//! TF-IDF keyword mining over source files that call data access APIs.
//!
//! tf = term count / document token count, idf = ln(N / df), and a term's
//! rank is its mean score over the flagged documents.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::api::{detect_api_calls, ApiKind, ApiList};
use super::split_identifier;
use crate::java::{parse_unit, CompilationUnit, TokenKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfIdfStats {
    pub term: String,
    /// Document index → score, for documents containing the term.
    pub per_document: BTreeMap<usize, f64>,
    pub n: usize,
    pub df: usize,
    pub avg_over_flagged: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedTerm {
    pub term: String,
    pub avg_tfidf: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MineError {
    #[error("the corpus is empty")]
    EmptyCorpus,
    #[error("top_k must be at least 1")]
    ZeroTopK,
    #[error("no file in the corpus calls a data access API")]
    EmptyFlaggedSet,
}

/// Identifier words of a unit, lowercased. Keywords, literals, comments and
/// purely numeric words are dropped.
pub fn tokenize_terms(unit: &CompilationUnit) -> Vec<String> {
    let mut out = Vec::new();
    for t in unit.tokens.iter().filter(|t| t.kind == TokenKind::Ident) {
        for w in split_identifier(t.text(&unit.source)) {
            if !w.bytes().all(|b| b.is_ascii_digit()) {
                out.push(w.to_lowercase());
            }
        }
    }
    out
}

/// Whether each unit contains an access API call.
pub fn flagged_documents(units: &[CompilationUnit], list: &ApiList) -> Vec<bool> {
    units
        .iter()
        .map(|u| {
            detect_api_calls(core::slice::from_ref(u), list)
                .iter()
                .any(|d| d.kind() == ApiKind::Access)
        })
        .collect()
}

/// Scores for every term of every document.
pub fn term_stats(docs: &[Vec<String>], flagged: &[bool]) -> BTreeMap<String, TfIdfStats> {
    let n = docs.len();
    let mut counts: Vec<BTreeMap<&str, usize>> = Vec::with_capacity(n);
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in docs {
        let mut c: BTreeMap<&str, usize> = BTreeMap::new();
        for t in doc {
            *c.entry(t.as_str()).or_default() += 1;
        }
        for t in c.keys() {
            *df.entry(t).or_default() += 1;
        }
        counts.push(c);
    }
    let flagged_idx: Vec<usize> = (0..n).filter(|&i| flagged.get(i).copied().unwrap_or(false)).collect();
    let mut out = BTreeMap::new();
    for (&term, &d) in &df {
        let idf = libm::log(n as f64 / d as f64);
        let mut per_document = BTreeMap::new();
        for (i, c) in counts.iter().enumerate() {
            if let Some(&k) = c.get(term) {
                per_document.insert(i, k as f64 / docs[i].len() as f64 * idf);
            }
        }
        let avg = if flagged_idx.is_empty() {
            0.0
        } else {
            flagged_idx.iter().map(|i| per_document.get(i).copied().unwrap_or(0.0)).sum::<f64>() / flagged_idx.len() as f64
        };
        out.insert(
            String::from(term),
            TfIdfStats {
                term: String::from(term),
                per_document,
                n,
                df: d,
                avg_over_flagged: avg,
            },
        );
    }
    out
}

/// Terms occurring in flagged documents, best mean score first, ties in
/// lexicographic order.
pub fn rank_terms(docs: &[Vec<String>], flagged: &[bool], top_k: usize) -> Result<Vec<RankedTerm>, MineError> {
    if docs.is_empty() {
        return Err(MineError::EmptyCorpus);
    }
    if top_k == 0 {
        return Err(MineError::ZeroTopK);
    }
    if !flagged.iter().take(docs.len()).any(|&f| f) {
        return Err(MineError::EmptyFlaggedSet);
    }
    let in_flagged: BTreeSet<&str> = docs
        .iter()
        .zip(flagged)
        .filter(|(_, &f)| f)
        .flat_map(|(d, _)| d.iter().map(String::as_str))
        .collect();
    let mut ranked: Vec<RankedTerm> = term_stats(docs, flagged)
        .into_values()
        .filter(|s| in_flagged.contains(s.term.as_str()))
        .map(|s| RankedTerm {
            term: s.term,
            avg_tfidf: s.avg_over_flagged,
        })
        .collect();
    ranked.sort_by(|a, b| b.avg_tfidf.total_cmp(&a.avg_tfidf).then_with(|| a.term.cmp(&b.term)));
    ranked.truncate(top_k);
    Ok(ranked)
}

/// Rank candidate keywords from `(file name, source)` pairs.
pub fn mine_keywords(corpus: &[(String, String)], list: &ApiList, top_k: usize) -> Result<Vec<RankedTerm>, MineError> {
    let units: Vec<CompilationUnit> = corpus.iter().map(|(name, src)| parse_unit(src, name)).collect();
    let docs: Vec<Vec<String>> = units.iter().map(tokenize_terms).collect();
    let flagged = flagged_documents(&units, list);
    rank_terms(&docs, &flagged, top_k)
}
