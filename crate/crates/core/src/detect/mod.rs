//! Suggestion engines: API calls, keywords, build dependencies, and
//! TF-IDF keyword mining.

mod api;
mod gradle;
mod keywords;
mod tfidf;

pub use api::{
    detect_api_calls, ApiKind, ApiList, ApiListError, ApiSpec, Confidence, Coverage, DataArg, DetectedCall,
    PresetHints, BUNDLED_API_LIST,
};
pub use gradle::{parse_gradle_dependencies, GradleDependencies, GradleDependency};
pub use keywords::{detect_keywords, ContextKind, KeywordHit, KeywordList, KeywordListError, KeywordOrigin, KeywordSpec, BUNDLED_KEYWORDS};
pub use tfidf::{flagged_documents, mine_keywords, rank_terms, term_stats, tokenize_terms, MineError, RankedTerm, TfIdfStats};

use alloc::vec::Vec;

/// Split an identifier into words at case changes, underscores, other
/// non-alphanumerics and letter/digit boundaries. `getHTTPResponse2` →
/// `get`, `HTTP`, `Response`, `2`.
pub fn split_identifier(ident: &str) -> Vec<&str> {
    let bytes = ident.as_bytes();
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let class = |b: u8| -> u8 {
        if b.is_ascii_lowercase() || b >= 0x80 {
            1
        } else if b.is_ascii_uppercase() {
            2
        } else if b.is_ascii_digit() {
            3
        } else {
            0
        }
    };
    for i in 0..bytes.len() {
        let c = class(bytes[i]);
        if c == 0 {
            if let Some(s) = start.take() {
                out.push(&ident[s..i]);
            }
            continue;
        }
        let Some(s) = start else {
            start = Some(i);
            continue;
        };
        let prev = class(bytes[i - 1]);
        let boundary = match (prev, c) {
            (1, 2) => true,
            (a, b) if (a == 3) != (b == 3) => true,
            // `HTTPResponse`: the last capital starts the next word
            (2, 2) => i + 1 < bytes.len() && class(bytes[i + 1]) == 1 && bytes[i + 1] < 0x80,
            _ => false,
        };
        if boundary && i > s {
            out.push(&ident[s..i]);
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&ident[s..]);
    }
    out
}
