//! Keyword mining checked against a direct TF-IDF computation with its own
//! tokenizer, over random small corpora.

use std::collections::{BTreeMap, BTreeSet};

use matcha_core::detect::{mine_keywords, ApiList};
use matcha_core::taxonomy::Taxonomy;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const TOLERANCE: f64 = 1e-9;

const VOCAB: &[&str] = &[
    "user", "account", "photo", "cache", "sync", "profile", "token", "phone", "device", "contact", "upload", "retry",
    "session", "draft", "friend", "score", "album", "player", "route", "badge",
];

const JAVA_KEYWORDS: &[&str] = &[
    "abstract", "boolean", "byte", "char", "class", "double", "else", "extends", "final", "float", "for", "if",
    "import", "int", "long", "new", "null", "package", "private", "protected", "public", "return", "short",
    "static", "this", "void", "while",
];

fn identifier(rng: &mut StdRng) -> String {
    let n = rng.gen_range(1..=3);
    let words: Vec<&str> = (0..n).map(|_| VOCAB[rng.gen_range(0..VOCAB.len())]).collect();
    let mut s = if rng.gen_bool(0.5) {
        words.join("_")
    } else {
        let mut s = String::from(words[0]);
        for w in &words[1..] {
            s.push_str(&w[..1].to_uppercase());
            s.push_str(&w[1..]);
        }
        s
    };
    if rng.gen_bool(0.2) {
        s.push_str(&rng.gen_range(0..100).to_string());
    }
    s
}

fn document(rng: &mut StdRng, flagged: bool) -> String {
    let mut s = String::new();
    if flagged {
        s.push_str("import android.telephony.TelephonyManager;\n");
    }
    s.push_str("class Doc {\n");
    if flagged {
        s.push_str("    TelephonyManager tm;\n");
    }
    s.push_str("    void run() {\n");
    if flagged {
        s.push_str("        tm.getDeviceId();\n");
    }
    for _ in 0..rng.gen_range(0..=30) {
        s.push_str(&format!("        {} = {};\n", identifier(rng), identifier(rng)));
    }
    s.push_str("    }\n}\n");
    s
}

fn split_words(ident: &str) -> Vec<String> {
    let mut words = Vec::new();
    for part in ident.split('_') {
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in part.chars() {
            if let Some(p) = prev {
                let case_break = p.is_ascii_lowercase() && ch.is_ascii_uppercase();
                let digit_break = p.is_ascii_digit() != ch.is_ascii_digit();
                if case_break || digit_break {
                    words.push(std::mem::take(&mut cur));
                }
            }
            cur.push(ch);
            prev = Some(ch);
        }
        if !cur.is_empty() {
            words.push(cur);
        }
    }
    words
        .into_iter()
        .map(|w| w.to_lowercase())
        .filter(|w| !w.chars().all(|c| c.is_ascii_digit()))
        .collect()
}

fn oracle_tokens(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut ident = String::new();
    for ch in src.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            ident.push(ch);
            continue;
        }
        let starts_like_ident = ident.chars().next().is_some_and(|c| !c.is_ascii_digit());
        if starts_like_ident && !JAVA_KEYWORDS.contains(&ident.as_str()) {
            out.extend(split_words(&ident));
        }
        ident.clear();
    }
    out
}

/// Mean TF-IDF over flagged documents of each term seen in one.
fn oracle_scores(docs: &[Vec<String>], flagged: &[bool]) -> BTreeMap<String, f64> {
    let n = docs.len() as f64;
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for d in docs {
        for t in d.iter().map(String::as_str).collect::<BTreeSet<_>>() {
            *df.entry(t).or_default() += 1;
        }
    }
    let flagged_docs: Vec<&Vec<String>> = docs.iter().zip(flagged).filter(|(_, &f)| f).map(|(d, _)| d).collect();
    let terms: BTreeSet<&str> = flagged_docs.iter().flat_map(|d| d.iter().map(String::as_str)).collect();
    terms
        .into_iter()
        .map(|t| {
            let idf = (n / df[t] as f64).ln();
            let sum: f64 = flagged_docs
                .iter()
                .map(|d| d.iter().filter(|w| w.as_str() == t).count() as f64 / d.len() as f64 * idf)
                .sum();
            (t.to_string(), sum / flagged_docs.len() as f64)
        })
        .collect()
}

/// Compare one random corpus; `Err` describes the first disagreement.
pub fn check_seed(seed: u64, api: &ApiList) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..=10);
    let flagged: Vec<bool> = (0..n).map(|i| i == 0 || rng.gen_bool(0.4)).collect();
    let corpus: Vec<(String, String)> = flagged
        .iter()
        .enumerate()
        .map(|(i, &f)| (format!("Doc{i}.java"), document(&mut rng, f)))
        .collect();
    let docs: Vec<Vec<String>> = corpus.iter().map(|(_, s)| oracle_tokens(s)).collect();
    if let Some(d) = docs.iter().find(|d| d.len() > 200) {
        return Err(format!("seed {seed}: document of {} tokens", d.len()));
    }
    let want = oracle_scores(&docs, &flagged);
    let all = mine_keywords(&corpus, api, usize::MAX).map_err(|e| format!("seed {seed}: {e}"))?;
    let got_terms: BTreeSet<&str> = all.iter().map(|r| r.term.as_str()).collect();
    let want_terms: BTreeSet<&str> = want.keys().map(String::as_str).collect();
    if got_terms != want_terms {
        return Err(format!("seed {seed}: terms differ: {got_terms:?} vs {want_terms:?}"));
    }
    for r in &all {
        let w = want[&r.term];
        if (r.avg_tfidf - w).abs() > TOLERANCE {
            return Err(format!("seed {seed}: {} scored {} want {w}", r.term, r.avg_tfidf));
        }
    }
    if all.windows(2).any(|p| p[0].avg_tfidf < p[1].avg_tfidf) {
        return Err(format!("seed {seed}: ranking not sorted"));
    }
    let k = rng.gen_range(1..=all.len().max(1));
    let top = mine_keywords(&corpus, api, k).map_err(|e| format!("seed {seed}: {e}"))?;
    if top[..] != all[..k.min(all.len())] {
        return Err(format!("seed {seed}: top {k} is not a prefix of the full ranking"));
    }
    Ok(())
}

/// Number of seeds in `0..seeds` that agree with the oracle, and the first
/// failure.
pub fn tfidf_agreement(seeds: u64) -> (u64, Option<String>) {
    let t = Taxonomy::bundled();
    let api = ApiList::bundled(&t);
    let mut ok = 0;
    let mut first = None;
    for seed in 0..seeds {
        match check_seed(seed, &api) {
            Ok(()) => ok += 1,
            Err(e) => {
                first.get_or_insert(e);
            }
        }
    }
    (ok, first)
}
