//! The bundled SDK knowledge base, keyword list and API list compared with
//! the published tables.

use matcha_core::detect::{ApiKind, ApiList, KeywordList};
use matcha_core::sdk::KnowledgeBase;
use matcha_core::taxonomy::Taxonomy;

use super::keyword_table::KEYWORD_TABLE;
use super::sdk_table::SDK_TABLE;

pub const SDK_COUNT: usize = 58;
pub const MIN_UNIQUE_PHRASES: usize = 180;

/// Every disagreement between the bundled data and the tables.
pub fn dataset_mismatches() -> Vec<String> {
    let t = Taxonomy::bundled();
    let kb = KnowledgeBase::bundled(&t);
    let kw = KeywordList::bundled(&t);
    let api = ApiList::bundled(&t);
    let mut out = Vec::new();

    if kb.entries.len() != SDK_COUNT {
        out.push(format!("knowledge base has {} entries, want {SDK_COUNT}", kb.entries.len()));
    }
    for (name, patterns) in SDK_TABLE {
        match kb.entries.iter().find(|e| e.display_name == *name) {
            None => out.push(format!("no knowledge base entry named {name}")),
            Some(e) if e.maven_patterns != *patterns => {
                out.push(format!("{name}: patterns {:?}, want {patterns:?}", e.maven_patterns))
            }
            Some(_) => {}
        }
    }

    if kw.unique_phrases() < MIN_UNIQUE_PHRASES {
        out.push(format!("{} unique keyword phrases, want at least {MIN_UNIQUE_PHRASES}", kw.unique_phrases()));
    }
    for k in kw.keywords.iter().filter(|k| k.phrase != k.phrase.to_lowercase()) {
        out.push(format!("keyword {:?} is not lowercase", k.phrase));
    }
    for (ty, phrases) in KEYWORD_TABLE {
        for p in *phrases {
            let hit = kw
                .keywords
                .iter()
                .any(|k| k.phrase == *p && k.data_types.iter().any(|d| d.name == *ty));
            if !hit {
                out.push(format!("keyword {p:?} missing for {ty}"));
            }
        }
    }

    let has = |f: &dyn Fn(&matcha_core::detect::ApiSpec) -> bool| api.apis.iter().any(f);
    for m in ["getLastKnownLocation", "requestLocationUpdates"] {
        if !has(&|a| a.kind == ApiKind::Access && a.pattern.ends_with(&format!(".{m}"))) {
            out.push(format!("no access API {m}"));
        }
    }
    if !has(&|a| {
        a.kind == ApiKind::Transmission
            && a.pattern.starts_with("com.google.firebase.storage.StorageReference.put")
    }) {
        out.push(String::from("no Firebase Storage upload transmission"));
    }
    if !has(&|a| {
        a.kind == ApiKind::Transmission
            && a.preset.shared_with_third_party == Some(true)
            && a.preset.transmitted_off_device != Some(true)
    }) {
        out.push(String::from("no on-device sharing transmission"));
    }
    out
}
