//! The taxonomy, API list, keyword list and SDK knowledge base for a run:
//! bundled copies, file overrides from the config, and the optional remote
//! knowledge base.

use std::path::Path;
use std::time::Duration;

use anyhow::Context;
use matcha_core::detect::{ApiList, KeywordList};
use matcha_core::diag::{Code, Diagnostic};
use matcha_core::sdk::KnowledgeBase;
use matcha_core::taxonomy::Taxonomy;

use crate::config::Config;

/// Set to any value to keep matcha off the network.
pub const NO_NETWORK_ENV: &str = "MATCHA_NO_NETWORK";

#[derive(Debug, Clone)]
pub struct DataSet {
    pub taxonomy: Taxonomy,
    pub api_list: ApiList,
    pub keywords: KeywordList,
    pub kb: KnowledgeBase,
}

#[derive(Debug, Clone, Default)]
pub struct NetworkOptions {
    /// From `--offline` or the environment.
    pub offline: bool,
    /// `--kb-url`, taking precedence over the config.
    pub kb_url: Option<String>,
}

impl NetworkOptions {
    pub fn from_env(offline_flag: bool, kb_url: Option<String>) -> Self {
        NetworkOptions {
            offline: offline_flag || std::env::var_os(NO_NETWORK_ENV).is_some(),
            kb_url,
        }
    }
}

/// Fetches a document over HTTPS.
pub type Fetch<'a> = &'a dyn Fn(&str) -> Result<String, String>;

pub fn fetch_https(url: &str) -> Result<String, String> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .https_only(true)
        .timeout_global(Some(Duration::from_secs(15)))
        .build()
        .into();
    let mut resp = agent.get(url).call().map_err(|e| e.to_string())?;
    resp.body_mut().read_to_string().map_err(|e| e.to_string())
}

fn read(root: &Path, p: &Path) -> anyhow::Result<String> {
    let path = root.join(p);
    std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))
}

/// The knowledge base: the remote document when configured, reachable and
/// valid, else the local override or the bundled snapshot.
pub fn load_kb(
    local: KnowledgeBase,
    url: Option<&str>,
    offline: bool,
    taxonomy: &Taxonomy,
    fetch: Fetch<'_>,
    diags: &mut Vec<Diagnostic>,
) -> KnowledgeBase {
    let Some(url) = url else {
        return local;
    };
    let fallback = |why: String, diags: &mut Vec<Diagnostic>| {
        diags.push(Diagnostic::info(
            Code::KbFallback,
            format!("using the local SDK knowledge base {}: {why}", local.version),
        ));
        local.clone()
    };
    if !url.starts_with("https://") {
        return fallback(format!("{url} is not an https URL"), diags);
    }
    if offline {
        return fallback(String::from("network access is disabled"), diags);
    }
    match fetch(url) {
        Err(e) => fallback(format!("cannot fetch {url}: {e}"), diags),
        Ok(text) => match KnowledgeBase::from_json(&text, taxonomy) {
            Ok(kb) => kb,
            Err(e) => fallback(format!("{url}: {e}"), diags),
        },
    }
}

pub fn load_data(root: &Path, config: &Config, net: &NetworkOptions, fetch: Fetch<'_>, diags: &mut Vec<Diagnostic>) -> anyhow::Result<DataSet> {
    let taxonomy = Taxonomy::bundled();
    let api_list = match &config.api_list {
        Some(p) => ApiList::from_json(&read(root, p)?, &taxonomy).with_context(|| format!("API list {}", p.display()))?,
        None => ApiList::bundled(&taxonomy),
    };
    let keywords = match &config.keywords {
        Some(p) => KeywordList::from_json(&read(root, p)?, &taxonomy).with_context(|| format!("keyword list {}", p.display()))?,
        None => KeywordList::bundled(&taxonomy),
    };
    let local = match &config.kb {
        Some(p) => KnowledgeBase::from_json(&read(root, p)?, &taxonomy).with_context(|| format!("SDK knowledge base {}", p.display()))?,
        None => KnowledgeBase::bundled(&taxonomy),
    };
    let url = net.kb_url.as_deref().or(config.kb_url.as_deref());
    let kb = load_kb(local, url, net.offline, &taxonomy, fetch, diags);
    Ok(DataSet {
        taxonomy,
        api_list,
        keywords,
        kb,
    })
}
