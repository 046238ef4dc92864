//! `mine-keywords`: rank identifier words of files that call data access
//! APIs, as candidates for the keyword list.

use std::fmt::Write;
use std::path::Path;

use matcha_core::detect::{mine_keywords, ApiList, RankedTerm};

use crate::config::Config;
use crate::project::{collect_files, ProjectError};

pub fn mine_directory(dir: &Path, api_list: &ApiList, top_k: usize) -> anyhow::Result<Vec<RankedTerm>> {
    let config = Config::default();
    let files = match collect_files(dir, &config) {
        Ok(f) => f,
        Err(ProjectError::Empty(_)) => anyhow::bail!("no .java files under {}", dir.display()),
        Err(e) => return Err(e.into()),
    };
    let corpus: Vec<(String, String)> = files.java.into_iter().map(|f| (f.path, f.text)).collect();
    Ok(mine_keywords(&corpus, api_list, top_k)?)
}

/// `term<TAB>score` lines under a header, scores with 12 decimals.
pub fn ranked_tsv(terms: &[RankedTerm]) -> String {
    let mut s = String::from("term\tavg_tfidf\n");
    for t in terms {
        let _ = writeln!(s, "{}\t{:.12}", t.term, t.avg_tfidf);
    }
    s
}
