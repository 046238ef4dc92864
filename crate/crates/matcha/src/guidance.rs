//! First-time explanations per diagnostic code, remembered in
//! `.matcha/state.json` so each is shown once per project.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use matcha_core::diag::{Code, Diagnostic};
use serde::{Deserialize, Serialize};

use crate::project::{write_atomic, STATE_DIR};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuidanceState {
    /// Stable ids of the codes already explained.
    pub explained: BTreeSet<String>,
}

impl GuidanceState {
    pub fn path(root: &Path) -> PathBuf {
        root.join(STATE_DIR).join("state.json")
    }

    /// A missing or unreadable state file counts as empty.
    pub fn load(root: &Path) -> GuidanceState {
        std::fs::read_to_string(Self::path(root))
            .ok()
            .and_then(|t| serde_json::from_str(&t).ok())
            .unwrap_or_default()
    }

    pub fn save(&self, root: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("state serializes");
        text.push('\n');
        write_atomic(&Self::path(root), text.as_bytes())
    }

    /// Explanations for codes in `diags` not shown before, marking them
    /// shown.
    pub fn take_new(&mut self, diags: &[Diagnostic]) -> Vec<(Code, &'static str)> {
        let codes: BTreeSet<Code> = diags.iter().map(|d| d.code).collect();
        codes
            .into_iter()
            .filter(|c| self.explained.insert(c.id().to_string()))
            .map(|c| (c, c.guidance()))
            .collect()
    }
}
