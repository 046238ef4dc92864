//! Insertion fixtures under `tests/fixtures/rewrite`: each case names a
//! call and a wizard answer, and the expected file after the edit.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use matcha_core::analysis::lower_units;
use matcha_core::detect::{detect_api_calls, ApiKind, ApiList};
use matcha_core::java::{apply_edits, parse_unit, CompilationUnit};
use matcha_core::taxonomy::Taxonomy;
use matcha_core::wizard::{run_wizard_step, WizardChoice, WizardStep};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct RewriteCase {
    pub name: String,
    pub method: String,
    #[serde(default = "first")]
    pub occurrence: usize,
    pub choice: WizardChoice,
    /// Declaration that must carry the new annotation.
    pub declaration: String,
}

fn first() -> usize {
    1
}

pub fn rewrite_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/rewrite")
}

pub fn load_cases() -> Vec<RewriteCase> {
    let text = std::fs::read_to_string(rewrite_dir().join("cases.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn expected_annotation(step: &WizardStep, choice: &WizardChoice) -> &'static str {
    match (step.kind(), choice) {
        (ApiKind::Access, WizardChoice::Dismiss) => "NotPersonalDataAccess",
        (ApiKind::Transmission, WizardChoice::Dismiss) => "NotPersonalDataTransmission",
        (ApiKind::Access, _) => "DataAccess",
        (ApiKind::Transmission, _) => "DataTransmission",
    }
}

fn step_for(unit: &CompilationUnit, case: &RewriteCase, api: &ApiList) -> Result<WizardStep, String> {
    let detected = detect_api_calls(std::slice::from_ref(unit), api);
    let target = detected
        .into_iter()
        .filter(|d| d.call.method_name == case.method)
        .nth(case.occurrence - 1)
        .ok_or_else(|| format!("no detected call #{} to {}", case.occurrence, case.method))?;
    let known: BTreeSet<String> = match &case.choice {
        WizardChoice::Transmission { access_ids, .. } => access_ids.iter().cloned().collect(),
        _ => BTreeSet::new(),
    };
    Ok(WizardStep::new(target, known))
}

/// Apply the case and check the result. Returns the rewritten source.
pub fn run_case(case: &RewriteCase, taxonomy: &Taxonomy, api: &ApiList) -> Result<String, String> {
    let file = format!("{}.java", case.name);
    let input = std::fs::read_to_string(rewrite_dir().join(&file)).map_err(|e| e.to_string())?;
    let unit = parse_unit(&input, &file);
    if !unit.parse_gaps.is_empty() {
        return Err(String::from("input does not parse cleanly"));
    }
    let step = step_for(&unit, case, api)?;
    let edits = run_wizard_step(&unit, &step, &case.choice).map_err(|e| e.to_string())?;
    if edits.is_empty() {
        return Err(String::from("no edits on the first pass"));
    }
    let output = apply_edits(&input, &edits).map_err(|e| e.to_string())?;

    let after = parse_unit(&output, &file);
    if !after.parse_gaps.is_empty() {
        return Err(format!("rewritten file has parse gaps at {:?}", after.parse_gaps));
    }
    let mut diags = Vec::new();
    lower_units(std::slice::from_ref(&after), taxonomy, &mut diags);
    if !diags.is_empty() {
        return Err(format!("rewritten annotations do not lower: {}", diags[0]));
    }
    let want = expected_annotation(&step, &case.choice);
    let (pairs, _) = after.partition_raw_annotations();
    let placed = pairs.iter().filter(|(a, _)| a.simple_name() == want).any(|(_, d)| d.name == case.declaration);
    if !placed {
        let found: Vec<String> = pairs.iter().map(|(a, d)| format!("@{} on {}", a.simple_name(), d.name)).collect();
        return Err(format!("@{want} is not on {}: {found:?}", case.declaration));
    }

    let again = step_for(&after, case, api)?;
    if !again.target.coverage.is_covered() {
        return Err(String::from("the call is still uncovered after the edit"));
    }
    let second = run_wizard_step(&after, &again, &case.choice).map_err(|e| format!("second pass: {e}"))?;
    if !second.is_empty() {
        return Err(format!("second pass produced {} edit(s)", second.len()));
    }

    let expected_path = rewrite_dir().join(format!("{}.expected.java", case.name));
    if std::env::var_os("MATCHA_BLESS").is_some() {
        std::fs::write(&expected_path, &output).unwrap();
    }
    let expected = std::fs::read_to_string(&expected_path).map_err(|e| format!("{}: {e}", expected_path.display()))?;
    if output != expected {
        return Err(format!("output differs from {}.expected.java:\n{output}", case.name));
    }
    Ok(output)
}
