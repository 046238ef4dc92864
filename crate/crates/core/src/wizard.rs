//! The annotation wizard: per detected call, a menu narrowed to what the
//! API can touch, and the edits that record the developer's answer.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::annotation::{render_access, render_marker, render_transmission, AccessAnn, CollectionAttributes, SharingAttributes, SourceLoc, TransmissionAnn};
use crate::detect::{ApiKind, DetectedCall};
use crate::java::{apply_annotation_insertion, find_covering_declaration, CompilationUnit, Extraction, InsertionError, TextEdit};
use crate::label::{collected, shared};
use crate::taxonomy::DataType;

/// Menu label of the dismissal entry.
pub const NONE_OF_THE_ABOVE: &str = "None of the above";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WizardStep {
    pub target: DetectedCall,
    /// The API's candidate types, exactly; the menu adds [`NONE_OF_THE_ABOVE`].
    pub offered_data_types: Vec<DataType>,
    /// Pre-checked answers for a transmission; the developer may change
    /// any of them.
    pub preset_collection: CollectionAttributes,
    pub preset_sharing: SharingAttributes,
    /// Ids already defined in the project.
    pub known_access_ids: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "choice", rename_all = "snake_case")]
pub enum WizardChoice {
    Access { id: String, data_types: Vec<String> },
    /// "None of the above": mark the call as not touching personal data.
    Dismiss,
    Transmission {
        access_ids: Vec<String>,
        collection: CollectionAttributes,
        sharing: SharingAttributes,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WizardError {
    #[error("invalid choice: {0}")]
    InvalidChoice(String),
    #[error(transparent)]
    Insertion(#[from] InsertionError),
}

impl WizardStep {
    pub fn new(target: DetectedCall, known_access_ids: BTreeSet<String>) -> WizardStep {
        let p = &target.spec.preset;
        let preset_collection = CollectionAttributes {
            transmitted_off_device: p.transmitted_off_device.unwrap_or(false),
            not_stored_in_backend: p.not_stored_in_backend.unwrap_or(false),
            ..Default::default()
        };
        let preset_sharing = SharingAttributes {
            shared_with_third_party: p.shared_with_third_party.unwrap_or(false),
            ..Default::default()
        };
        WizardStep {
            offered_data_types: target.spec.data_types.clone(),
            preset_collection,
            preset_sharing,
            known_access_ids,
            target,
        }
    }

    pub fn kind(&self) -> ApiKind {
        self.target.spec.kind
    }

    /// Data type menu entries: the offered types, then the dismissal.
    pub fn menu(&self) -> Vec<String> {
        let mut m: Vec<String> = self.offered_data_types.iter().map(|d| d.name.clone()).collect();
        m.push(String::from(NONE_OF_THE_ABOVE));
        m
    }

    /// A fresh access id derived from the API's method name.
    pub fn suggested_access_id(&self) -> String {
        let base = self.target.spec.method_name().unwrap_or("access");
        let base = base.strip_prefix("get").filter(|s| !s.is_empty()).unwrap_or(base);
        let mut id = String::new();
        for (i, c) in base.chars().enumerate() {
            if i == 0 {
                id.extend(c.to_lowercase());
            } else {
                id.push(c);
            }
        }
        if !self.known_access_ids.contains(&id) {
            return id;
        }
        (2..).map(|n| format!("{id}{n}")).find(|c| !self.known_access_ids.contains(c)).unwrap_or(id)
    }

    fn annotation_text(&self, choice: &WizardChoice) -> Result<String, WizardError> {
        let invalid = |m: String| Err(WizardError::InvalidChoice(m));
        match (self.kind(), choice) {
            (ApiKind::Access, WizardChoice::Dismiss) => Ok(render_marker(true)),
            (ApiKind::Transmission, WizardChoice::Dismiss) => Ok(render_marker(false)),
            (ApiKind::Access, WizardChoice::Access { id, data_types }) => {
                if !is_access_id(id) {
                    return invalid(format!("\"{id}\" is not a usable access id"));
                }
                if self.known_access_ids.contains(id) {
                    return invalid(format!("access id \"{id}\" is already defined"));
                }
                if data_types.is_empty() {
                    return invalid(String::from("pick at least one data type"));
                }
                let mut picked = BTreeSet::new();
                for name in data_types {
                    match self.offered_data_types.iter().find(|d| &d.name == name) {
                        Some(d) => {
                            picked.insert(d.clone());
                        }
                        None => return invalid(format!("{name} is not offered for this call")),
                    }
                }
                Ok(render_access(&AccessAnn {
                    id: id.clone(),
                    data_types: picked,
                    loc: SourceLoc::default(),
                    marker: false,
                }))
            }
            (ApiKind::Transmission, WizardChoice::Transmission { access_ids, collection, sharing }) => {
                if access_ids.is_empty() {
                    return invalid(String::from("cite at least one access id"));
                }
                if let Some(id) = access_ids.iter().find(|id| !self.known_access_ids.contains(*id)) {
                    return invalid(format!("access id \"{id}\" is not defined"));
                }
                if collected(collection) && collection.collected_for.is_empty() {
                    return invalid(String::from("collected data needs at least one collection purpose"));
                }
                if !collection.transmitted_off_device && !collection.collected_for.is_empty() {
                    return invalid(String::from("collection purposes need the data to leave the device"));
                }
                if shared(sharing) && sharing.shared_for.is_empty() {
                    return invalid(String::from("shared data needs at least one sharing purpose"));
                }
                if !sharing.shared_with_third_party && !sharing.shared_for.is_empty() {
                    return invalid(String::from("sharing purposes need a third party"));
                }
                let mut ids: Vec<String> = Vec::new();
                for id in access_ids {
                    if !ids.contains(id) {
                        ids.push(id.clone());
                    }
                }
                Ok(render_transmission(&TransmissionAnn {
                    access_ids: ids,
                    collection: collection.clone(),
                    sharing: sharing.clone(),
                    loc: SourceLoc::default(),
                    marker: false,
                }))
            }
            (kind, c) => invalid(format!("{c:?} does not answer a {kind:?} suggestion")),
        }
    }
}

fn is_access_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Edits recording `choice` for the step's call in `unit`.
pub fn run_wizard_step(unit: &CompilationUnit, step: &WizardStep, choice: &WizardChoice) -> Result<Vec<TextEdit>, WizardError> {
    let text = step.annotation_text(choice)?;
    let call = unit
        .calls
        .iter()
        .find(|c| c.name_span == step.target.call.name_span)
        .ok_or_else(|| WizardError::InvalidChoice(String::from("the call is no longer in the file")))?;
    let spec = &step.target.spec;
    let extraction = match (&spec.data_arg, &spec.return_type) {
        (Some(a), _) if step.kind() == ApiKind::Transmission => Extraction::Argument {
            index: a.index,
            type_text: &a.type_text,
        },
        (_, Some(r)) => Extraction::CallResult { type_text: r },
        _ => Extraction::CallResult { type_text: "" },
    };
    let target = find_covering_declaration(unit, call);
    Ok(apply_annotation_insertion(unit, target, call, &text, extraction)?)
}
