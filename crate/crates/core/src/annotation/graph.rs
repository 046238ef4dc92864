//! Linking transmissions to accesses, and label-level consistency checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::{AccessAnn, Lowered, SourceLoc, TransmissionAnn};
use crate::diag::{Code, Diagnostic};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Marker {
    /// True for `@NotPersonalDataAccess`, false for the transmission marker.
    pub access: bool,
    pub loc: SourceLoc,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationGraph {
    pub accesses: BTreeMap<String, AccessAnn>,
    /// Sorted by location.
    pub transmissions: Vec<TransmissionAnn>,
    /// Sorted by location.
    pub markers: Vec<Marker>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, thiserror::Error)]
pub enum GraphError {
    #[error("access id \"{id}\" is defined twice")]
    DuplicateAccessId { id: String, first: SourceLoc, second: SourceLoc },
    #[error("access id \"{id}\" is not defined by any @DataAccess")]
    DanglingAccessId { id: String, transmission: SourceLoc },
}

impl GraphError {
    pub fn to_diagnostic(&self) -> Diagnostic {
        match self {
            GraphError::DuplicateAccessId { id, first, second } => Diagnostic::error(
                Code::DuplicateAccessId,
                format!(
                    "access id \"{id}\" is defined twice (first at {}:{}:{})",
                    first.file, first.pos.line, first.pos.col
                ),
            )
            .at(second.location()),
            GraphError::DanglingAccessId { id, transmission } => Diagnostic::error(
                Code::DanglingAccessId,
                format!("access id \"{id}\" is not defined by any @DataAccess"),
            )
            .at(transmission.location()),
        }
    }
}

/// Build the graph, keeping the first definition of a duplicated id and
/// reporting every problem.
pub fn build_graph_lenient(annotations: Vec<Lowered>) -> (AnnotationGraph, Vec<GraphError>) {
    let mut accesses: Vec<AccessAnn> = Vec::new();
    let mut transmissions = Vec::new();
    let mut markers = Vec::new();
    for a in annotations {
        match a {
            Lowered::Access(a) if a.marker => markers.push(Marker { access: true, loc: a.loc }),
            Lowered::Access(a) => accesses.push(a),
            Lowered::Transmission(t) if t.marker => markers.push(Marker { access: false, loc: t.loc }),
            Lowered::Transmission(t) => transmissions.push(t),
        }
    }
    accesses.sort_by(|a, b| a.loc.cmp(&b.loc));
    transmissions.sort_by(|a, b| a.loc.cmp(&b.loc));
    markers.sort();
    let mut errors = Vec::new();
    let mut by_id: BTreeMap<String, AccessAnn> = BTreeMap::new();
    for a in accesses {
        match by_id.get(&a.id) {
            Some(first) => errors.push(GraphError::DuplicateAccessId {
                id: a.id.clone(),
                first: first.loc.clone(),
                second: a.loc.clone(),
            }),
            None => {
                by_id.insert(a.id.clone(), a);
            }
        }
    }
    for t in &transmissions {
        for id in &t.access_ids {
            if !by_id.contains_key(id) {
                errors.push(GraphError::DanglingAccessId {
                    id: id.clone(),
                    transmission: t.loc.clone(),
                });
            }
        }
    }
    errors.sort();
    (
        AnnotationGraph {
            accesses: by_id,
            transmissions,
            markers,
        },
        errors,
    )
}

pub fn build_graph(annotations: Vec<Lowered>) -> Result<AnnotationGraph, Vec<GraphError>> {
    let (g, errors) = build_graph_lenient(annotations);
    if errors.is_empty() {
        Ok(g)
    } else {
        Err(errors)
    }
}

pub fn validate_graph(graph: &AnnotationGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut referenced: BTreeSet<&str> = BTreeSet::new();
    for t in &graph.transmissions {
        referenced.extend(t.access_ids.iter().map(String::as_str));
        let c = &t.collection;
        if c.transmitted_off_device && !c.user_to_user_encryption && c.collected_for.is_empty() {
            out.push(
                Diagnostic::error(
                    Code::MissingCollectionPurpose,
                    "data is collected (sent off the device, not end-to-end encrypted) but no COLLECTED_FOR purpose is given",
                )
                .at(t.loc.location()),
            );
        }
        if !c.transmitted_off_device && !c.collected_for.is_empty() {
            out.push(
                Diagnostic::warning(
                    Code::UnusedCollectionPurpose,
                    "COLLECTED_FOR purposes are given but TRANSMITTED_OFF_DEVICE is false",
                )
                .at(t.loc.location()),
            );
        }
        let s = &t.sharing;
        if s.shared_with_third_party && !s.any_exemption() && s.shared_for.is_empty() {
            out.push(
                Diagnostic::error(
                    Code::MissingSharingPurpose,
                    "data is shared with a third party under no exemption but no SHARED_FOR purpose is given",
                )
                .at(t.loc.location()),
            );
        }
        if !s.shared_with_third_party && !s.shared_for.is_empty() {
            out.push(
                Diagnostic::warning(
                    Code::UnusedSharingPurpose,
                    "SHARED_FOR purposes are given but SHARED_WITH_THIRD_PARTY is false",
                )
                .at(t.loc.location()),
            );
        }
    }
    for (id, a) in &graph.accesses {
        if !referenced.contains(id.as_str()) {
            out.push(
                Diagnostic::warning(Code::UnreferencedAccess, format!("access id \"{id}\" is not cited by any @DataTransmission"))
                    .at(a.loc.location()),
            );
        }
    }
    crate::diag::sort_diagnostics(&mut out);
    out
}
