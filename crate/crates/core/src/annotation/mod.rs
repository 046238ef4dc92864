//! Typed privacy annotations and the access/transmission graph.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::span::{Pos, Span};
use crate::taxonomy::{DataType, Purpose};

mod graph;
mod java_pkg;
mod lower;
mod render;

pub use graph::{build_graph, build_graph_lenient, validate_graph, AnnotationGraph, GraphError, Marker};
pub use java_pkg::annotation_sources;
pub use lower::{lower_annotation, LowerError};
pub use render::{render_access, render_lowered, render_marker, render_transmission};

/// Names of the boolean groups inside `collectionAttribute`.
pub const COLLECTION_GROUPS: [&str; 5] = [
    "TRANSMITTED_OFF_DEVICE",
    "NOT_STORED_IN_BACKEND",
    "ENCRYPTED_IN_TRANSIT",
    "OPTIONAL_COLLECTION",
    "USER_TO_USER_ENCRYPTION",
];

/// Names of the boolean groups inside `sharingAttribute`.
pub const SHARING_GROUPS: [&str; 6] = [
    "SHARED_WITH_THIRD_PARTY",
    "ONLY_SHARED_WITH_SERVICE_PROVIDERS",
    "ONLY_SHARED_FOR_LEGAL_PURPOSES",
    "ONLY_INITIATED_BY_USER",
    "ONLY_AFTER_GETTING_USER_CONSENT",
    "ONLY_TRANSFERRING_ANONYMOUS_DATA",
];

pub const COLLECTED_FOR_PREFIX: &str = "COLLECTED_FOR_";
pub const SHARED_FOR_PREFIX: &str = "SHARED_FOR_";

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceLoc {
    pub file: String,
    pub pos: Pos,
    pub span: Span,
}

impl SourceLoc {
    pub fn location(&self) -> crate::diag::Location {
        crate::diag::Location::source(&self.file, self.pos)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollectionAttributes {
    pub transmitted_off_device: bool,
    pub not_stored_in_backend: bool,
    pub encrypted_in_transit: bool,
    pub optional_collection: bool,
    pub user_to_user_encryption: bool,
    pub collected_for: BTreeSet<Purpose>,
}

impl CollectionAttributes {
    /// Flags in [`COLLECTION_GROUPS`] order.
    pub fn flags(&self) -> [bool; 5] {
        [
            self.transmitted_off_device,
            self.not_stored_in_backend,
            self.encrypted_in_transit,
            self.optional_collection,
            self.user_to_user_encryption,
        ]
    }

    pub fn from_flags(f: [bool; 5], collected_for: BTreeSet<Purpose>) -> Self {
        CollectionAttributes {
            transmitted_off_device: f[0],
            not_stored_in_backend: f[1],
            encrypted_in_transit: f[2],
            optional_collection: f[3],
            user_to_user_encryption: f[4],
            collected_for,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SharingAttributes {
    pub shared_with_third_party: bool,
    pub only_shared_with_service_providers: bool,
    pub only_shared_for_legal_purposes: bool,
    pub only_initiated_by_user: bool,
    pub only_after_getting_user_consent: bool,
    pub only_transferring_anonymous_data: bool,
    pub shared_for: BTreeSet<Purpose>,
}

impl SharingAttributes {
    /// Flags in [`SHARING_GROUPS`] order.
    pub fn flags(&self) -> [bool; 6] {
        [
            self.shared_with_third_party,
            self.only_shared_with_service_providers,
            self.only_shared_for_legal_purposes,
            self.only_initiated_by_user,
            self.only_after_getting_user_consent,
            self.only_transferring_anonymous_data,
        ]
    }

    pub fn from_flags(f: [bool; 6], shared_for: BTreeSet<Purpose>) -> Self {
        SharingAttributes {
            shared_with_third_party: f[0],
            only_shared_with_service_providers: f[1],
            only_shared_for_legal_purposes: f[2],
            only_initiated_by_user: f[3],
            only_after_getting_user_consent: f[4],
            only_transferring_anonymous_data: f[5],
            shared_for,
        }
    }

    pub fn any_exemption(&self) -> bool {
        self.flags()[1..].iter().any(|&b| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessAnn {
    /// Empty for markers.
    pub id: String,
    pub data_types: BTreeSet<DataType>,
    pub loc: SourceLoc,
    /// `@NotPersonalDataAccess`.
    pub marker: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransmissionAnn {
    pub access_ids: Vec<String>,
    pub collection: CollectionAttributes,
    pub sharing: SharingAttributes,
    pub loc: SourceLoc,
    /// `@NotPersonalDataTransmission`.
    pub marker: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lowered {
    Access(AccessAnn),
    Transmission(TransmissionAnn),
}

impl Lowered {
    pub fn loc(&self) -> &SourceLoc {
        match self {
            Lowered::Access(a) => &a.loc,
            Lowered::Transmission(t) => &t.loc,
        }
    }

    pub fn is_marker(&self) -> bool {
        match self {
            Lowered::Access(a) => a.marker,
            Lowered::Transmission(t) => t.marker,
        }
    }
}
