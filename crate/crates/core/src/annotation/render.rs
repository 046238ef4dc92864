//! Typed annotation → Java annotation text.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    AccessAnn, CollectionAttributes, Lowered, SharingAttributes, TransmissionAnn, COLLECTED_FOR_PREFIX,
    COLLECTION_GROUPS, SHARED_FOR_PREFIX, SHARING_GROUPS,
};
use crate::java::lexer::escape_string;
use crate::java::{DATA_ACCESS, DATA_TRANSMISSION, NOT_PERSONAL_DATA_ACCESS, NOT_PERSONAL_DATA_TRANSMISSION};

pub fn render_access(a: &AccessAnn) -> String {
    if a.marker {
        return render_marker(true);
    }
    let types: Vec<String> = a.data_types.iter().map(|d| format!("DataType.{}", d.name)).collect();
    format!("@{DATA_ACCESS}(id = {}, dataType = {{{}}})", escape_string(&a.id), types.join(", "))
}

pub fn render_marker(access: bool) -> String {
    format!("@{}", if access { NOT_PERSONAL_DATA_ACCESS } else { NOT_PERSONAL_DATA_TRANSMISSION })
}

fn flag_constants(class: &str, groups: &[&str], flags: &[bool], out: &mut Vec<String>) {
    for (g, &v) in groups.iter().zip(flags) {
        out.push(format!("{class}.{g}_{}", if v { "TRUE" } else { "FALSE" }));
    }
}

fn collection_constants(c: &CollectionAttributes) -> Vec<String> {
    let mut out = Vec::new();
    flag_constants("CollectionAttribute", &COLLECTION_GROUPS, &c.flags(), &mut out);
    for p in &c.collected_for {
        out.push(format!("CollectionAttribute.{COLLECTED_FOR_PREFIX}{}", p.constant()));
    }
    out
}

fn sharing_constants(s: &SharingAttributes) -> Vec<String> {
    let mut out = Vec::new();
    flag_constants("SharingAttribute", &SHARING_GROUPS, &s.flags(), &mut out);
    for p in &s.shared_for {
        out.push(format!("SharingAttribute.{SHARED_FOR_PREFIX}{}", p.constant()));
    }
    out
}

pub fn render_transmission(t: &TransmissionAnn) -> String {
    if t.marker {
        return render_marker(false);
    }
    let ids: Vec<String> = t.access_ids.iter().map(|s| escape_string(s)).collect();
    format!(
        "@{DATA_TRANSMISSION}(accessId = {{{}}}, collectionAttribute = {{{}}}, sharingAttribute = {{{}}})",
        ids.join(", "),
        collection_constants(&t.collection).join(", "),
        sharing_constants(&t.sharing).join(", ")
    )
}

pub fn render_lowered(l: &Lowered) -> String {
    match l {
        Lowered::Access(a) => render_access(a),
        Lowered::Transmission(t) => render_transmission(t),
    }
}
