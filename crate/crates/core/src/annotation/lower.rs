//! Raw annotation → typed annotation.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{
    AccessAnn, CollectionAttributes, Lowered, SharingAttributes, SourceLoc, TransmissionAnn, COLLECTED_FOR_PREFIX,
    COLLECTION_GROUPS, SHARED_FOR_PREFIX, SHARING_GROUPS,
};
use crate::java::{
    AnnotationValue, RawAnnotation, ANNOTATION_PACKAGE, DATA_ACCESS, DATA_TRANSMISSION, NOT_PERSONAL_DATA_ACCESS,
    NOT_PERSONAL_DATA_TRANSMISSION,
};
use crate::taxonomy::{DataType, Purpose, Taxonomy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LowerError {
    #[error("@{annotation} has no field `{field}`")]
    UnknownField { annotation: String, field: String },
    #[error("`{constant}` is not a valid {class} constant")]
    UnknownEnumConstant { class: &'static str, constant: String },
    #[error("{attribute} must contain exactly one of {group}_TRUE or {group}_FALSE")]
    MissingBooleanGroup { attribute: &'static str, group: &'static str },
    #[error("{attribute} contains both {group}_TRUE and {group}_FALSE")]
    ConflictingBooleanGroup { attribute: &'static str, group: &'static str },
    #[error("@{annotation} is missing the `{field}` field")]
    MissingField { annotation: String, field: &'static str },
    #[error("field `{field}` is given more than once")]
    DuplicateField { field: String },
    #[error("field `{field}`: {reason}")]
    InvalidValue { field: &'static str, reason: String },
    #[error("@{0} is not a privacy annotation")]
    NotPrivacyAnnotation(String),
}

fn check_fields(raw: &RawAnnotation, allowed: &[&str]) -> Result<(), LowerError> {
    if let Some(dup) = raw.duplicate_elements.first() {
        return Err(LowerError::DuplicateField { field: dup.clone() });
    }
    for name in raw.elements.keys() {
        if !allowed.contains(&name.as_str()) {
            return Err(LowerError::UnknownField {
                annotation: raw.simple_name().to_string(),
                field: name.clone(),
            });
        }
    }
    Ok(())
}

fn required<'a>(raw: &'a RawAnnotation, field: &'static str) -> Result<&'a AnnotationValue, LowerError> {
    raw.elements.get(field).ok_or_else(|| LowerError::MissingField {
        annotation: raw.simple_name().to_string(),
        field,
    })
}

/// A single value or an array of values, flattened one level.
fn items(v: &AnnotationValue) -> Vec<&AnnotationValue> {
    match v {
        AnnotationValue::Array(xs) => xs.iter().collect(),
        other => alloc::vec![other],
    }
}

fn strings(v: &AnnotationValue, field: &'static str) -> Result<Vec<String>, LowerError> {
    items(v)
        .into_iter()
        .map(|x| match x {
            AnnotationValue::Str(s) => Ok(s.clone()),
            other => Err(LowerError::InvalidValue {
                field,
                reason: alloc::format!("expected a string literal, found {}", describe(other)),
            }),
        })
        .collect()
}

fn describe(v: &AnnotationValue) -> String {
    match v {
        AnnotationValue::Str(s) => alloc::format!("\"{s}\""),
        AnnotationValue::Enum(e) => e.clone(),
        AnnotationValue::Array(_) => String::from("a nested array"),
        AnnotationValue::Other(o) => alloc::format!("`{o}`"),
    }
}

/// Constant names for `class`, accepting `Class.X`, the qualified form and
/// bare `X`.
fn constants<'a>(v: &'a AnnotationValue, field: &'static str, class: &'static str) -> Result<Vec<&'a str>, LowerError> {
    items(v)
        .into_iter()
        .map(|x| match x {
            AnnotationValue::Enum(path) => {
                let path = path.strip_prefix(ANNOTATION_PACKAGE).and_then(|p| p.strip_prefix('.')).unwrap_or(path);
                match path.split_once('.') {
                    None => Ok(path),
                    Some((c, rest)) if c == class && !rest.contains('.') => Ok(rest),
                    Some(_) => Err(LowerError::UnknownEnumConstant {
                        class,
                        constant: path.to_string(),
                    }),
                }
            }
            other => Err(LowerError::InvalidValue {
                field,
                reason: alloc::format!("expected {class} constants, found {}", describe(other)),
            }),
        })
        .collect()
}

/// Decode paired boolean constants plus `<prefix><PURPOSE>` constants.
fn boolean_groups<const N: usize>(
    consts: &[&str],
    attribute: &'static str,
    class: &'static str,
    groups: &[&'static str; N],
    purpose_prefix: &str,
) -> Result<([bool; N], BTreeSet<Purpose>), LowerError> {
    let mut seen: [Option<bool>; N] = [None; N];
    let mut purposes = BTreeSet::new();
    for &c in consts {
        if let Some(p) = c.strip_prefix(purpose_prefix).and_then(Purpose::from_constant) {
            purposes.insert(p);
            continue;
        }
        let parsed = groups.iter().enumerate().find_map(|(i, g)| {
            let rest = c.strip_prefix(g)?;
            match rest {
                "_TRUE" => Some((i, true)),
                "_FALSE" => Some((i, false)),
                _ => None,
            }
        });
        let Some((i, value)) = parsed else {
            return Err(LowerError::UnknownEnumConstant {
                class,
                constant: c.to_string(),
            });
        };
        match seen[i] {
            Some(prev) if prev != value => {
                return Err(LowerError::ConflictingBooleanGroup {
                    attribute,
                    group: groups[i],
                })
            }
            _ => seen[i] = Some(value),
        }
    }
    let mut flags = [false; N];
    for i in 0..N {
        match seen[i] {
            Some(v) => flags[i] = v,
            None => {
                return Err(LowerError::MissingBooleanGroup {
                    attribute,
                    group: groups[i],
                })
            }
        }
    }
    Ok((flags, purposes))
}

pub fn lower_annotation(raw: &RawAnnotation, loc: SourceLoc, taxonomy: &Taxonomy) -> Result<Lowered, LowerError> {
    if !raw.is_privacy_annotation() {
        return Err(LowerError::NotPrivacyAnnotation(raw.name.clone()));
    }
    match raw.simple_name() {
        NOT_PERSONAL_DATA_ACCESS => {
            check_fields(raw, &[])?;
            Ok(Lowered::Access(AccessAnn {
                id: String::new(),
                data_types: BTreeSet::new(),
                loc,
                marker: true,
            }))
        }
        NOT_PERSONAL_DATA_TRANSMISSION => {
            check_fields(raw, &[])?;
            Ok(Lowered::Transmission(TransmissionAnn {
                access_ids: Vec::new(),
                collection: CollectionAttributes::default(),
                sharing: SharingAttributes::default(),
                loc,
                marker: true,
            }))
        }
        DATA_ACCESS => {
            check_fields(raw, &["id", "dataType"])?;
            let ids = strings(required(raw, "id")?, "id")?;
            let id = match ids.as_slice() {
                [one] if !one.trim().is_empty() => one.clone(),
                _ => {
                    return Err(LowerError::InvalidValue {
                        field: "id",
                        reason: String::from("expected one non-empty string"),
                    })
                }
            };
            let mut data_types: BTreeSet<DataType> = BTreeSet::new();
            for c in constants(required(raw, "dataType")?, "dataType", "DataType")? {
                let dt = taxonomy.data_type(c).ok_or_else(|| LowerError::UnknownEnumConstant {
                    class: "DataType",
                    constant: c.to_string(),
                })?;
                data_types.insert(dt);
            }
            if data_types.is_empty() {
                return Err(LowerError::InvalidValue {
                    field: "dataType",
                    reason: String::from("at least one data type is required"),
                });
            }
            Ok(Lowered::Access(AccessAnn {
                id,
                data_types,
                loc,
                marker: false,
            }))
        }
        DATA_TRANSMISSION => {
            check_fields(raw, &["accessId", "collectionAttribute", "sharingAttribute"])?;
            let mut access_ids = strings(required(raw, "accessId")?, "accessId")?;
            if access_ids.is_empty() || access_ids.iter().any(|s| s.trim().is_empty()) {
                return Err(LowerError::InvalidValue {
                    field: "accessId",
                    reason: String::from("expected one or more non-empty ids"),
                });
            }
            let mut seen = BTreeSet::new();
            access_ids.retain(|id| seen.insert(id.clone()));
            let cconsts = constants(required(raw, "collectionAttribute")?, "collectionAttribute", "CollectionAttribute")?;
            let (cflags, collected_for) = boolean_groups(
                &cconsts,
                "collectionAttribute",
                "CollectionAttribute",
                &COLLECTION_GROUPS,
                COLLECTED_FOR_PREFIX,
            )?;
            let sconsts = constants(required(raw, "sharingAttribute")?, "sharingAttribute", "SharingAttribute")?;
            let (sflags, shared_for) =
                boolean_groups(&sconsts, "sharingAttribute", "SharingAttribute", &SHARING_GROUPS, SHARED_FOR_PREFIX)?;
            Ok(Lowered::Transmission(TransmissionAnn {
                access_ids,
                collection: CollectionAttributes::from_flags(cflags, collected_for),
                sharing: SharingAttributes::from_flags(sflags, shared_for),
                loc,
                marker: false,
            }))
        }
        other => Err(LowerError::NotPrivacyAnnotation(other.to_string())),
    }
}
