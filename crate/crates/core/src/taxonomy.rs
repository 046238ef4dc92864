//! Data-type categories and purposes, loaded from a versioned JSON file.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

pub const BUNDLED_TAXONOMY: &str = include_str!("../data/taxonomy.json");

/// A data type within its category. Ordered by category id, then name.
/// Serialized as `Category/Name` so it can key a JSON object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DataType {
    pub category: String,
    pub name: String,
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.category, self.name)
    }
}

impl Serialize for DataType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DataType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.split_once('/') {
            Some((c, n)) if !c.is_empty() && !n.is_empty() && !n.contains('/') => Ok(DataType {
                category: String::from(c),
                name: String::from(n),
            }),
            _ => Err(serde::de::Error::custom(alloc::format!("expected Category/Name, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Purpose {
    AppFunctionality,
    Analytics,
    DeveloperCommunications,
    AdvertisingOrMarketing,
    FraudPreventionSecurityCompliance,
    Personalization,
    AccountManagement,
}

impl Purpose {
    pub const ALL: [Purpose; 7] = [
        Purpose::AppFunctionality,
        Purpose::Analytics,
        Purpose::DeveloperCommunications,
        Purpose::AdvertisingOrMarketing,
        Purpose::FraudPreventionSecurityCompliance,
        Purpose::Personalization,
        Purpose::AccountManagement,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Purpose::AppFunctionality => "AppFunctionality",
            Purpose::Analytics => "Analytics",
            Purpose::DeveloperCommunications => "DeveloperCommunications",
            Purpose::AdvertisingOrMarketing => "AdvertisingOrMarketing",
            Purpose::FraudPreventionSecurityCompliance => "FraudPreventionSecurityCompliance",
            Purpose::Personalization => "Personalization",
            Purpose::AccountManagement => "AccountManagement",
        }
    }

    /// Upper snake case, as used in Java enum constants.
    pub fn constant(self) -> &'static str {
        match self {
            Purpose::AppFunctionality => "APP_FUNCTIONALITY",
            Purpose::Analytics => "ANALYTICS",
            Purpose::DeveloperCommunications => "DEVELOPER_COMMUNICATIONS",
            Purpose::AdvertisingOrMarketing => "ADVERTISING_OR_MARKETING",
            Purpose::FraudPreventionSecurityCompliance => "FRAUD_PREVENTION_SECURITY_COMPLIANCE",
            Purpose::Personalization => "PERSONALIZATION",
            Purpose::AccountManagement => "ACCOUNT_MANAGEMENT",
        }
    }

    pub fn from_id(id: &str) -> Option<Purpose> {
        Purpose::ALL.into_iter().find(|p| p.id() == id)
    }

    pub fn from_constant(c: &str) -> Option<Purpose> {
        Purpose::ALL.into_iter().find(|p| p.constant() == c)
    }
}

impl fmt::Display for Purpose {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeInfo {
    pub id: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Category {
    pub id: String,
    pub label: String,
    pub data_types: Vec<TypeInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PurposeInfo {
    id: String,
    label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TaxonomyFile {
    version: String,
    categories: Vec<Category>,
    purposes: Vec<PurposeInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaxonomyError {
    #[error("taxonomy file is not valid JSON: {0}")]
    Json(String),
    #[error("data type {name} appears in both {first} and {second}")]
    DuplicateType { name: String, first: String, second: String },
    #[error("category {0} has no data types")]
    EmptyCategory(String),
    #[error("purposes must be exactly the seven known ids; problem with {0}")]
    PurposeMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    pub version: String,
    pub categories: Vec<Category>,
    purpose_labels: BTreeMap<Purpose, String>,
    by_name: BTreeMap<String, (usize, usize)>,
}

impl Taxonomy {
    pub fn bundled() -> Taxonomy {
        Taxonomy::from_json(BUNDLED_TAXONOMY).expect("bundled taxonomy is valid")
    }

    pub fn from_json(text: &str) -> Result<Taxonomy, TaxonomyError> {
        let file: TaxonomyFile = serde_json::from_str(text).map_err(|e| TaxonomyError::Json(alloc::format!("{e}")))?;
        let mut by_name = BTreeMap::new();
        for (ci, cat) in file.categories.iter().enumerate() {
            if cat.data_types.is_empty() {
                return Err(TaxonomyError::EmptyCategory(cat.id.clone()));
            }
            for (ti, t) in cat.data_types.iter().enumerate() {
                if let Some(&(prev, _)) = by_name.get(&t.id) {
                    let first: &Category = &file.categories[prev];
                    return Err(TaxonomyError::DuplicateType {
                        name: t.id.clone(),
                        first: first.id.clone(),
                        second: cat.id.clone(),
                    });
                }
                by_name.insert(t.id.clone(), (ci, ti));
            }
        }
        let mut purpose_labels = BTreeMap::new();
        for p in &file.purposes {
            let purpose = Purpose::from_id(&p.id).ok_or_else(|| TaxonomyError::PurposeMismatch(p.id.clone()))?;
            if purpose_labels.insert(purpose, p.label.clone()).is_some() {
                return Err(TaxonomyError::PurposeMismatch(p.id.clone()));
            }
        }
        if let Some(missing) = Purpose::ALL.iter().find(|p| !purpose_labels.contains_key(p)) {
            return Err(TaxonomyError::PurposeMismatch(String::from(missing.id())));
        }
        Ok(Taxonomy {
            version: file.version,
            categories: file.categories,
            purpose_labels,
            by_name,
        })
    }

    pub fn data_type(&self, name: &str) -> Option<DataType> {
        self.by_name.get(name).map(|&(ci, ti)| DataType {
            category: self.categories[ci].id.clone(),
            name: self.categories[ci].data_types[ti].id.clone(),
        })
    }

    /// All data types in file order.
    pub fn all_types(&self) -> impl Iterator<Item = DataType> + '_ {
        self.categories.iter().flat_map(|c| {
            c.data_types.iter().map(move |t| DataType {
                category: c.id.clone(),
                name: t.id.clone(),
            })
        })
    }

    pub fn type_count(&self) -> usize {
        self.by_name.len()
    }

    pub fn type_label<'a>(&'a self, name: &'a str) -> &'a str {
        match self.by_name.get(name) {
            Some(&(ci, ti)) => &self.categories[ci].data_types[ti].label,
            None => name,
        }
    }

    pub fn category_label<'a>(&'a self, id: &'a str) -> &'a str {
        self.categories.iter().find(|c| c.id == id).map_or(id, |c| c.label.as_str())
    }

    pub fn purpose_label(&self, p: Purpose) -> &str {
        self.purpose_labels.get(&p).map_or(p.id(), |s| s.as_str())
    }
}
