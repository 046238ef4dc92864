//! Practice facts from developer annotations and from SDK practices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{PracticeFact, Provenance, Source};
use crate::annotation::{AnnotationGraph, CollectionAttributes, SharingAttributes};
use crate::diag::{Code, Diagnostic, Location};
use crate::sdk::{check_custom_usage, new_optional_practices, CustomUsageDoc, KnowledgeBase, Role, SdkEntry, SdkMatch, SdkPractice};

/// Sent off the device and readable by someone other than the users
/// talking to each other.
pub fn collected(c: &CollectionAttributes) -> bool {
    c.transmitted_off_device && !c.user_to_user_encryption
}

/// Given to a third party with none of the five exemptions applying.
pub fn shared(s: &SharingAttributes) -> bool {
    s.shared_with_third_party && !s.any_exemption()
}

fn annotation_inert_reason(c: &CollectionAttributes, s: &SharingAttributes) -> String {
    let collection = if !c.transmitted_off_device {
        "the data stays on the device"
    } else {
        "the data is end-to-end encrypted between users"
    };
    let sharing = if !s.shared_with_third_party {
        "it is not given to a third party"
    } else {
        let names = [
            (s.only_shared_with_service_providers, "service provider"),
            (s.only_shared_for_legal_purposes, "legal purposes"),
            (s.only_initiated_by_user, "initiated by the user"),
            (s.only_after_getting_user_consent, "user consent"),
            (s.only_transferring_anonymous_data, "anonymous data"),
        ];
        let hit = names.iter().find(|(b, _)| *b).map_or("", |(_, n)| *n);
        return format!("not collected because {collection}; not shared because the \"{hit}\" exemption applies");
    };
    format!("not collected because {collection}; not shared because {sharing}")
}

/// One fact per transmission, cited access and data type. Markers produce
/// nothing; dangling ids are skipped.
pub fn facts_from_annotations(graph: &AnnotationGraph) -> Vec<PracticeFact> {
    let mut out = Vec::new();
    for t in graph.transmissions.iter().filter(|t| !t.marker) {
        let c = &t.collection;
        let s = &t.sharing;
        let is_collected = collected(c);
        let is_shared = shared(s);
        let inert_reason = (!is_collected && !is_shared).then(|| annotation_inert_reason(c, s));
        for id in &t.access_ids {
            let Some(access) = graph.accesses.get(id) else {
                continue;
            };
            for dt in &access.data_types {
                out.push(PracticeFact {
                    data_type: dt.clone(),
                    collected: is_collected,
                    shared: is_shared,
                    ephemeral: c.not_stored_in_backend,
                    optional: c.optional_collection,
                    encrypted_in_transit: c.encrypted_in_transit,
                    collection_purposes: c.collected_for.clone(),
                    sharing_purposes: s.shared_for.clone(),
                    source: Source::App,
                    provenance: Provenance::Annotation {
                        transmission: t.loc.clone(),
                        access_id: id.clone(),
                        access: access.loc.clone(),
                    },
                    inert_reason: inert_reason.clone(),
                });
            }
        }
    }
    out
}

/// Inputs for [`facts_from_sdks`].
#[derive(Debug, Clone, Copy)]
pub struct SdkFactInput<'a> {
    pub kb: &'a KnowledgeBase,
    pub matched: &'a [SdkMatch],
    pub doc: Option<&'a CustomUsageDoc>,
    /// Name of the custom usage file, for locations.
    pub xml_file: &'a str,
}

fn sdk_fact(entry: &SdkEntry, p: &SdkPractice, provenance: Provenance) -> PracticeFact {
    let (collected, shared) = match p.role {
        Role::Collect => (true, false),
        Role::Share => (false, true),
    };
    PracticeFact {
        data_type: p.data_type.clone(),
        collected,
        shared,
        ephemeral: p.ephemeral,
        optional: p.optional,
        encrypted_in_transit: entry.encrypted_in_transit,
        collection_purposes: if collected { p.purposes.clone() } else { BTreeSet::new() },
        sharing_purposes: if shared { p.purposes.clone() } else { BTreeSet::new() },
        source: Source::Sdk(entry.sdk_id.clone()),
        provenance,
        inert_reason: None,
    }
}

/// Facts, diagnostics and the unverified libraries for the matched SDKs.
/// Always-practices apply unconditionally; optional practices only when
/// kept in a verified entry.
pub fn facts_from_sdks(input: SdkFactInput<'_>) -> (Vec<PracticeFact>, Vec<Diagnostic>, BTreeSet<String>) {
    let mut facts = Vec::new();
    let mut diags = Vec::new();
    let mut pending = BTreeSet::new();
    let empty = CustomUsageDoc::default();
    let doc = input.doc.unwrap_or(&empty);
    let at_line = |line: u32| {
        let mut l = Location::file(input.xml_file);
        if line > 0 {
            l.line = line;
            l.col = 1;
        }
        l
    };
    for m in input.matched {
        let Some(entry) = input.kb.entry(&m.sdk_id) else {
            continue;
        };
        for p in &entry.always_practices {
            facts.push(sdk_fact(
                entry,
                p,
                Provenance::KbPractice {
                    sdk_id: entry.sdk_id.clone(),
                    key: p.key.clone(),
                },
            ));
        }
        let usage = doc.entries.get(&entry.sdk_id);
        let verified = usage.is_some_and(|u| u.verified);
        if !entry.practices_known {
            let d = format!(
                "no data practices are recorded for {} ({}); read {} and declare what applies with annotations",
                entry.display_name, m.coordinate, entry.guideline_url
            );
            let d = if verified {
                Diagnostic::info(Code::ConsultGuideline, d)
            } else {
                Diagnostic::warning(Code::ConsultGuideline, d)
            };
            diags.push(d.at(at_line(usage.map_or(0, |u| u.line))));
        }
        match usage {
            Some(u) if u.verified => {
                for d in &u.retained {
                    if let Some(p) = entry.optional_practice(&d.key) {
                        facts.push(sdk_fact(
                            entry,
                            p,
                            Provenance::XmlElement {
                                file: String::from(input.xml_file),
                                sdk_id: entry.sdk_id.clone(),
                                key: d.key.clone(),
                                line: d.line,
                            },
                        ));
                    }
                }
                let new = new_optional_practices(entry, u);
                if !new.is_empty() {
                    diags.push(
                        Diagnostic::warning(
                            Code::StaleVerification,
                            format!(
                                "{} was verified before the knowledge base added: {}; review them and update the entry",
                                entry.sdk_id,
                                new.join(", ")
                            ),
                        )
                        .at(at_line(u.line)),
                    );
                }
            }
            Some(u) => {
                pending.insert(entry.sdk_id.clone());
                diags.push(
                    Diagnostic::error(
                        Code::UnverifiedLibrary,
                        format!(
                            "library {} ({}) is not verified; keep the data tags that apply and set verified=\"true\"",
                            entry.sdk_id, m.coordinate
                        ),
                    )
                    .at(at_line(u.line)),
                );
            }
            None => {
                pending.insert(entry.sdk_id.clone());
                diags.push(
                    Diagnostic::error(
                        Code::UnverifiedLibrary,
                        format!(
                            "library {} ({}) has no <library-custom-usage> entry; run `matcha xml` and review it",
                            entry.sdk_id, m.coordinate
                        ),
                    )
                    .at(at_line(0)),
                );
            }
        }
    }
    for e in check_custom_usage(doc, input.kb) {
        diags.push(e.to_diagnostic(input.xml_file));
    }
    for (id, u) in &doc.entries {
        if input.kb.entry(id).is_some() && !input.matched.iter().any(|m| &m.sdk_id == id) {
            diags.push(
                Diagnostic::warning(
                    Code::OrphanLibraryEntry,
                    format!("library {id} is not among the detected dependencies; its entry is ignored"),
                )
                .at(at_line(u.line)),
            );
        }
    }
    (facts, diags, pending)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::{build_graph, AccessAnn, Lowered, SourceLoc, TransmissionAnn};
    use crate::sdk::{DataElement, LibraryUsage};
    use crate::span::Span;
    use crate::taxonomy::{Purpose, Taxonomy};
    use alloc::vec;

    /// The collection table: collected iff sent off the device and not
    /// end-to-end encrypted between users.
    #[test]
    fn collection_truth_table() {
        for (off, u2u, expect) in [(false, false, false), (false, true, false), (true, false, true), (true, true, false)] {
            let c = CollectionAttributes {
                transmitted_off_device: off,
                user_to_user_encryption: u2u,
                ..Default::default()
            };
            assert_eq!(collected(&c), expect, "off={off} u2u={u2u}");
        }
    }

    #[test]
    fn sharing_exemptions() {
        let mut s = SharingAttributes {
            shared_with_third_party: true,
            ..Default::default()
        };
        assert!(shared(&s));
        s.only_shared_with_service_providers = true;
        assert!(!shared(&s));
    }

    fn graph(c: CollectionAttributes, s: SharingAttributes) -> AnnotationGraph {
        let t = Taxonomy::bundled();
        let loc = |line| SourceLoc {
            file: String::from("A.java"),
            pos: crate::span::Pos { line, col: 1 },
            span: Span::default(),
        };
        build_graph(vec![
            Lowered::Access(AccessAnn {
                id: String::from("q"),
                data_types: [t.data_type("InAppSearchHistory").unwrap(), t.data_type("AppInteractions").unwrap()]
                    .into_iter()
                    .collect(),
                loc: loc(1),
                marker: false,
            }),
            Lowered::Transmission(TransmissionAnn {
                access_ids: vec![String::from("q")],
                collection: c,
                sharing: s,
                loc: loc(2),
                marker: false,
            }),
        ])
        .unwrap()
    }

    #[test]
    fn one_fact_per_data_type() {
        let c = CollectionAttributes {
            transmitted_off_device: true,
            collected_for: [Purpose::AppFunctionality].into_iter().collect(),
            ..Default::default()
        };
        let f = facts_from_annotations(&graph(c, SharingAttributes::default()));
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|f| f.collected && !f.shared && f.source == Source::App && f.inert_reason.is_none()));
    }

    #[test]
    fn on_device_flow_is_inert() {
        let f = facts_from_annotations(&graph(CollectionAttributes::default(), SharingAttributes::default()));
        assert!(f.iter().all(PracticeFact::is_inert));
        assert!(f[0].inert_reason.as_deref().unwrap().contains("stays on the device"));
    }

    fn usage(verified: bool, keys: &[&str]) -> LibraryUsage {
        LibraryUsage {
            verified,
            offered: Some(["name-collect", "email-collect", "phone-collect"].iter().map(|s| String::from(*s)).collect()),
            retained: keys
                .iter()
                .enumerate()
                .map(|(i, k)| DataElement {
                    key: String::from(*k),
                    span: Span::default(),
                    line: 4 + i as u32,
                })
                .collect(),
            span: Span::default(),
            line: 3,
        }
    }

    fn run(doc: &CustomUsageDoc, ids: &[&str]) -> (Vec<PracticeFact>, Vec<Diagnostic>, BTreeSet<String>) {
        let kb = KnowledgeBase::bundled(&Taxonomy::bundled());
        let matched: Vec<SdkMatch> = ids
            .iter()
            .map(|id| SdkMatch {
                sdk_id: String::from(*id),
                coordinate: String::from("g:a:1"),
            })
            .collect();
        facts_from_sdks(SdkFactInput {
            kb: &kb,
            matched: &matched,
            doc: Some(doc),
            xml_file: "matcha-libraries.xml",
        })
    }

    #[test]
    fn verified_library_keeps_only_retained_practices() {
        let mut doc = CustomUsageDoc::default();
        doc.entries.insert(String::from("firebase-authentication"), usage(true, &["email-collect"]));
        let (facts, diags, pending) = run(&doc, &["firebase-authentication"]);
        assert!(pending.is_empty());
        assert!(diags.is_empty(), "{diags:?}");
        assert!(facts.iter().any(|f| f.data_type.name == "EmailAddress"));
        assert!(!facts.iter().any(|f| f.data_type.name == "Name"));
    }

    #[test]
    fn unverified_library_is_pending() {
        let mut doc = CustomUsageDoc::default();
        doc.entries.insert(String::from("firebase-authentication"), usage(false, &["name-collect"]));
        let (facts, diags, pending) = run(&doc, &["firebase-authentication", "admob"]);
        assert!(facts.iter().all(|f| matches!(f.provenance, Provenance::KbPractice { .. })));
        assert!(facts.iter().any(|f| f.source == Source::Sdk(String::from("admob"))));
        assert_eq!(pending.into_iter().collect::<Vec<_>>(), ["admob", "firebase-authentication"]);
        assert_eq!(diags.iter().filter(|d| d.code == Code::UnverifiedLibrary).count(), 2);
    }

    #[test]
    fn unknown_practices_ask_for_guideline() {
        let (_, diags, _) = run(&CustomUsageDoc::default(), &["ironsource"]);
        assert!(diags.iter().any(|d| d.code == Code::ConsultGuideline));
    }
}
