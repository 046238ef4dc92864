//! Brute-force check of the collection and sharing rules over every
//! attribute combination, written from the attribute tables rather than
//! from the label engine.

use std::collections::BTreeSet;

use matcha_core::analysis::{analyze, AnalysisInput};
use matcha_core::annotation::{CollectionAttributes, SharingAttributes};
use matcha_core::detect::{ApiList, KeywordList};
use matcha_core::java::parse_unit;
use matcha_core::label;
use matcha_core::sdk::KnowledgeBase;
use matcha_core::taxonomy::{Purpose, Taxonomy};

const EXEMPTIONS: [&str; 5] = [
    "ONLY_SHARED_WITH_SERVICE_PROVIDERS",
    "ONLY_SHARED_FOR_LEGAL_PURPOSES",
    "ONLY_INITIATED_BY_USER",
    "ONLY_AFTER_GETTING_USER_CONSENT",
    "ONLY_TRANSFERRING_ANONYMOUS_DATA",
];

fn flag(name: &str, on: bool) -> String {
    format!("{name}_{}", if on { "TRUE" } else { "FALSE" })
}

/// Expected (collected, shared) for one combination.
fn oracle(off_device: bool, user_to_user: bool, third_party: bool, exemptions: [bool; 5]) -> (bool, bool) {
    // Off-device data is collected unless only the communicating users can
    // read it.
    let collected = off_device && !user_to_user;
    // Third-party transfers are shared unless one exemption applies.
    let shared = third_party && exemptions.iter().all(|e| !e);
    (collected, shared)
}

fn source(off_device: bool, user_to_user: bool, third_party: bool, exemptions: [bool; 5]) -> String {
    let mut collection = vec![
        format!("CollectionAttribute.{}", flag("TRANSMITTED_OFF_DEVICE", off_device)),
        format!("CollectionAttribute.{}", flag("NOT_STORED_IN_BACKEND", false)),
        format!("CollectionAttribute.{}", flag("ENCRYPTED_IN_TRANSIT", true)),
        format!("CollectionAttribute.{}", flag("OPTIONAL_COLLECTION", false)),
        format!("CollectionAttribute.{}", flag("USER_TO_USER_ENCRYPTION", user_to_user)),
    ];
    if off_device {
        collection.push(String::from("CollectionAttribute.COLLECTED_FOR_APP_FUNCTIONALITY"));
    }
    let mut sharing = vec![format!("SharingAttribute.{}", flag("SHARED_WITH_THIRD_PARTY", third_party))];
    for (name, on) in EXEMPTIONS.iter().zip(exemptions) {
        sharing.push(format!("SharingAttribute.{}", flag(name, on)));
    }
    if third_party {
        sharing.push(String::from("SharingAttribute.SHARED_FOR_ANALYTICS"));
    }
    format!(
        "import matcha.annotation.*;\nclass Flow {{\n  void f(String raw) {{\n    @DataAccess(id = \"contact\", dataType = {{DataType.Contacts}})\n    String c = raw;\n    @DataTransmission(accessId = {{\"contact\"}}, collectionAttribute = {{{}}}, sharingAttribute = {{{}}})\n    String out = c;\n  }}\n}}\n",
        collection.join(", "),
        sharing.join(", ")
    )
}

/// Mismatches between the label and the oracle over 4 collection and 64
/// sharing combinations.
pub fn exemption_mismatches() -> Vec<String> {
    let t = Taxonomy::bundled();
    let api = ApiList::bundled(&t);
    let kw = KeywordList::new(String::from("none"), Vec::new());
    let kb = KnowledgeBase::bundled(&t);
    let mut out = Vec::new();
    for c in 0..4u8 {
        let (off_device, user_to_user) = (c & 1 != 0, c & 2 != 0);
        for s in 0..64u8 {
            let third_party = s & 1 != 0;
            let exemptions = [s & 2 != 0, s & 4 != 0, s & 8 != 0, s & 16 != 0, s & 32 != 0];
            let unit = parse_unit(&source(off_device, user_to_user, third_party, exemptions), "Flow.java");
            let units = [unit];
            let a = analyze(AnalysisInput {
                taxonomy: &t,
                api_list: &api,
                keywords: &kw,
                kb: &kb,
                units: &units,
                gradle_files: &[],
                extra_coordinates: &[],
                custom_usage: None,
                xml_file: "matcha-libraries.xml",
            });
            let (collected, shared) = oracle(off_device, user_to_user, third_party, exemptions);
            let c_attrs = CollectionAttributes {
                transmitted_off_device: off_device,
                encrypted_in_transit: true,
                user_to_user_encryption: user_to_user,
                ..Default::default()
            };
            let s_attrs = SharingAttributes {
                shared_with_third_party: third_party,
                only_shared_with_service_providers: exemptions[0],
                only_shared_for_legal_purposes: exemptions[1],
                only_initiated_by_user: exemptions[2],
                only_after_getting_user_consent: exemptions[3],
                only_transferring_anonymous_data: exemptions[4],
                ..Default::default()
            };
            if (label::collected(&c_attrs), label::shared(&s_attrs)) != (collected, shared) {
                out.push(format!("rule functions disagree for c={c} s={s}"));
            }
            let row = a.label.rows.iter().find(|(d, _)| d.name == "Contacts").map(|(_, r)| r);
            let got = row.map(|r| (r.collected, r.shared)).unwrap_or((false, false));
            let mut ok = got == (collected, shared) && row.is_some() == (collected || shared);
            if let Some(r) = row {
                let cp: BTreeSet<Purpose> = collected.then_some(Purpose::AppFunctionality).into_iter().collect();
                let sp: BTreeSet<Purpose> = shared.then_some(Purpose::Analytics).into_iter().collect();
                ok &= r.collection_purposes == cp && r.sharing_purposes == sp;
                ok &= !r.ephemeral && r.required == collected;
            }
            if !ok {
                out.push(format!(
                    "off_device={off_device} user_to_user={user_to_user} third_party={third_party} exemptions={exemptions:?}: want {:?}, got {:?}",
                    (collected, shared),
                    row
                ));
            }
        }
    }
    out
}
