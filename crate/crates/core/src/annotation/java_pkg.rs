//! Java sources for the annotation package that apps compile against.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{COLLECTED_FOR_PREFIX, COLLECTION_GROUPS, SHARED_FOR_PREFIX, SHARING_GROUPS};
use crate::java::ANNOTATION_PACKAGE;
use crate::taxonomy::{Purpose, Taxonomy};

const IMPORTS: &str = "import java.lang.annotation.ElementType;
import java.lang.annotation.Retention;
import java.lang.annotation.RetentionPolicy;
import java.lang.annotation.Target;
";

const TARGET: &str = "@Retention(RetentionPolicy.SOURCE)
@Target({ElementType.FIELD, ElementType.LOCAL_VARIABLE, ElementType.PARAMETER})";

fn annotation(name: &str, doc: &str, body: &str) -> String {
    format!("package {ANNOTATION_PACKAGE};\n\n{IMPORTS}\n/** {doc} */\n{TARGET}\npublic @interface {name} {{{body}}}\n")
}

fn flag_enum(name: &str, doc: &str, groups: &[&str], prefix: &str) -> String {
    let mut s = format!("package {ANNOTATION_PACKAGE};\n\n/** {doc} */\npublic enum {name} {{\n");
    for g in groups {
        let _ = writeln!(s, "    {g}_TRUE,\n    {g}_FALSE,");
    }
    let n = Purpose::ALL.len();
    for (i, p) in Purpose::ALL.iter().enumerate() {
        let sep = if i + 1 == n { "" } else { "," };
        let _ = writeln!(s, "    {prefix}{}{sep}", p.constant());
    }
    s.push_str("}\n");
    s
}

/// `(file name, contents)` for each file of the package, in name order.
pub fn annotation_sources(taxonomy: &Taxonomy) -> Vec<(String, String)> {
    let mut files = Vec::new();
    files.push((
        String::from("CollectionAttribute.java"),
        flag_enum(
            "CollectionAttribute",
            "Collection answers for {@link DataTransmission}. Give exactly one of each _TRUE/_FALSE pair.",
            &COLLECTION_GROUPS,
            COLLECTED_FOR_PREFIX,
        ),
    ));
    files.push((
        String::from("DataAccess.java"),
        annotation(
            "DataAccess",
            "Marks a variable holding user data read on the device.",
            "\n    /** Project-unique id cited by {@link DataTransmission#accessId()}. */\n    String id();\n\n    DataType[] dataType();\n",
        ),
    ));
    files.push((
        String::from("DataTransmission.java"),
        annotation(
            "DataTransmission",
            "Marks a variable whose value leaves the app.",
            "\n    /** Ids of the {@link DataAccess} annotations whose data is sent. */\n    String[] accessId();\n\n    CollectionAttribute[] collectionAttribute();\n\n    SharingAttribute[] sharingAttribute();\n",
        ),
    ));
    let mut dt = format!(
        "package {ANNOTATION_PACKAGE};\n\n/** Google Play data safety data types (taxonomy {}). */\npublic enum DataType {{\n",
        taxonomy.version
    );
    let total = taxonomy.type_count();
    let mut i = 0;
    for cat in &taxonomy.categories {
        let _ = writeln!(dt, "    // {}", cat.label);
        for t in &cat.data_types {
            i += 1;
            let sep = if i == total { "" } else { "," };
            let _ = writeln!(dt, "    {}{sep}", t.id);
        }
    }
    dt.push_str("}\n");
    files.push((String::from("DataType.java"), dt));
    files.push((
        String::from("NotPersonalDataAccess.java"),
        annotation("NotPersonalDataAccess", "Dismisses a data access suggestion: no personal data is read here.", ""),
    ));
    files.push((
        String::from("NotPersonalDataTransmission.java"),
        annotation(
            "NotPersonalDataTransmission",
            "Dismisses a data transmission suggestion: no personal data leaves the app here.",
            "",
        ),
    ));
    files.push((
        String::from("SharingAttribute.java"),
        flag_enum(
            "SharingAttribute",
            "Sharing answers for {@link DataTransmission}. Give exactly one of each _TRUE/_FALSE pair.",
            &SHARING_GROUPS,
            SHARED_FOR_PREFIX,
        ),
    ));
    files
}
