//! Diagnostics with stable codes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

use crate::java::TextEdit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

macro_rules! codes {
    ($($variant:ident = $num:literal, $guide:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum Code {
            $($variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            /// Stable identifier such as `MATCHA001`.
            pub fn id(self) -> &'static str {
                match self {
                    $(Code::$variant => concat!("MATCHA", $num),)*
                }
            }

            pub fn name(self) -> &'static str {
                match self {
                    $(Code::$variant => stringify!($variant),)*
                }
            }

            /// One-paragraph explanation shown the first time a code appears
            /// in a project.
            pub fn guidance(self) -> &'static str {
                match self {
                    $(Code::$variant => $guide,)*
                }
            }
        }
    };
}

codes! {
    UncoveredAccessCall = "001",
        "This call reads data that may be user data. Annotate the variable holding the result with @DataAccess and pick the data types, or dismiss it with @NotPersonalDataAccess. `matcha annotate` walks you through it.";
    UncoveredTransmissionCall = "002",
        "This call sends data off the device or to another app. Annotate the variable being sent with @DataTransmission, citing the @DataAccess ids it carries, or dismiss it with @NotPersonalDataTransmission.";
    KeywordHit = "003",
        "A name, string or comment mentions a kind of user data. Keyword hits are hints only; annotate the code if it really handles that data.";
    UnverifiedLibrary = "004",
        "A third-party SDK was detected. Review its <library-custom-usage> entry in matcha-libraries.xml: delete the <data> tags whose condition does not apply to your app, then set verified=\"true\".";
    ConsultGuideline = "005",
        "The knowledge base has no practice list for this SDK. Read the vendor's data disclosure guide and add the practices to your label by hand.";
    StaleVerification = "006",
        "The knowledge base lists practices for this SDK that did not exist when you verified it. Review the new practices and re-verify; the file is not changed for you.";
    DuplicateAccessId = "007",
        "Access ids must be unique across the project so that transmissions can refer to them.";
    DanglingAccessId = "008",
        "A @DataTransmission cites an access id that no @DataAccess defines.";
    MissingCollectionPurpose = "009",
        "Data sent off the device without end-to-end encryption counts as collected, and collected data needs at least one COLLECTED_FOR purpose.";
    MissingSharingPurpose = "010",
        "Data shared with a third party under no exemption counts as shared, and shared data needs at least one SHARED_FOR purpose.";
    UnreferencedAccess = "011",
        "No @DataTransmission cites this access id, so the label says nothing about where the data goes. If it never leaves the device this is fine.";
    UnusedCollectionPurpose = "012",
        "Collection purposes are listed but the data is not transmitted off the device, so they do not appear on the label.";
    AnnotationSyntax = "013",
        "A privacy annotation could not be read. Check field names and the paired _TRUE/_FALSE attribute constants.";
    OrphanAnnotation = "014",
        "Privacy annotations belong on variable declarations (fields, locals or parameters).";
    ParseGap = "015",
        "Part of this file could not be parsed and was skipped. Calls inside it are not checked.";
    GradleUnsupported = "016",
        "Kotlin build scripts and version catalogs are not read. Declare the SDKs you use in matcha.toml or a build.gradle file.";
    IgnoredDependencyLines = "017",
        "Some lines in a dependencies block were not recognized as plain string dependencies and were skipped.";
    KbFallback = "018",
        "The remote SDK knowledge base could not be used; the bundled snapshot was used instead.";
    MalformedCustomUsage = "019",
        "matcha-libraries.xml could not be read. Fix the XML or delete the file to regenerate it.";
    UnknownCustomUsageEntry = "020",
        "matcha-libraries.xml names an SDK or practice that the knowledge base does not know.";
    OrphanLibraryEntry = "021",
        "matcha-libraries.xml has an entry for an SDK that is no longer among the build dependencies.";
    NewOptionalPractices = "022",
        "The knowledge base has new optional practices for an unverified SDK; they were appended for review.";
    NoInsertionPoint = "023",
        "The call sits where a local variable cannot be declared (for example a field initializer or loop header). Move it into its own statement and annotate the variable.";
    UnusedSharingPurpose = "024",
        "Sharing purposes are listed but the data is not shared with a third party, so they do not appear on the label.";
    LossyDecode = "025",
        "The file is not valid UTF-8; invalid bytes were replaced before parsing.";
    Guidance = "030",
        "Explanations like this are shown once per project.";
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Where a diagnostic points. Source locations carry line and column; XML
/// locations carry an element path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Location {
    pub file: String,
    pub line: u32,
    pub col: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xml_path: Option<String>,
}

impl Location {
    pub fn source(file: &str, pos: crate::span::Pos) -> Self {
        Location {
            file: String::from(file),
            line: pos.line,
            col: pos.col,
            xml_path: None,
        }
    }

    pub fn file(file: &str) -> Self {
        Location {
            file: String::from(file),
            line: 0,
            col: 0,
            xml_path: None,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.file)?;
        if self.line > 0 {
            write!(f, ":{}:{}", self.line, self.col)?;
        }
        if let Some(p) = &self.xml_path {
            write!(f, " ({p})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fix {
    Edits(Vec<TextEdit>),
    /// Run `matcha annotate` for the call at this location.
    Wizard,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub location: Option<Location>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggested_fix: Option<Fix>,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            message: message.into(),
            location: None,
            suggested_fix: None,
        }
    }

    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Self::new(Severity::Error, code, message)
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Self::new(Severity::Warning, code, message)
    }

    pub fn info(code: Code, message: impl Into<String>) -> Self {
        Self::new(Severity::Info, code, message)
    }

    pub fn at(mut self, location: Location) -> Self {
        self.location = Some(location);
        self
    }

    pub fn with_fix(mut self, fix: Fix) -> Self {
        self.suggested_fix = Some(fix);
        self
    }

    fn sort_key(&self) -> (Option<&Location>, Code, Severity, &str) {
        (self.location.as_ref(), self.code, self.severity, &self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(loc) = &self.location {
            write!(f, "{loc}: ")?;
        }
        write!(f, "{} {} {}: {}", self.severity, self.code.id(), self.code.name(), self.message)
    }
}

/// Sort by location, then code, severity and message; drop exact repeats.
pub fn sort_diagnostics(diags: &mut Vec<Diagnostic>) {
    diags.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    diags.dedup();
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}
