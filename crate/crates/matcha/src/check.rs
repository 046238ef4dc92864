//! Loading a project and running the full check over it.

use std::path::{Path, PathBuf};

use matcha_core::analysis::{analyze, Analysis, AnalysisInput};
use matcha_core::diag::{has_errors, sort_diagnostics, Diagnostic};
use matcha_core::java::CompilationUnit;
use matcha_core::sdk::CustomUsageDoc;

use crate::config::Config;
use crate::data::{load_data, DataSet, Fetch, NetworkOptions};
use crate::project::{collect_files, parse_all, relative_path, ProjectFiles, TextFile};
use crate::xml::read_custom_usage_xml;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Clean = 0,
    Errors = 1,
    Failure = 2,
}

impl Exit {
    pub fn of(diags: &[Diagnostic]) -> Exit {
        if has_errors(diags) {
            Exit::Errors
        } else {
            Exit::Clean
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OpenOptions {
    pub config: Option<PathBuf>,
    pub net: NetworkOptions,
}

/// A loaded project: configuration, data files, parsed sources and the
/// custom usage document.
#[derive(Debug)]
pub struct Session {
    pub root: PathBuf,
    pub config: Config,
    pub data: DataSet,
    pub java: Vec<TextFile>,
    pub gradle: Vec<TextFile>,
    pub units: Vec<CompilationUnit>,
    /// Project-relative path of the custom usage file.
    pub xml_file: String,
    pub xml_text: Option<String>,
    pub custom_usage: Option<CustomUsageDoc>,
    /// Problems found while loading.
    pub load_diagnostics: Vec<Diagnostic>,
}

#[derive(Debug)]
pub struct CheckReport {
    pub analysis: Analysis,
    /// Loading and analysis diagnostics together, sorted.
    pub diagnostics: Vec<Diagnostic>,
}

impl CheckReport {
    pub fn exit(&self) -> Exit {
        Exit::of(&self.diagnostics)
    }
}

impl Session {
    pub fn open(root: &Path, opts: &OpenOptions, fetch: Fetch<'_>) -> anyhow::Result<Session> {
        let config = Config::load(root, opts.config.as_deref())?;
        let mut diags = Vec::new();
        let data = load_data(root, &config, &opts.net, fetch, &mut diags)?;
        let ProjectFiles { java, gradle, diagnostics } = collect_files(root, &config)?;
        diags.extend(diagnostics);
        let units = parse_all(&java);
        let xml_path = root.join(config.xml_path());
        let xml_file = relative_path(root, &xml_path);
        let xml_text = match std::fs::read_to_string(&xml_path) {
            Ok(t) => Some(t),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => anyhow::bail!("cannot read {}: {e}", xml_path.display()),
        };
        let custom_usage = match &xml_text {
            None => None,
            Some(t) => match read_custom_usage_xml(t) {
                Ok(doc) => Some(doc),
                Err(e) => {
                    diags.push(e.to_diagnostic(&xml_file));
                    None
                }
            },
        };
        Ok(Session {
            root: root.to_path_buf(),
            config,
            data,
            java,
            gradle,
            units,
            xml_file,
            xml_text,
            custom_usage,
            load_diagnostics: diags,
        })
    }

    pub fn check(&self) -> CheckReport {
        let gradle: Vec<(String, String)> = self.gradle.iter().map(|f| (f.path.clone(), f.text.clone())).collect();
        let analysis = analyze(AnalysisInput {
            taxonomy: &self.data.taxonomy,
            api_list: &self.data.api_list,
            keywords: &self.data.keywords,
            kb: &self.data.kb,
            units: &self.units,
            gradle_files: &gradle,
            extra_coordinates: &self.config.sdks,
            custom_usage: self.custom_usage.as_ref(),
            xml_file: &self.xml_file,
        });
        let mut diagnostics = self.load_diagnostics.clone();
        diagnostics.extend(analysis.diagnostics.iter().cloned());
        sort_diagnostics(&mut diagnostics);
        CheckReport { analysis, diagnostics }
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }
}
