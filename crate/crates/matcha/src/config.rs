//! `matcha.toml`, read from the project root when present.

use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const CONFIG_FILE: &str = "matcha.toml";
pub const DEFAULT_XML_FILE: &str = "matcha-libraries.xml";

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Directories searched for `.java` files, relative to the project root.
    /// Empty means the whole project.
    pub source_roots: Vec<PathBuf>,
    /// Build files to read. Empty means every `build.gradle` in the project.
    pub gradle_files: Vec<PathBuf>,
    /// Maven coordinates declared by hand, for builds that cannot be read.
    pub sdks: Vec<String>,
    pub api_list: Option<PathBuf>,
    pub keywords: Option<PathBuf>,
    pub kb: Option<PathBuf>,
    /// HTTPS URL of a knowledge base document that replaces the bundled one.
    pub kb_url: Option<String>,
    pub libraries_xml: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
}

impl Config {
    pub fn parse(text: &str, path: &Path) -> Result<Config, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Load `explicit`, or `matcha.toml` under `root` if it exists, or the
    /// defaults.
    pub fn load(root: &Path, explicit: Option<&Path>) -> Result<Config, ConfigError> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => {
                let p = root.join(CONFIG_FILE);
                if !p.is_file() {
                    return Ok(Config::default());
                }
                p
            }
        };
        let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io { path: path.clone(), source })?;
        Config::parse(&text, &path)
    }

    pub fn xml_path(&self) -> PathBuf {
        self.libraries_xml.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_XML_FILE))
    }
}
