//! Finding, reading and writing project files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use matcha_core::diag::{Code, Diagnostic, Location};
use matcha_core::java::{parse_unit, CompilationUnit};
use walkdir::{DirEntry, WalkDir};

use crate::config::Config;

/// Directory for the lock and state files.
pub const STATE_DIR: &str = ".matcha";

const SKIPPED_DIRS: [&str; 7] = [".git", ".gradle", ".idea", STATE_DIR, "build", "node_modules", "target"];

/// A file's project-relative path (with `/` separators) and its text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextFile {
    pub path: String,
    pub text: String,
}

#[derive(Debug, Default)]
pub struct ProjectFiles {
    pub java: Vec<TextFile>,
    pub gradle: Vec<TextFile>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, thiserror::Error)]
pub enum ProjectError {
    #[error("{0} is not a directory")]
    NotADirectory(PathBuf),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("no .java or build.gradle files under {0}")]
    Empty(PathBuf),
    #[error("another matcha process holds {0}; delete it if that process is gone")]
    Locked(PathBuf),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ProjectError + '_ {
    move |source| ProjectError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn relative_path(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    let parts: Vec<String> = rel.components().map(|c| c.as_os_str().to_string_lossy().into_owned()).collect();
    parts.join("/")
}

fn keep(entry: &DirEntry) -> bool {
    entry.depth() == 0 || !entry.file_type().is_dir() || !SKIPPED_DIRS.contains(&entry.file_name().to_str().unwrap_or(""))
}

fn walk(dir: &Path) -> impl Iterator<Item = PathBuf> {
    WalkDir::new(dir)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(keep)
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file())
        .map(DirEntry::into_path)
}

/// Read a file as UTF-8, replacing invalid bytes and reporting it.
pub fn read_lossy(root: &Path, path: &Path, diags: &mut Vec<Diagnostic>) -> Result<TextFile, ProjectError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let rel = relative_path(root, path);
    let text = match String::from_utf8(bytes) {
        Ok(s) => s,
        Err(e) => {
            diags.push(Diagnostic::warning(Code::LossyDecode, "file is not valid UTF-8; invalid bytes were replaced").at(Location::file(&rel)));
            String::from_utf8_lossy(e.as_bytes()).into_owned()
        }
    };
    Ok(TextFile { path: rel, text })
}

fn is_unsupported_build_file(name: &str) -> bool {
    name.ends_with(".gradle.kts") || name.ends_with(".versions.toml")
}

/// Collect the Java sources and Groovy build files selected by `config`.
pub fn collect_files(root: &Path, config: &Config) -> Result<ProjectFiles, ProjectError> {
    if !root.is_dir() {
        return Err(ProjectError::NotADirectory(root.to_path_buf()));
    }
    let mut out = ProjectFiles::default();
    let roots: Vec<PathBuf> = if config.source_roots.is_empty() {
        vec![root.to_path_buf()]
    } else {
        config.source_roots.iter().map(|r| root.join(r)).collect()
    };
    let mut java: Vec<PathBuf> = roots
        .iter()
        .flat_map(|r| walk(r))
        .filter(|p| p.extension().is_some_and(|e| e == "java"))
        .collect();
    java.sort();
    java.dedup();
    for p in java {
        out.java.push(read_lossy(root, &p, &mut out.diagnostics)?);
    }

    if config.gradle_files.is_empty() {
        for p in walk(root) {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if name == "build.gradle" {
                out.gradle.push(read_lossy(root, &p, &mut out.diagnostics)?);
            } else if is_unsupported_build_file(name) {
                out.diagnostics.push(
                    Diagnostic::warning(
                        Code::GradleUnsupported,
                        "Kotlin build scripts and version catalogs are not read; list SDK coordinates under `sdks` in matcha.toml",
                    )
                    .at(Location::file(&relative_path(root, &p))),
                );
            }
        }
    } else {
        for g in &config.gradle_files {
            let p = root.join(g);
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if is_unsupported_build_file(name) {
                out.diagnostics.push(
                    Diagnostic::warning(Code::GradleUnsupported, "only Groovy build.gradle files are read")
                        .at(Location::file(&relative_path(root, &p))),
                );
                continue;
            }
            out.gradle.push(read_lossy(root, &p, &mut out.diagnostics)?);
        }
    }
    if out.java.is_empty() && out.gradle.is_empty() && config.sdks.is_empty() {
        return Err(ProjectError::Empty(root.to_path_buf()));
    }
    Ok(out)
}

/// Parse every file, spreading the work over the available cores. Output
/// order follows input order.
pub fn parse_all(files: &[TextFile]) -> Vec<CompilationUnit> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    if threads <= 1 {
        return files.iter().map(|f| parse_unit(&f.text, &f.path)).collect();
    }
    let chunk = files.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|f| parse_unit(&f.text, &f.path)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("parser thread panicked")).collect()
    })
}

/// Replace `path` with `contents` through a temporary file in the same
/// directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Exclusive ownership of a project for commands that write to it. The lock
/// file is removed on drop.
#[derive(Debug)]
pub struct ProjectLock {
    path: PathBuf,
}

impl ProjectLock {
    pub fn acquire(root: &Path) -> Result<ProjectLock, ProjectError> {
        let dir = root.join(STATE_DIR);
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let path = dir.join("lock");
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(ProjectLock { path })
            }
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(ProjectError::Locked(path)),
            Err(e) => Err(ProjectError::Io { path, source: e }),
        }
    }
}

impl Drop for ProjectLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collects_sorted_and_skips_build_dirs() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        for (p, t) in [
            ("app/src/B.java", "class B {}"),
            ("app/src/A.java", "class A {}"),
            ("app/build/Gen.java", "class Gen {}"),
            ("app/build.gradle", "dependencies {}"),
            ("lib/build.gradle.kts", ""),
        ] {
            let path = root.join(p);
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(path, t).unwrap();
        }
        fs::write(root.join("app/src/C.java"), b"class C { String s = \"\xff\"; }").unwrap();
        let files = collect_files(root, &Config::default()).unwrap();
        let names: Vec<&str> = files.java.iter().map(|f| f.path.as_str()).collect();
        assert_eq!(names, ["app/src/A.java", "app/src/B.java", "app/src/C.java"]);
        assert_eq!(files.gradle.len(), 1);
        let codes: Vec<Code> = files.diagnostics.iter().map(|d| d.code).collect();
        assert!(codes.contains(&Code::LossyDecode) && codes.contains(&Code::GradleUnsupported));
        assert!(files.java[2].text.contains('\u{fffd}'));
    }

    #[test]
    fn lock_is_exclusive() {
        let dir = tempfile::tempdir().unwrap();
        let a = ProjectLock::acquire(dir.path()).unwrap();
        assert!(matches!(ProjectLock::acquire(dir.path()), Err(ProjectError::Locked(_))));
        drop(a);
        assert!(ProjectLock::acquire(dir.path()).is_ok());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
