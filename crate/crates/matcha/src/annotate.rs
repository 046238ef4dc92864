//! The annotation wizard driver: walks uncovered calls, asks for a choice
//! (interactively or from an answers file) and writes the edits.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use matcha_core::analysis::lower_units;
use matcha_core::annotation::{
    annotation_sources, build_graph_lenient, CollectionAttributes, SharingAttributes, COLLECTION_GROUPS, SHARING_GROUPS,
};
use matcha_core::detect::{detect_api_calls, ApiKind, DetectedCall};
use matcha_core::java::{apply_edits, parse_unit, CompilationUnit, InsertionError, ANNOTATION_PACKAGE};
use matcha_core::taxonomy::{Purpose, Taxonomy};
use matcha_core::wizard::{run_wizard_step, WizardChoice, WizardError, WizardStep, NONE_OF_THE_ABOVE};
use serde::Deserialize;

use crate::check::Session;
use crate::project::write_atomic;

/// Supplies the developer's answer for one step; `None` skips the call.
pub trait Prompter {
    fn choose(&mut self, unit: &CompilationUnit, step: &WizardStep, taxonomy: &Taxonomy) -> anyhow::Result<Option<WizardChoice>>;

    /// The last choice was refused. Returning an error stops the wizard.
    fn rejected(&mut self, message: &str) -> anyhow::Result<()>;
}

/// One scripted answer: the file, the API method name, and the choice.
/// Answers for the same file and method are used in source order.
#[derive(Debug, Clone, Deserialize)]
pub struct Answer {
    pub file: String,
    pub method: String,
    #[serde(flatten)]
    pub choice: WizardChoice,
}

#[derive(Debug, Clone, Default)]
pub struct AnswerBook {
    answers: Vec<(Answer, bool)>,
}

impl AnswerBook {
    pub fn from_json(text: &str) -> anyhow::Result<AnswerBook> {
        let answers: Vec<Answer> = serde_json::from_str(text).context("answers file")?;
        Ok(AnswerBook {
            answers: answers.into_iter().map(|a| (a, false)).collect(),
        })
    }

    pub fn unused(&self) -> Vec<&Answer> {
        self.answers.iter().filter(|(_, used)| !used).map(|(a, _)| a).collect()
    }
}

impl Prompter for AnswerBook {
    fn choose(&mut self, unit: &CompilationUnit, step: &WizardStep, _: &Taxonomy) -> anyhow::Result<Option<WizardChoice>> {
        let method = step.target.spec.method_name().unwrap_or("");
        let found = self
            .answers
            .iter_mut()
            .find(|(a, used)| !used && a.file == unit.file_path && a.method == method);
        Ok(found.map(|(a, used)| {
            *used = true;
            a.choice.clone()
        }))
    }

    fn rejected(&mut self, message: &str) -> anyhow::Result<()> {
        bail!("scripted answer refused: {message}")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotateSummary {
    /// `file:line` and the API pattern of each annotated call.
    pub applied: Vec<String>,
    pub skipped: usize,
    /// Calls where no annotation could be placed, with the reason.
    pub unplaceable: Vec<String>,
    pub edited_files: BTreeSet<String>,
    /// Annotation package files written into the project.
    pub installed: Vec<String>,
}

fn known_access_ids(units: &[CompilationUnit], taxonomy: &Taxonomy) -> BTreeSet<String> {
    let mut sink = Vec::new();
    let (graph, _) = build_graph_lenient(lower_units(units, taxonomy, &mut sink));
    graph.accesses.into_keys().collect()
}

fn uncovered(unit: &CompilationUnit, session: &Session, kind: ApiKind) -> Vec<DetectedCall> {
    detect_api_calls(std::slice::from_ref(unit), &session.data.api_list)
        .into_iter()
        .filter(|d| d.kind() == kind && !d.coverage.is_covered())
        .collect()
}

/// Walk every uncovered call, accesses first so transmissions can cite the
/// ids just created, and apply the chosen annotations.
pub fn run_annotate(session: &mut Session, prompter: &mut dyn Prompter) -> anyhow::Result<AnnotateSummary> {
    let mut summary = AnnotateSummary::default();
    let mut known = known_access_ids(&session.units, &session.data.taxonomy);
    for kind in [ApiKind::Access, ApiKind::Transmission] {
        for i in 0..session.units.len() {
            let mut skip = 0;
            loop {
                let pending = uncovered(&session.units[i], session, kind);
                let Some(target) = pending.into_iter().nth(skip) else {
                    break;
                };
                let where_ = format!("{}:{}", target.file, target.pos.line);
                let pattern = target.spec.pattern.clone();
                let step = WizardStep::new(target, known.clone());
                let unit = &session.units[i];
                let Some(choice) = prompter.choose(unit, &step, &session.data.taxonomy)? else {
                    skip += 1;
                    summary.skipped += 1;
                    continue;
                };
                let edits = match run_wizard_step(unit, &step, &choice) {
                    Ok(e) => e,
                    Err(WizardError::InvalidChoice(m)) => {
                        prompter.rejected(&m)?;
                        continue;
                    }
                    Err(WizardError::Insertion(InsertionError::NoInsertionPoint(why))) => {
                        summary.unplaceable.push(format!("{where_} {pattern}: {why}"));
                        skip += 1;
                        continue;
                    }
                    Err(e) => return Err(anyhow!("{where_}: {e}")),
                };
                let text = apply_edits(&unit.source, &edits).map_err(|e| anyhow!("{where_}: {e}"))?;
                let path = session.path(&unit.file_path);
                write_atomic(&path, text.as_bytes()).with_context(|| format!("cannot write {}", path.display()))?;
                let file = unit.file_path.clone();
                session.units[i] = parse_unit(&text, &file);
                session.java[i].text = text;
                if let WizardChoice::Access { id, .. } = &choice {
                    known.insert(id.clone());
                }
                summary.applied.push(format!("{where_} {pattern}"));
                summary.edited_files.insert(file);
            }
        }
    }
    if !summary.applied.is_empty() {
        summary.installed = install_annotation_package(session)?;
    }
    Ok(summary)
}

/// Write the annotation package next to the first source root unless the
/// project already has it.
pub fn install_annotation_package(session: &Session) -> anyhow::Result<Vec<String>> {
    if session.units.iter().any(|u| u.package_name.as_deref() == Some(ANNOTATION_PACKAGE)) {
        return Ok(Vec::new());
    }
    let base = session.config.source_roots.first().map(|p| session.root.join(p)).unwrap_or_else(|| session.root.clone());
    let dir = base.join(ANNOTATION_PACKAGE.replace('.', "/"));
    let mut written = Vec::new();
    for (name, text) in annotation_sources(&session.data.taxonomy) {
        let path = dir.join(&name);
        write_atomic(&path, text.as_bytes()).with_context(|| format!("cannot write {}", path.display()))?;
        written.push(crate::project::relative_path(&session.root, &path));
    }
    Ok(written)
}

/// Reads choices from a terminal.
pub struct TerminalPrompter<R, W> {
    pub input: R,
    pub output: W,
}

impl<R: BufRead, W: Write> TerminalPrompter<R, W> {
    fn ask(&mut self, prompt: &str) -> anyhow::Result<String> {
        write!(self.output, "{prompt}")?;
        self.output.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            bail!("input closed");
        }
        Ok(line.trim().to_string())
    }

    /// Numbers separated by commas or spaces, each in `1..=max`.
    fn ask_numbers(&mut self, prompt: &str, max: usize) -> anyhow::Result<Vec<usize>> {
        loop {
            let line = self.ask(prompt)?;
            let picked: Result<Vec<usize>, _> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect();
            match picked {
                Ok(v) if v.iter().all(|n| (1..=max).contains(n)) => return Ok(v),
                _ => writeln!(self.output, "enter numbers between 1 and {max}")?,
            }
        }
    }

    fn ask_bool(&mut self, name: &str, default: bool) -> anyhow::Result<bool> {
        loop {
            let hint = if default { "Y/n" } else { "y/N" };
            match self.ask(&format!("  {name}? [{hint}] "))?.to_ascii_lowercase().as_str() {
                "" => return Ok(default),
                "y" | "yes" => return Ok(true),
                "n" | "no" => return Ok(false),
                _ => {}
            }
        }
    }

    fn ask_purposes(&mut self, what: &str, t: &Taxonomy) -> anyhow::Result<BTreeSet<Purpose>> {
        for (i, p) in Purpose::ALL.iter().enumerate() {
            writeln!(self.output, "    {}) {}", i + 1, t.purpose_label(*p))?;
        }
        let picked = self.ask_numbers(&format!("  {what} purposes (numbers, empty for none): "), Purpose::ALL.len())?;
        Ok(picked.into_iter().map(|n| Purpose::ALL[n - 1]).collect())
    }

    fn show_call(&mut self, unit: &CompilationUnit, step: &WizardStep) -> anyhow::Result<()> {
        let d = &step.target;
        let line = unit.source.lines().nth(d.pos.line as usize - 1).unwrap_or("").trim();
        writeln!(self.output, "\n{}:{}  {}", d.file, d.pos.line, d.spec.pattern)?;
        writeln!(self.output, "    {line}")?;
        Ok(())
    }
}

impl<R: BufRead, W: Write> Prompter for TerminalPrompter<R, W> {
    fn choose(&mut self, unit: &CompilationUnit, step: &WizardStep, t: &Taxonomy) -> anyhow::Result<Option<WizardChoice>> {
        self.show_call(unit, step)?;
        match step.kind() {
            ApiKind::Access => {
                let menu = step.menu();
                for (i, m) in menu.iter().enumerate() {
                    let label = if m == NONE_OF_THE_ABOVE { m.as_str() } else { t.type_label(m) };
                    writeln!(self.output, "  {}) {label}", i + 1)?;
                }
                let picked = self.ask_numbers("Data types read here (numbers, empty to skip): ", menu.len())?;
                if picked.is_empty() {
                    return Ok(None);
                }
                if picked.iter().any(|n| menu[n - 1] == NONE_OF_THE_ABOVE) {
                    return Ok(Some(WizardChoice::Dismiss));
                }
                let suggested = step.suggested_access_id();
                let id = self.ask(&format!("Access id [{suggested}]: "))?;
                Ok(Some(WizardChoice::Access {
                    id: if id.is_empty() { suggested } else { id },
                    data_types: picked.into_iter().map(|n| menu[n - 1].clone()).collect(),
                }))
            }
            ApiKind::Transmission => {
                let ids: Vec<&String> = step.known_access_ids.iter().collect();
                for (i, id) in ids.iter().enumerate() {
                    writeln!(self.output, "  {}) {id}", i + 1)?;
                }
                writeln!(self.output, "  {}) {NONE_OF_THE_ABOVE}", ids.len() + 1)?;
                let picked = self.ask_numbers("Access ids of the data sent here (numbers, empty to skip): ", ids.len() + 1)?;
                if picked.is_empty() {
                    return Ok(None);
                }
                if picked.contains(&(ids.len() + 1)) {
                    return Ok(Some(WizardChoice::Dismiss));
                }
                writeln!(self.output, "Collection (pre-set from the API where known):")?;
                let preset = step.preset_collection.flags();
                let mut f = [false; 5];
                for (i, g) in COLLECTION_GROUPS.iter().enumerate() {
                    f[i] = self.ask_bool(g, preset[i])?;
                }
                let collection = CollectionAttributes::from_flags(f, self.ask_purposes("Collection", t)?);
                writeln!(self.output, "Sharing:")?;
                let preset = step.preset_sharing.flags();
                let mut s = [false; 6];
                for (i, g) in SHARING_GROUPS.iter().enumerate() {
                    s[i] = self.ask_bool(g, preset[i])?;
                }
                let sharing = SharingAttributes::from_flags(s, self.ask_purposes("Sharing", t)?);
                Ok(Some(WizardChoice::Transmission {
                    access_ids: picked.into_iter().map(|n| ids[n - 1].clone()).collect(),
                    collection,
                    sharing,
                }))
            }
        }
    }

    fn rejected(&mut self, message: &str) -> anyhow::Result<()> {
        writeln!(self.output, "not accepted: {message}")?;
        Ok(())
    }
}

/// Read the answers file at `path`.
pub fn load_answers(path: &Path) -> anyhow::Result<AnswerBook> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    AnswerBook::from_json(&text)
}
