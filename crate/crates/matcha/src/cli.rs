//! Command-line interface.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use matcha_core::diag::{Diagnostic, Severity};
use serde::Serialize;

use crate::annotate::{load_answers, run_annotate, AnnotateSummary, Prompter, TerminalPrompter};
use crate::check::{Exit, OpenOptions, Session};
use crate::data::{fetch_https, NetworkOptions};
use crate::export::{write_exports, ConsoleMapping};
use crate::guidance::GuidanceState;
use crate::mine::{mine_directory, ranked_tsv};
use crate::preview::{render_preview, Format};
use crate::project::{write_atomic, ProjectLock};
use crate::xml::sync_custom_usage_xml;

#[derive(Debug, Parser)]
#[command(name = "matcha", version, about = "Compile a Google Play data safety label from an annotated Android project")]
pub struct Cli {
    /// Project root.
    #[arg(long, global = true, default_value = ".")]
    pub project: PathBuf,
    /// Configuration file (default: matcha.toml in the project root).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file, or directory for `export`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Never use the network.
    #[arg(long, global = true)]
    pub offline: bool,
    /// HTTPS URL of an SDK knowledge base to use instead of the bundled one.
    #[arg(long, global = true)]
    pub kb_url: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List detected API calls, keyword hits and SDKs.
    Scan,
    /// Run all checks; exit 1 if any error remains.
    Check {
        /// Do not print or record first-time explanations.
        #[arg(long)]
        no_guidance: bool,
    },
    /// Annotate uncovered calls, interactively or from an answers file.
    Annotate {
        /// JSON list of {file, method, choice, ...} answers.
        #[arg(long)]
        answers: Option<PathBuf>,
    },
    /// Create or update matcha-libraries.xml for the detected SDKs.
    Xml,
    /// Show the label that would be exported.
    Preview,
    /// Write the canonical CSV, the console CSV and the JSON label.
    Export,
    /// Rank words from files that call data access APIs.
    MineKeywords {
        /// Directory of Java sources.
        dir: PathBuf,
        #[arg(long, default_value_t = 50)]
        top_k: usize,
    },
}

fn open(cli: &Cli) -> anyhow::Result<Session> {
    let opts = OpenOptions {
        config: cli.config.clone(),
        net: NetworkOptions::from_env(cli.offline, cli.kb_url.clone()),
    };
    Session::open(&cli.project, &opts, &fetch_https)
}

fn print_diagnostics(out: &mut dyn Write, diags: &[Diagnostic]) -> std::io::Result<()> {
    for d in diags {
        writeln!(out, "{d}")?;
    }
    let count = |s| diags.iter().filter(|d| d.severity == s).count();
    writeln!(
        out,
        "{} error(s), {} warning(s), {} info",
        count(Severity::Error),
        count(Severity::Warning),
        count(Severity::Info)
    )
}

fn write_output(cli: &Cli, out: &mut dyn Write, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckJson<'a> {
    exit: i32,
    diagnostics: &'a [Diagnostic],
}

fn check(cli: &Cli, no_guidance: bool, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let session = open(cli)?;
    let report = session.check();
    let exit = report.exit();
    match cli.format.unwrap_or(Format::Terminal) {
        Format::Json => write_output(
            cli,
            out,
            &to_json(&CheckJson {
                exit: exit as i32,
                diagnostics: &report.diagnostics,
            }),
        )?,
        Format::Html => bail!("check supports --format terminal or json"),
        Format::Terminal => {
            let mut text = Vec::new();
            print_diagnostics(&mut text, &report.diagnostics)?;
            if !no_guidance {
                let mut state = GuidanceState::load(&session.root);
                let notes = state.take_new(&report.diagnostics);
                for (code, g) in &notes {
                    writeln!(text, "note[{}]: {g}", code.id())?;
                }
                if !notes.is_empty() {
                    // best effort: an unwritable state file only means repeats
                    let _ = state.save(&session.root);
                }
            }
            write_output(cli, out, &String::from_utf8(text)?)?;
        }
    }
    Ok(exit)
}

#[derive(Serialize)]
struct ScanJson<'a> {
    detected: &'a [matcha_core::detect::DetectedCall],
    keyword_hits: &'a [matcha_core::detect::KeywordHit],
    coordinates: &'a [String],
    matched_sdks: &'a [matcha_core::sdk::SdkMatch],
}

fn scan(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let session = open(cli)?;
    let a = session.check().analysis;
    let text = match cli.format.unwrap_or(Format::Terminal) {
        Format::Json => to_json(&ScanJson {
            detected: &a.detected,
            keyword_hits: &a.keyword_hits,
            coordinates: &a.coordinates,
            matched_sdks: &a.matched_sdks,
        }),
        Format::Html => bail!("scan supports --format terminal or json"),
        Format::Terminal => {
            let mut s = String::new();
            for d in &a.detected {
                let cov = if d.coverage.is_covered() { "covered" } else { "uncovered" };
                s.push_str(&format!(
                    "{}:{}:{} {:?} {} ({:?}, {cov})\n",
                    d.file, d.pos.line, d.pos.col, d.kind(), d.spec.pattern, d.confidence
                ));
            }
            for h in &a.keyword_hits {
                s.push_str(&format!("{}:{}:{} keyword \"{}\" in {}\n", h.file, h.pos.line, h.pos.col, h.spec.phrase, h.surface_form));
            }
            for m in &a.matched_sdks {
                s.push_str(&format!("sdk {} via {}\n", m.sdk_id, m.coordinate));
            }
            s
        }
    };
    write_output(cli, out, &text)?;
    Ok(Exit::Clean)
}

fn annotate(cli: &Cli, answers: Option<&Path>, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let _lock = ProjectLock::acquire(&cli.project)?;
    let mut session = open(cli)?;
    let summary: AnnotateSummary = match answers {
        Some(p) => {
            let mut book = load_answers(p)?;
            let s = run_annotate(&mut session, &mut book)?;
            for a in book.unused() {
                writeln!(out, "unused answer: {} {}", a.file, a.method)?;
            }
            s
        }
        None => {
            if !std::io::stdin().is_terminal() {
                bail!("the wizard needs a terminal; pass --answers FILE to script it");
            }
            let mut p = TerminalPrompter {
                input: std::io::stdin().lock(),
                output: std::io::stderr(),
            };
            run_annotate(&mut session, &mut p as &mut dyn Prompter)?
        }
    };
    for a in &summary.applied {
        writeln!(out, "annotated {a}")?;
    }
    for u in &summary.unplaceable {
        writeln!(out, "cannot annotate {u}")?;
    }
    for f in &summary.installed {
        writeln!(out, "wrote {f}")?;
    }
    writeln!(out, "{} annotated, {} skipped", summary.applied.len(), summary.skipped)?;
    Ok(Exit::Clean)
}

fn xml(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let _lock = ProjectLock::acquire(&cli.project)?;
    let session = open(cli)?;
    let a = session.check().analysis;
    let entries: Vec<_> = a.matched_sdks.iter().filter_map(|m| session.data.kb.entry(&m.sdk_id)).collect();
    let outcome = match sync_custom_usage_xml(&entries, session.xml_text.as_deref(), &session.xml_file) {
        Ok(o) => o,
        Err(e) => {
            writeln!(out, "{}", e.to_diagnostic(&session.xml_file))?;
            return Ok(Exit::Failure);
        }
    };
    if session.xml_text.as_deref() != Some(outcome.text.as_str()) {
        let path = session.path(&session.xml_file);
        write_atomic(&path, outcome.text.as_bytes()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    for d in &outcome.diagnostics {
        writeln!(out, "{d}")?;
    }
    for id in &outcome.added {
        writeln!(out, "added {id}")?;
    }
    for id in &outcome.extended {
        writeln!(out, "extended {id}")?;
    }
    if !outcome.changed() {
        writeln!(out, "{} is up to date", session.xml_file)?;
    }
    Ok(Exit::Clean)
}

fn preview(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let session = open(cli)?;
    let a = session.check().analysis;
    let text = render_preview(&a.label, &a.facts, &session.data.taxonomy, cli.format.unwrap_or(Format::Terminal));
    write_output(cli, out, &text)?;
    Ok(Exit::Clean)
}

fn export(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let _lock = ProjectLock::acquire(&cli.project)?;
    let session = open(cli)?;
    let report = session.check();
    let dir = cli.out.clone().unwrap_or_else(|| session.root.clone());
    let mapping = ConsoleMapping::bundled(&session.data.taxonomy);
    match write_exports(&dir, &report.analysis.label, &report.diagnostics, &mapping, &session.data.taxonomy) {
        Ok(paths) => {
            for p in paths {
                writeln!(out, "wrote {}", p.display())?;
            }
            Ok(Exit::Clean)
        }
        Err(e) => {
            writeln!(out, "export refused: {e}")?;
            Ok(Exit::Errors)
        }
    }
}

fn mine(cli: &Cli, dir: &Path, top_k: usize, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let t = matcha_core::taxonomy::Taxonomy::bundled();
    let api = matcha_core::detect::ApiList::bundled(&t);
    let ranked = mine_directory(dir, &api, top_k)?;
    write_output(cli, out, &ranked_tsv(&ranked))?;
    Ok(Exit::Clean)
}

/// Run a parsed command line. Failures are reported on `err` with exit 2.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let result = match &cli.command {
        Command::Scan => scan(cli, out),
        Command::Check { no_guidance } => check(cli, *no_guidance, out),
        Command::Annotate { answers } => annotate(cli, answers.as_deref(), out),
        Command::Xml => xml(cli, out),
        Command::Preview => preview(cli, out),
        Command::Export => export(cli, out),
        Command::MineKeywords { dir, top_k } => mine(cli, dir, *top_k, out),
    };
    match result {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            Exit::Failure
        }
    }
}
