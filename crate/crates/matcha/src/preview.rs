//! Label preview as terminal text, a static HTML page or JSON.

use std::collections::BTreeSet;
use std::fmt::Write;

use matcha_core::label::{LabelRow, PracticeFact, SafetyLabel, Source};
use matcha_core::taxonomy::{DataType, Purpose, Taxonomy};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Terminal,
    Html,
    Json,
}

const EMPTY: &str = "No data collected or shared";

fn purposes(t: &Taxonomy, ps: &BTreeSet<Purpose>) -> String {
    ps.iter().map(|p| t.purpose_label(*p)).collect::<Vec<_>>().join(", ")
}

fn status(r: &LabelRow) -> &'static str {
    match (r.collected, r.shared) {
        (true, true) => "collected and shared",
        (true, false) => "collected",
        _ => "shared",
    }
}

fn flags(r: &LabelRow) -> Option<String> {
    r.collected.then(|| {
        format!(
            "{}, {}",
            if r.required { "required" } else { "optional" },
            if r.ephemeral { "processed ephemerally" } else { "not ephemeral" }
        )
    })
}

/// Rows grouped by category, in taxonomy order.
fn grouped<'a>(label: &'a SafetyLabel, t: &'a Taxonomy) -> Vec<(&'a str, Vec<(&'a DataType, &'a LabelRow)>)> {
    t.categories
        .iter()
        .filter_map(|c| {
            let rows: Vec<_> = c
                .data_types
                .iter()
                .filter_map(|ty| label.rows.iter().find(|(d, _)| d.category == c.id && d.name == ty.id))
                .collect();
            (!rows.is_empty()).then_some((c.label.as_str(), rows))
        })
        .collect()
}

fn unencrypted_sdks(facts: &[PracticeFact]) -> BTreeSet<&str> {
    facts
        .iter()
        .filter(|f| !f.is_inert() && !f.encrypted_in_transit)
        .filter_map(|f| match &f.source {
            Source::Sdk(id) => Some(id.as_str()),
            Source::App => None,
        })
        .collect()
}

fn pending_banner(label: &SafetyLabel) -> Option<String> {
    (!label.pending.is_empty()).then(|| {
        format!(
            "Export disabled: libraries not verified: {}",
            label.pending.iter().cloned().collect::<Vec<_>>().join(", ")
        )
    })
}

pub fn render_terminal(label: &SafetyLabel, facts: &[PracticeFact], t: &Taxonomy) -> String {
    let mut s = String::from("Data safety label preview\n\n");
    if let Some(b) = pending_banner(label) {
        let _ = writeln!(s, "! {b}\n");
    }
    if label.is_empty() {
        let _ = writeln!(s, "{EMPTY}");
    }
    for (cat, rows) in grouped(label, t) {
        let _ = writeln!(s, "{cat}");
        for (dt, r) in rows {
            let _ = writeln!(s, "  {:<32} {:<22} {}", t.type_label(&dt.name), status(r), r.note());
            if !r.collection_purposes.is_empty() {
                let _ = writeln!(s, "      collected for: {}", purposes(t, &r.collection_purposes));
            }
            if !r.sharing_purposes.is_empty() {
                let _ = writeln!(s, "      shared for: {}", purposes(t, &r.sharing_purposes));
            }
            if let Some(f) = flags(r) {
                let _ = writeln!(s, "      {f}");
            }
            for p in &r.provenance {
                let _ = writeln!(s, "      from {p}");
            }
        }
    }
    if label.collects_any() {
        let _ = writeln!(s, "\nData collected by the app is encrypted in transit: {}", if label.all_encrypted_in_transit { "yes" } else { "no" });
    }
    let sdks = unencrypted_sdks(facts);
    if !sdks.is_empty() {
        let _ = writeln!(s, "Libraries that do not attest encryption in transit: {}", sdks.into_iter().collect::<Vec<_>>().join(", "));
    }
    let inert: Vec<&PracticeFact> = facts.iter().filter(|f| f.is_inert()).collect();
    if !inert.is_empty() {
        let _ = writeln!(s, "\nAnnotated but not on the label");
        for f in inert {
            let _ = writeln!(
                s,
                "  {} at {}: {}",
                t.type_label(&f.data_type.name),
                f.provenance,
                f.inert_reason.as_deref().unwrap_or("neither collected nor shared")
            );
        }
    }
    s
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const STYLE: &str = "body{font-family:sans-serif;max-width:52em;margin:2em auto;color:#202124}\
h2{border-bottom:1px solid #dadce0;padding-bottom:.2em}\
.row{margin:.6em 0}.type{font-weight:bold}.note{color:#5f6368}\
.banner{background:#fce8e6;border:1px solid #d93025;padding:.6em}\
details{margin-left:1.5em;color:#5f6368}";

pub fn render_html(label: &SafetyLabel, facts: &[PracticeFact], t: &Taxonomy) -> String {
    let mut s = format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>Data safety label preview</title>\n<style>{STYLE}</style>\n</head>\n<body>\n<h1>Data safety label preview</h1>\n"
    );
    if let Some(b) = pending_banner(label) {
        let _ = writeln!(s, "<p class=\"banner\">{}</p>", esc(&b));
    }
    if label.is_empty() {
        let _ = writeln!(s, "<p>{EMPTY}</p>");
    }
    for (cat, rows) in grouped(label, t) {
        let _ = writeln!(s, "<h2>{}</h2>", esc(cat));
        for (dt, r) in rows {
            let _ = writeln!(
                s,
                "<div class=\"row\"><span class=\"type\">{}</span>: {} <span class=\"note\">({})</span>",
                esc(t.type_label(&dt.name)),
                status(r),
                r.note()
            );
            let _ = writeln!(s, "<ul>");
            if !r.collection_purposes.is_empty() {
                let _ = writeln!(s, "<li>Collected for: {}</li>", esc(&purposes(t, &r.collection_purposes)));
            }
            if !r.sharing_purposes.is_empty() {
                let _ = writeln!(s, "<li>Shared for: {}</li>", esc(&purposes(t, &r.sharing_purposes)));
            }
            if let Some(f) = flags(r) {
                let _ = writeln!(s, "<li>{f}</li>");
            }
            let _ = writeln!(s, "</ul>");
            let _ = writeln!(s, "<details><summary>Where this comes from</summary><ul>");
            for p in &r.provenance {
                let _ = writeln!(s, "<li><code>{}</code></li>", esc(&p.to_string()));
            }
            let _ = writeln!(s, "</ul></details></div>");
        }
    }
    if label.collects_any() {
        let _ = writeln!(
            s,
            "<p>Data collected by the app is encrypted in transit: {}</p>",
            if label.all_encrypted_in_transit { "yes" } else { "no" }
        );
    }
    let inert: Vec<&PracticeFact> = facts.iter().filter(|f| f.is_inert()).collect();
    if !inert.is_empty() {
        let _ = writeln!(s, "<h2>Annotated but not on the label</h2>\n<ul>");
        for f in inert {
            let _ = writeln!(
                s,
                "<li>{} at <code>{}</code>: {}</li>",
                esc(t.type_label(&f.data_type.name)),
                esc(&f.provenance.to_string()),
                esc(f.inert_reason.as_deref().unwrap_or("neither collected nor shared"))
            );
        }
        let _ = writeln!(s, "</ul>");
    }
    s.push_str("</body>\n</html>\n");
    s
}

#[derive(Serialize)]
struct JsonPreview<'a> {
    label: &'a SafetyLabel,
    not_on_label: Vec<&'a PracticeFact>,
}

pub fn render_json(label: &SafetyLabel, facts: &[PracticeFact]) -> String {
    let doc = JsonPreview {
        label,
        not_on_label: facts.iter().filter(|f| f.is_inert()).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("preview serializes");
    s.push('\n');
    s
}

pub fn render_preview(label: &SafetyLabel, facts: &[PracticeFact], t: &Taxonomy, format: Format) -> String {
    match format {
        Format::Terminal => render_terminal(label, facts, t),
        Format::Html => render_html(label, facts, t),
        Format::Json => render_json(label, facts),
    }
}
