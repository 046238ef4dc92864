//! The whole check over an already-loaded project: detection, annotation
//! graph, SDK practices and the resulting label, with diagnostics.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::Serialize;

use crate::annotation::{build_graph_lenient, lower_annotation, validate_graph, AnnotationGraph, Lowered, SourceLoc};
use crate::detect::{
    detect_api_calls, detect_keywords, parse_gradle_dependencies, ApiKind, ApiList, Confidence, DetectedCall, KeywordHit,
    KeywordList,
};
use crate::diag::{sort_diagnostics, Code, Diagnostic, Fix, Location};
use crate::java::{apply_annotation_insertion, find_covering_declaration, CompilationUnit, Extraction, InsertionError};
use crate::label::{facts_from_annotations, facts_from_sdks, merge_label, PracticeFact, SafetyLabel, SdkFactInput};
use crate::sdk::{match_sdks, CustomUsageDoc, KnowledgeBase, SdkMatch};
use crate::taxonomy::Taxonomy;

#[derive(Debug, Clone, Copy)]
pub struct AnalysisInput<'a> {
    pub taxonomy: &'a Taxonomy,
    pub api_list: &'a ApiList,
    pub keywords: &'a KeywordList,
    pub kb: &'a KnowledgeBase,
    pub units: &'a [CompilationUnit],
    /// `(path, text)` of each Groovy build file.
    pub gradle_files: &'a [(String, String)],
    /// Coordinates declared by hand, for builds that cannot be read.
    pub extra_coordinates: &'a [String],
    pub custom_usage: Option<&'a CustomUsageDoc>,
    pub xml_file: &'a str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub detected: Vec<DetectedCall>,
    pub keyword_hits: Vec<KeywordHit>,
    pub graph: AnnotationGraph,
    /// In coordinate order of discovery, without repeats.
    pub coordinates: Vec<String>,
    pub matched_sdks: Vec<SdkMatch>,
    /// All facts, inert ones included.
    pub facts: Vec<PracticeFact>,
    pub label: SafetyLabel,
    pub diagnostics: Vec<Diagnostic>,
}

/// Lower every privacy annotation, reporting the ones that cannot be read.
pub fn lower_units(units: &[CompilationUnit], taxonomy: &Taxonomy, diags: &mut Vec<Diagnostic>) -> Vec<Lowered> {
    let mut out = Vec::new();
    for unit in units {
        let (pairs, orphans) = unit.partition_raw_annotations();
        for o in orphans {
            let crate::java::FrontError::OrphanAnnotation { name, pos, .. } = &o;
            diags.push(
                Diagnostic::error(Code::OrphanAnnotation, format!("@{name} must annotate a variable declaration"))
                    .at(Location::source(&unit.file_path, *pos)),
            );
        }
        for (raw, _) in pairs {
            let loc = SourceLoc {
                file: unit.file_path.clone(),
                pos: raw.pos,
                span: raw.span,
            };
            match lower_annotation(&raw, loc.clone(), taxonomy) {
                Ok(l) => out.push(l),
                Err(e) => diags.push(Diagnostic::error(Code::AnnotationSyntax, format!("{e}")).at(loc.location())),
            }
        }
    }
    out
}

/// Whether the wizard could place an annotation for this call.
fn insertion_problem(unit: &CompilationUnit, d: &DetectedCall) -> Option<String> {
    let Some(call) = unit.calls.iter().find(|c| c.name_span == d.call.name_span) else {
        return None;
    };
    let target = find_covering_declaration(unit, call);
    let access = d.kind() == ApiKind::Access;
    let probe = crate::annotation::render_marker(access);
    let extraction = match (&d.spec.data_arg, &d.spec.return_type) {
        (Some(a), _) if !access => Extraction::Argument {
            index: a.index,
            type_text: &a.type_text,
        },
        (_, Some(r)) => Extraction::CallResult { type_text: r },
        _ => Extraction::CallResult { type_text: "" },
    };
    match apply_annotation_insertion(unit, target, call, &probe, extraction) {
        Err(InsertionError::NoInsertionPoint(why)) => Some(why),
        _ => None,
    }
}

fn call_diagnostics(units: &[CompilationUnit], detected: &[DetectedCall], diags: &mut Vec<Diagnostic>) {
    for d in detected.iter().filter(|d| !d.coverage.is_covered()) {
        let (code, what, ann) = match d.kind() {
            ApiKind::Access => (Code::UncoveredAccessCall, "reads", "@DataAccess"),
            ApiKind::Transmission => (Code::UncoveredTransmissionCall, "transmits", "@DataTransmission"),
        };
        let types: Vec<&str> = d.spec.data_types.iter().map(|t| t.name.as_str()).collect();
        let mut msg = format!("{} {what} data and has no {ann}", d.spec.pattern);
        if !types.is_empty() {
            msg.push_str(&format!(" (possible types: {})", types.join(", ")));
        }
        let loc = Location::source(&d.file, d.pos);
        let diag = match d.confidence {
            Confidence::High => Diagnostic::error(code, msg),
            Confidence::Low => {
                msg.push_str("; matched by method name only");
                Diagnostic::warning(code, msg)
            }
        };
        let unit = units.iter().find(|u| u.file_path == d.file);
        match unit.and_then(|u| insertion_problem(u, d)) {
            Some(why) => {
                diags.push(diag.at(loc.clone()));
                diags.push(Diagnostic::warning(Code::NoInsertionPoint, format!("cannot place {ann} automatically: {why}")).at(loc));
            }
            None => diags.push(diag.at(loc).with_fix(Fix::Wizard)),
        }
    }
}

pub fn analyze(input: AnalysisInput<'_>) -> Analysis {
    let mut diags = Vec::new();
    for unit in input.units {
        for gap in &unit.parse_gaps {
            let pos = unit.pos(gap.start);
            let end = unit.pos(gap.end);
            diags.push(
                Diagnostic::warning(Code::ParseGap, format!("skipped unparsable code up to line {}", end.line))
                    .at(Location::source(&unit.file_path, pos)),
            );
        }
    }
    let lowered = lower_units(input.units, input.taxonomy, &mut diags);
    let (graph, graph_errors) = build_graph_lenient(lowered);
    diags.extend(graph_errors.iter().map(|e| e.to_diagnostic()));
    diags.extend(validate_graph(&graph));

    let detected = detect_api_calls(input.units, input.api_list);
    call_diagnostics(input.units, &detected, &mut diags);
    let keyword_hits = detect_keywords(input.units, input.keywords);
    for h in &keyword_hits {
        let types: Vec<&str> = h.spec.data_types.iter().map(|t| t.name.as_str()).collect();
        diags.push(
            Diagnostic::info(
                Code::KeywordHit,
                format!("\"{}\" in {} suggests {}", h.spec.phrase, h.surface_form, types.join(", ")),
            )
            .at(Location::source(&h.file, h.pos)),
        );
    }

    let mut coordinates: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    for (path, text) in input.gradle_files {
        let deps = parse_gradle_dependencies(text);
        for c in deps.coordinates() {
            if seen.insert(String::from(c)) {
                coordinates.push(String::from(c));
            }
        }
        if let Some(&first) = deps.ignored_lines.first() {
            let mut loc = Location::file(path);
            loc.line = first;
            loc.col = 1;
            diags.push(
                Diagnostic::info(
                    Code::IgnoredDependencyLines,
                    format!("{} dependency line(s) not recognised", deps.ignored_lines.len()),
                )
                .at(loc),
            );
        }
    }
    for c in input.extra_coordinates {
        if seen.insert(c.clone()) {
            coordinates.push(c.clone());
        }
    }
    let matched_sdks = match_sdks(&coordinates, input.kb);
    let (sdk_facts, sdk_diags, pending) = facts_from_sdks(SdkFactInput {
        kb: input.kb,
        matched: &matched_sdks,
        doc: input.custom_usage,
        xml_file: input.xml_file,
    });
    diags.extend(sdk_diags);

    let mut facts = facts_from_annotations(&graph);
    facts.extend(sdk_facts);
    let mut label = merge_label(&facts);
    label.pending = pending;
    sort_diagnostics(&mut diags);
    Analysis {
        detected,
        keyword_hits,
        graph,
        coordinates,
        matched_sdks,
        facts,
        label,
        diagnostics: diags,
    }
}
