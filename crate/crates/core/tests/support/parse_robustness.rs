//! Parser checks over the generated corpus: clean parses with every planted
//! call found, and no panics or broken spans on mutated input.

use std::panic::{catch_unwind, AssertUnwindSafe};

use matcha_core::detect::{detect_api_calls, ApiList, Confidence};
use matcha_core::java::{parse_unit, CompilationUnit};
use matcha_core::span::Span;
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::corpus;

pub const SEED: u64 = 0x6d61_7463_6861;
pub const GENERATED_FILES: usize = 200;
pub const MUTANTS: usize = 10_000;

fn in_bounds(src: &str, s: Span) -> bool {
    s.start <= s.end && s.end <= src.len() && src.is_char_boundary(s.start) && src.is_char_boundary(s.end)
}

/// Structural sanity of a parse result, as an error message.
pub fn invariants(u: &CompilationUnit) -> Result<(), String> {
    let src = &u.source;
    for t in &u.tokens {
        if !in_bounds(src, t.span) {
            return Err(format!("token span {:?} out of bounds", t.span));
        }
    }
    for w in u.parse_gaps.windows(2) {
        if w[0].end > w[1].start {
            return Err(format!("gaps {:?} and {:?} overlap", w[0], w[1]));
        }
    }
    let spans = u
        .parse_gaps
        .iter()
        .copied()
        .chain(u.calls.iter().flat_map(|c| [c.span, c.name_span, c.enclosing_statement_span]))
        .chain(u.declarations.iter().flat_map(|d| [d.span, d.name_span, d.declarator_span, d.scope]))
        .chain(u.raw_annotations.iter().map(|a| a.span));
    for s in spans {
        if !in_bounds(src, s) {
            return Err(format!("span {s:?} out of bounds"));
        }
    }
    Ok(())
}

/// Generated files parse without gaps and yield exactly the planted calls,
/// all at high confidence.
pub fn generated_corpus_failures(api: &ApiList) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..GENERATED_FILES {
        let f = corpus::generate_file(SEED, i, 60 + i % 80);
        let unit = parse_unit(&f.source, &f.path);
        if !unit.parse_gaps.is_empty() {
            out.push(format!("{}: gaps {:?}", f.path, unit.parse_gaps));
        }
        if let Err(e) = invariants(&unit) {
            out.push(format!("{}: {e}", f.path));
        }
        let found = detect_api_calls(std::slice::from_ref(&unit), api);
        let patterns: Vec<&str> = found.iter().map(|d| d.spec.pattern.as_str()).collect();
        if patterns != f.planted {
            out.push(format!("{}: found {patterns:?}, planted {:?}", f.path, f.planted));
        }
        if found.iter().any(|d| d.confidence != Confidence::High) {
            out.push(format!("{}: a planted call below high confidence", f.path));
        }
    }
    out
}

/// Mutants that panic or break span invariants; stops after a few.
pub fn mutant_failures(api: &ApiList) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let files: Vec<_> = (0..GENERATED_FILES).map(|i| corpus::generate_file(SEED, i, 40 + i % 60)).collect();
    let mut out = Vec::new();
    for n in 0..MUTANTS {
        let f = &files[n % files.len()];
        let src = corpus::mutate(&f.source, &mut rng);
        let r = catch_unwind(AssertUnwindSafe(|| {
            let unit = parse_unit(&src, &f.path);
            invariants(&unit)?;
            detect_api_calls(std::slice::from_ref(&unit), api);
            unit.partition_raw_annotations();
            Ok::<(), String>(())
        }));
        match r {
            Ok(Ok(())) => {}
            Ok(Err(e)) => out.push(format!("mutant {n}: {e}")),
            Err(_) => out.push(format!("mutant {n}: panic\n{src}")),
        }
        if out.len() > 3 {
            break;
        }
    }
    out
}
