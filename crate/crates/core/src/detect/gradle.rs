//! Line-level extraction of Maven coordinates from a Groovy `build.gradle`.

use alloc::string::String;
use alloc::vec::Vec;
use regex::Regex;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradleDependency {
    /// `group:artifact[:version]`
    pub coordinate: String,
    /// 1-based.
    pub line: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradleDependencies {
    /// File order, first occurrence of each coordinate.
    pub dependencies: Vec<GradleDependency>,
    /// Non-blank lines inside `dependencies { }` blocks that were not
    /// recognised, 1-based.
    pub ignored_lines: Vec<u32>,
}

impl GradleDependencies {
    pub fn coordinates(&self) -> impl Iterator<Item = &str> {
        self.dependencies.iter().map(|d| d.coordinate.as_str())
    }
}

/// Remove `//` and `/* */` comments outside string literals. `in_block`
/// carries an open block comment across lines.
fn strip_comments(line: &str, in_block: &mut bool) -> String {
    let b = line.as_bytes();
    let mut out = String::with_capacity(line.len());
    let mut i = 0;
    let mut quote: Option<u8> = None;
    while i < b.len() {
        if *in_block {
            if b[i..].starts_with(b"*/") {
                *in_block = false;
                i += 2;
            } else {
                i += 1;
            }
            continue;
        }
        let c = b[i];
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => {}
            None if c == b'\'' || c == b'"' => quote = Some(c),
            None if b[i..].starts_with(b"//") => break,
            None if b[i..].starts_with(b"/*") => {
                *in_block = true;
                i += 2;
                continue;
            }
            None => {}
        }
        // push whole UTF-8 sequences
        let len = match c {
            0x00..=0x7f => 1,
            0xc0..=0xdf => 2,
            0xe0..=0xef => 3,
            _ => 4,
        };
        let end = (i + len).min(b.len());
        out.push_str(core::str::from_utf8(&b[i..end]).unwrap_or(""));
        i = end;
    }
    out
}

/// Coordinates declared with `implementation`, `api`, `compile`,
/// `compileOnly` or `runtimeOnly` in string notation. Test-only and other
/// configurations are skipped.
pub fn parse_gradle_dependencies(text: &str) -> GradleDependencies {
    let stmt = Regex::new(
        r#"^\s*(?:implementation|api|compile|compileOnly|runtimeOnly)\s*\(?\s*['"]([^'"\s:]+:[^'"\s]+)['"]"#,
    )
    .expect("valid regex");
    let opener = Regex::new(r"^\s*dependencies\s*\{").expect("valid regex");
    let mut out = GradleDependencies::default();
    let mut in_comment = false;
    // brace depth inside the current dependencies block, 0 when outside
    let mut depth = 0usize;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n as u32 + 1;
        let line = strip_comments(raw, &mut in_comment);
        let mut recognised = false;
        let mut entering = false;
        if depth == 0 && opener.is_match(&line) {
            entering = true;
            recognised = true;
        }
        for part in line.split(';') {
            if let Some(c) = stmt.captures(part) {
                recognised = true;
                let coord = &c[1];
                if !out.dependencies.iter().any(|d| d.coordinate == coord) {
                    out.dependencies.push(GradleDependency {
                        coordinate: String::from(coord),
                        line: line_no,
                    });
                }
            }
        }
        let opens = line.matches('{').count();
        let closes = line.matches('}').count();
        let inside = depth > 0;
        if entering || inside {
            depth = (depth + opens).saturating_sub(closes);
        }
        let trimmed = line.trim();
        let structural = trimmed.is_empty() || trimmed.chars().all(|c| c == '}' || c == '{' || c.is_whitespace());
        if inside && !recognised && !structural {
            out.ignored_lines.push(line_no);
        }
    }
    out
}
