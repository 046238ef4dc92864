//! Recovering statement-level parser.
//!
//! Recovery rules:
//! - a statement that looks like a member declaration (`Type name(` or a
//!   member-only modifier) ends the enclosing method body; the body becomes
//!   a parse gap and parsing resumes at class-body level;
//! - a malformed member or statement is skipped up to the next `;` or
//!   balanced block and recorded as a gap;
//! - nesting deeper than [`MAX_DEPTH`] is skipped as a gap.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::lexer::{self, Token, TokenKind};
use super::{
    AnnotationTarget, AnnotationValue, Argument, CallSite, CompilationUnit, DeclKind, Import,
    RawAnnotation, StatementHost, VarDeclaration,
};
use crate::span::{LineIndex, Span};

const MAX_DEPTH: usize = 96;
const NONE: u32 = u32::MAX;
const OPEN_SCOPE: usize = usize::MAX;

const MEMBER_MODIFIERS: &[&str] = &[
    "public", "private", "protected", "static", "abstract", "native", "synchronized",
    "transient", "volatile", "strictfp",
];
const PRIMITIVES: &[&str] = &["boolean", "byte", "char", "short", "int", "long", "float", "double", "void"];

pub fn parse_unit(source: &str, file_path: &str) -> CompilationUnit {
    let all_tokens = lexer::tokenize(source);
    let toks: Vec<Token> = all_tokens.iter().copied().filter(|t| !t.is_comment()).collect();
    let pairs = match_brackets(source, &toks);
    let line_index = LineIndex::new(source);
    let mut p = Parser {
        src: source,
        toks,
        pairs,
        pos: 0,
        depth: 0,
        package_name: None,
        imports: Vec::new(),
        decls: Vec::new(),
        calls: Vec::new(),
        anns: Vec::new(),
        gaps: Vec::new(),
        line_index,
    };
    p.parse_file();
    p.finish(file_path, all_tokens)
}

/// Parse a standalone annotation such as `@DataAccess(id = "x", ...)`.
/// Returns `None` unless the whole text is exactly one annotation.
pub fn parse_annotation_text(text: &str) -> Option<RawAnnotation> {
    let toks: Vec<Token> = lexer::tokenize(text).into_iter().filter(|t| !t.is_comment()).collect();
    if toks.first()?.kind != TokenKind::At {
        return None;
    }
    let pairs = match_brackets(text, &toks);
    let mut p = Parser {
        src: text,
        toks,
        pairs,
        pos: 0,
        depth: 0,
        package_name: None,
        imports: Vec::new(),
        decls: Vec::new(),
        calls: Vec::new(),
        anns: Vec::new(),
        gaps: Vec::new(),
        line_index: LineIndex::new(text),
    };
    let idx = p.parse_annotation()?;
    if p.pos != p.toks.len() {
        return None;
    }
    Some(p.anns.swap_remove(idx))
}

/// Pair brackets across the token stream. A `)` or `]` that does not match
/// the innermost opener only closes openers above the nearest `{`; a `}`
/// closes everything up to its `{`.
fn match_brackets(src: &str, toks: &[Token]) -> Vec<u32> {
    let mut pairs = vec![NONE; toks.len()];
    let mut stack: Vec<(usize, u8)> = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if t.kind != TokenKind::Punct {
            continue;
        }
        let c = src.as_bytes()[t.span.start];
        match c {
            b'(' | b'[' | b'{' => stack.push((i, c)),
            b')' | b']' | b'}' => {
                let open = match c {
                    b')' => b'(',
                    b']' => b'[',
                    _ => b'{',
                };
                let found = stack
                    .iter()
                    .rposition(|&(_, k)| k == open || (open != b'{' && k == b'{'));
                if let Some(at) = found {
                    if stack[at].1 == open {
                        let (j, _) = stack[at];
                        stack.truncate(at);
                        pairs[i] = j as u32;
                        pairs[j] = i as u32;
                    }
                }
            }
            _ => {}
        }
    }
    pairs
}

struct Snapshot {
    decls: usize,
    calls: usize,
    anns: usize,
    gaps: usize,
}

struct Modifiers {
    anns: Vec<usize>,
    member_only: bool,
}

enum BlockEnd {
    Closed(usize),
    Eof,
    Abort(usize),
}

struct ScanEnd {
    idx: usize,
    malformed: bool,
}

/// Parsed-but-not-yet-recorded expression range.
struct ExprRange {
    lo: usize,
    hi: usize,
    nested: Vec<(usize, usize)>,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pairs: Vec<u32>,
    pos: usize,
    depth: usize,
    package_name: Option<String>,
    imports: Vec<Import>,
    decls: Vec<VarDeclaration>,
    calls: Vec<CallSite>,
    anns: Vec<RawAnnotation>,
    gaps: Vec<Span>,
    line_index: LineIndex,
}

impl<'a> Parser<'a> {
    // ----- token helpers -----

    fn eof(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn text(&self, i: usize) -> &'a str {
        match self.toks.get(i) {
            Some(t) => &self.src[t.span.start..t.span.end],
            None => "",
        }
    }

    fn kind(&self, i: usize) -> Option<TokenKind> {
        self.toks.get(i).map(|t| t.kind)
    }

    fn is_punct(&self, i: usize, p: &str) -> bool {
        self.kind(i) == Some(TokenKind::Punct) && self.text(i) == p
    }

    fn is_kw(&self, i: usize, k: &str) -> bool {
        self.kind(i) == Some(TokenKind::Keyword) && self.text(i) == k
    }

    fn is_ident(&self, i: usize) -> bool {
        self.kind(i) == Some(TokenKind::Ident)
    }

    fn start_of(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.src.len(), |t| t.span.start)
    }

    fn end_of(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.src.len(), |t| t.span.end)
    }

    fn partner(&self, i: usize) -> Option<usize> {
        match self.pairs.get(i) {
            Some(&p) if p != NONE => Some(p as usize),
            _ => None,
        }
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            decls: self.decls.len(),
            calls: self.calls.len(),
            anns: self.anns.len(),
            gaps: self.gaps.len(),
        }
    }

    fn rollback(&mut self, s: &Snapshot) {
        self.decls.truncate(s.decls);
        self.calls.truncate(s.calls);
        self.anns.truncate(s.anns);
        self.gaps.truncate(s.gaps);
    }

    fn gap(&mut self, start: usize, end: usize) {
        if end > start {
            self.gaps.push(Span::new(start, end));
        }
    }

    fn set_targets(&mut self, anns: &[usize], target: AnnotationTarget) {
        for &i in anns {
            if let Some(a) = self.anns.get_mut(i) {
                a.target = target;
            }
        }
    }

    fn is_type_decl_start(&self, i: usize) -> bool {
        (self.kind(i) == Some(TokenKind::Keyword) && matches!(self.text(i), "class" | "interface" | "enum"))
            || (self.kind(i) == Some(TokenKind::At) && self.is_kw(i + 1, "interface"))
            || (self.is_ident(i) && self.text(i) == "record" && self.is_ident(i + 1) && !self.is_punct(i + 2, "=")
                && !self.is_punct(i + 2, ";") && !self.is_punct(i + 2, ","))
    }

    // ----- file level -----

    fn parse_file(&mut self) {
        while !self.eof() {
            let start = self.pos;
            if self.is_kw(self.pos, "package") {
                self.parse_package();
                continue;
            }
            if self.is_kw(self.pos, "import") {
                self.parse_import();
                continue;
            }
            if self.is_punct(self.pos, ";") {
                self.pos += 1;
                continue;
            }
            let mods = self.parse_modifiers(true);
            if self.is_type_decl_start(self.pos) {
                self.parse_type_decl(&mods.anns);
                continue;
            }
            // Members outside any class, e.g. after a premature `}`.
            let snap = self.snapshot();
            if !self.eof() && self.try_parse_member(&mods.anns, start) {
                continue;
            }
            self.rollback(&snap);
            self.pos = start;
            self.skip_as_gap(start);
        }
    }

    fn parse_package(&mut self) {
        self.pos += 1;
        let mut name = String::new();
        while !self.eof() && !self.is_punct(self.pos, ";") {
            if self.is_ident(self.pos) || self.is_punct(self.pos, ".") {
                name.push_str(self.text(self.pos));
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.is_punct(self.pos, ";") {
            self.pos += 1;
        }
        if !name.is_empty() {
            self.package_name = Some(name);
        }
    }

    fn parse_import(&mut self) {
        let start = self.pos;
        self.pos += 1;
        let is_static = self.is_kw(self.pos, "static");
        if is_static {
            self.pos += 1;
        }
        let mut name = String::new();
        let mut wildcard = false;
        while !self.eof() {
            if self.is_ident(self.pos) || self.is_punct(self.pos, ".") {
                name.push_str(self.text(self.pos));
                self.pos += 1;
            } else if self.is_punct(self.pos, "*") {
                wildcard = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.is_punct(self.pos, ";") {
            self.pos += 1;
        } else {
            self.gap(self.start_of(start), self.end_of(self.pos.saturating_sub(1)));
            return;
        }
        let name = name.trim_end_matches('.').to_owned();
        if !name.is_empty() {
            self.imports.push(Import {
                qualified_name: name,
                wildcard,
                is_static,
                span: Span::new(self.start_of(start), self.end_of(self.pos - 1)),
            });
        }
    }

    /// Skip one malformed construct: up to and including the next `;`, or a
    /// balanced `{...}` group. Never consumes a `}` that closes an outer
    /// block unless nothing else was consumed.
    fn skip_as_gap(&mut self, start: usize) {
        let mut i = self.pos;
        let mut depth = 0usize;
        while i < self.toks.len() {
            if self.is_punct(i, "{") {
                depth += 1;
            } else if self.is_punct(i, "}") {
                if depth == 0 {
                    if i == start {
                        i += 1;
                    }
                    break;
                }
                depth -= 1;
                if depth == 0 {
                    i += 1;
                    break;
                }
            } else if self.is_punct(i, ";") && depth == 0 {
                i += 1;
                break;
            }
            i += 1;
        }
        if i <= start {
            i = start + 1;
        }
        self.gap(self.start_of(start), self.end_of(i - 1));
        self.pos = i;
    }

    // ----- annotations and modifiers -----

    fn parse_modifiers(&mut self, allow_default: bool) -> Modifiers {
        let mut anns = Vec::new();
        let mut member_only = false;
        loop {
            if self.kind(self.pos) == Some(TokenKind::At) && !self.is_kw(self.pos + 1, "interface") {
                match self.parse_annotation() {
                    Some(i) => anns.push(i),
                    None => {
                        self.pos += 1;
                    }
                }
                continue;
            }
            if self.kind(self.pos) == Some(TokenKind::Keyword) {
                let t = self.text(self.pos);
                if t == "final" {
                    self.pos += 1;
                    continue;
                }
                if MEMBER_MODIFIERS.contains(&t) && !(t == "synchronized" && self.is_punct(self.pos + 1, "(")) {
                    member_only = true;
                    self.pos += 1;
                    continue;
                }
                if allow_default && t == "default" && !self.is_punct(self.pos + 1, ":") {
                    self.pos += 1;
                    continue;
                }
            }
            if self.is_ident(self.pos)
                && matches!(self.text(self.pos), "sealed" | "non")
                && (self.is_kw(self.pos + 1, "class") || self.is_kw(self.pos + 1, "interface") || self.is_punct(self.pos + 1, "-"))
            {
                self.pos += if self.text(self.pos) == "non" { 3 } else { 1 };
                member_only = true;
                continue;
            }
            break;
        }
        Modifiers { anns, member_only }
    }

    fn parse_annotation(&mut self) -> Option<usize> {
        let at = self.pos;
        let mut i = at + 1;
        if !self.is_ident(i) {
            return None;
        }
        let mut name = String::from(self.text(i));
        i += 1;
        while self.is_punct(i, ".") && self.is_ident(i + 1) {
            name.push('.');
            name.push_str(self.text(i + 1));
            i += 2;
        }
        let mut elements = BTreeMap::new();
        let mut duplicates = Vec::new();
        let mut end = i - 1;
        if self.is_punct(i, "(") {
            if let Some(close) = self.partner(i).filter(|&c| c > i && self.annotation_args_clean(i, c)) {
                self.parse_elements(i + 1, close, &mut elements, &mut duplicates);
                end = close;
                i = close + 1;
            }
        }
        self.pos = i;
        let span = Span::new(self.start_of(at), self.end_of(end));
        self.anns.push(RawAnnotation {
            name,
            elements,
            duplicate_elements: duplicates,
            span,
            pos: self.line_index.pos(self.src, span.start),
            target: AnnotationTarget::Other,
        });
        Some(self.anns.len() - 1)
    }

    fn annotation_args_clean(&self, open: usize, close: usize) -> bool {
        (open + 1..close).all(|j| !self.is_punct(j, ";"))
    }

    /// Split `[lo, hi)` on commas outside any bracket.
    fn split_commas(&self, lo: usize, hi: usize, angles: bool) -> Vec<(usize, usize)> {
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut angle = 0i32;
        let mut start = lo;
        for j in lo..hi {
            if self.kind(j) != Some(TokenKind::Punct) {
                continue;
            }
            match self.text(j) {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" => depth -= 1,
                "<" if angles => angle += 1,
                ">" if angles && angle > 0 => angle -= 1,
                "," if depth == 0 && angle == 0 => {
                    parts.push((start, j));
                    start = j + 1;
                }
                _ => {}
            }
        }
        parts.push((start, hi));
        parts
    }

    fn parse_elements(
        &self,
        lo: usize,
        hi: usize,
        elements: &mut BTreeMap<String, AnnotationValue>,
        duplicates: &mut Vec<String>,
    ) {
        if lo >= hi {
            return;
        }
        for (a, b) in self.split_commas(lo, hi, false) {
            if a >= b {
                continue;
            }
            let (name, value) = if self.is_ident(a) && self.is_punct(a + 1, "=") {
                (String::from(self.text(a)), self.parse_value(a + 2, b, 0))
            } else {
                (String::from("value"), self.parse_value(a, b, 0))
            };
            if elements.contains_key(&name) {
                duplicates.push(name);
            } else {
                elements.insert(name, value);
            }
        }
    }

    fn parse_value(&self, lo: usize, hi: usize, depth: usize) -> AnnotationValue {
        if lo >= hi {
            return AnnotationValue::Other(String::new());
        }
        let verbatim = || AnnotationValue::Other(String::from(&self.src[self.start_of(lo)..self.end_of(hi - 1)]));
        if self.is_punct(lo, "{") && self.partner(lo) == Some(hi - 1) {
            if depth > 16 {
                return verbatim();
            }
            let mut items = Vec::new();
            if lo + 1 < hi - 1 {
                for (a, b) in self.split_commas(lo + 1, hi - 1, false) {
                    if a < b {
                        items.push(self.parse_value(a, b, depth + 1));
                    }
                }
            }
            return AnnotationValue::Array(items);
        }
        if hi - lo == 1 && self.kind(lo) == Some(TokenKind::StringLit) {
            return AnnotationValue::Str(lexer::unescape_string(self.text(lo)));
        }
        if (hi - lo) % 2 == 1
            && (lo..hi).all(|j| if (j - lo) % 2 == 0 { self.is_ident(j) } else { self.is_punct(j, ".") })
        {
            let mut path = String::new();
            for j in lo..hi {
                path.push_str(self.text(j));
            }
            return AnnotationValue::Enum(path);
        }
        verbatim()
    }

    // ----- types -----

    /// Returns the index just past a type starting at `i`.
    fn parse_type(&self, i: usize) -> Option<usize> {
        let mut j = i;
        if self.kind(j) == Some(TokenKind::Keyword) && PRIMITIVES.contains(&self.text(j)) {
            j += 1;
        } else if self.is_ident(j) {
            j += 1;
            loop {
                if self.is_punct(j, "<") {
                    j = self.skip_type_args(j)?;
                }
                if self.is_punct(j, ".") && self.is_ident(j + 1) {
                    j += 2;
                    continue;
                }
                break;
            }
        } else {
            return None;
        }
        while self.is_punct(j, "[") && self.is_punct(j + 1, "]") {
            j += 2;
        }
        if self.is_punct(j, "...") {
            j += 1;
        }
        Some(j)
    }

    fn skip_type_args(&self, open: usize) -> Option<usize> {
        let mut depth = 0usize;
        let mut j = open;
        while j < self.toks.len() && j < open + 256 {
            let t = self.text(j);
            match self.kind(j)? {
                TokenKind::Punct => match t {
                    "<" => depth += 1,
                    ">" => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(j + 1);
                        }
                    }
                    "," | "." | "?" | "[" | "]" | "&" => {}
                    _ => return None,
                },
                TokenKind::Ident => {}
                TokenKind::Keyword if matches!(t, "extends" | "super") || PRIMITIVES.contains(&t) => {}
                TokenKind::At => {}
                _ => return None,
            }
            j += 1;
        }
        None
    }

    fn type_text(&self, lo: usize, hi: usize) -> String {
        let mut out = String::new();
        for j in lo..hi {
            let t = self.text(j);
            if !out.is_empty() && self.kind(j) != Some(TokenKind::Punct) && self.kind(j - 1) != Some(TokenKind::Punct) {
                out.push(' ');
            } else if matches!(t, "extends" | "super" | "&") || (j > lo && matches!(self.text(j - 1), "extends" | "super" | "&" | ",")) {
                out.push(' ');
            }
            out.push_str(t);
        }
        out
    }

    // ----- declarations -----

    fn parse_type_decl(&mut self, anns: &[usize]) {
        self.set_targets(anns, AnnotationTarget::Type);
        let kw = self.pos;
        let is_enum = self.is_kw(kw, "enum");
        self.pos += if self.kind(kw) == Some(TokenKind::At) { 2 } else { 1 };
        let mut i = self.pos;
        while i < self.toks.len() {
            if self.is_punct(i, "{") {
                break;
            }
            if self.is_punct(i, ";") || self.is_punct(i, "}") {
                self.gap(self.start_of(kw), self.end_of(i));
                self.pos = i + 1;
                return;
            }
            if self.is_punct(i, "(") {
                if let Some(c) = self.partner(i) {
                    i = c;
                }
            }
            i += 1;
        }
        if i >= self.toks.len() {
            self.gap(self.start_of(kw), self.src.len());
            self.pos = i;
            return;
        }
        self.parse_class_body(i, is_enum);
    }

    fn parse_class_body(&mut self, open: usize, is_enum: bool) {
        if self.depth >= MAX_DEPTH {
            self.skip_balanced(open);
            return;
        }
        self.depth += 1;
        let body_start = self.start_of(open);
        let decl_mark = self.decls.len();
        self.pos = open + 1;
        if is_enum {
            self.parse_enum_constants();
        }
        let body_end;
        loop {
            if self.eof() {
                body_end = self.src.len();
                break;
            }
            if self.is_punct(self.pos, "}") {
                body_end = self.end_of(self.pos);
                self.pos += 1;
                break;
            }
            if self.is_punct(self.pos, ";") {
                self.pos += 1;
                continue;
            }
            let member_start = self.pos;
            if self.is_punct(self.pos, "{") || (self.is_kw(self.pos, "static") && self.is_punct(self.pos + 1, "{")) {
                if self.is_kw(self.pos, "static") {
                    self.pos += 1;
                }
                let open = self.pos;
                self.parse_member_block(open, member_start);
                continue;
            }
            let mods = self.parse_modifiers(true);
            if self.is_type_decl_start(self.pos) {
                self.parse_type_decl(&mods.anns);
                continue;
            }
            let snap = self.snapshot();
            if self.try_parse_member(&mods.anns, member_start) {
                continue;
            }
            self.rollback(&snap);
            self.pos = member_start;
            self.skip_as_gap(member_start);
        }
        for d in &mut self.decls[decl_mark..] {
            if d.kind == DeclKind::Field && d.scope.end == OPEN_SCOPE {
                d.scope = Span::new(body_start, body_end);
            }
        }
        self.depth -= 1;
    }

    fn skip_balanced(&mut self, open: usize) {
        let end_tok = self.partner(open).filter(|&c| c > open);
        let end = end_tok.map_or(self.src.len(), |c| self.end_of(c));
        self.gap(self.start_of(open), end);
        self.pos = end_tok.map_or(self.toks.len(), |c| c + 1);
    }

    fn parse_enum_constants(&mut self) {
        loop {
            let mods = self.parse_modifiers(false);
            self.set_targets(&mods.anns, AnnotationTarget::Other);
            if !self.is_ident(self.pos) {
                break;
            }
            let const_start = self.pos;
            self.pos += 1;
            if self.is_punct(self.pos, "(") {
                let Some(close) = self.partner(self.pos).filter(|&c| c > self.pos) else {
                    break;
                };
                let stmt = Span::new(self.start_of(const_start), self.end_of(close));
                self.record_expression(self.pos + 1, close, stmt, StatementHost::NotExtractable);
                self.pos = close + 1;
            }
            if self.is_punct(self.pos, "{") {
                let open = self.pos;
                self.parse_class_body(open, false);
            }
            if self.is_punct(self.pos, ",") {
                self.pos += 1;
                continue;
            }
            if self.is_punct(self.pos, ";") {
                self.pos += 1;
            }
            break;
        }
    }

    /// Record calls in `[lo, hi)`, parsing nested lambda and class bodies.
    fn record_expression(&mut self, lo: usize, hi: usize, stmt: Span, host: StatementHost) {
        let mut nested = Vec::new();
        let saved = self.pos;
        let scan = self.scan_expression(lo, hi, false, &mut nested);
        self.pos = saved;
        if scan.is_ok() {
            self.extract_calls(&ExprRange { lo, hi, nested }, stmt, host, None);
        }
    }

    fn try_parse_member(&mut self, anns: &[usize], member_start: usize) -> bool {
        // constructor or compact canonical constructor
        if self.is_ident(self.pos) && self.is_punct(self.pos + 1, "(") {
            self.set_targets(anns, AnnotationTarget::Method);
            self.pos += 1;
            return self.parse_method_rest(member_start);
        }
        if self.is_ident(self.pos) && self.is_punct(self.pos + 1, "{") {
            self.set_targets(anns, AnnotationTarget::Method);
            self.pos += 1;
            let open = self.pos;
            self.parse_member_block(open, member_start);
            return true;
        }
        if self.is_punct(self.pos, "<") {
            match self.skip_type_args(self.pos) {
                Some(j) => self.pos = j,
                None => return false,
            }
        }
        let ty_start = self.pos;
        let Some(ty_end) = self.parse_type(ty_start) else {
            return false;
        };
        if !self.is_ident(ty_end) {
            return false;
        }
        if self.is_punct(ty_end + 1, "(") {
            self.set_targets(anns, AnnotationTarget::Method);
            self.pos = ty_end + 1;
            return self.parse_method_rest(member_start);
        }
        self.pos = ty_end;
        match self.parse_declarators(anns, member_start, ty_start, ty_end, DeclKind::Field, StatementHost::NotExtractable, None) {
            Ok(true) => true,
            _ => false,
        }
    }

    /// At the `(` of a method or constructor parameter list.
    fn parse_method_rest(&mut self, member_start: usize) -> bool {
        let open = self.pos;
        let Some(close) = self.partner(open).filter(|&c| c > open) else {
            return false;
        };
        if (open + 1..close).any(|j| self.is_punct(j, ";") || self.is_punct(j, "{")) {
            return false;
        }
        let params = self.parse_params(open + 1, close);
        self.pos = close + 1;
        while self.is_punct(self.pos, "[") && self.is_punct(self.pos + 1, "]") {
            self.pos += 2;
        }
        loop {
            if self.eof() {
                return false;
            }
            if self.is_punct(self.pos, "{") {
                let body_open = self.pos;
                let end = self.parse_member_block(body_open, member_start);
                let scope = Span::new(self.start_of(member_start), end);
                for i in params {
                    self.decls[i].scope = scope;
                }
                return true;
            }
            if self.is_punct(self.pos, ";") {
                self.pos += 1;
                let scope = Span::new(self.start_of(member_start), self.end_of(self.pos - 1));
                for i in params {
                    self.decls[i].scope = scope;
                }
                return true;
            }
            if self.is_kw(self.pos, "default") {
                while !self.eof() && !self.is_punct(self.pos, ";") {
                    if self.is_punct(self.pos, "}") {
                        return false;
                    }
                    self.pos += 1;
                }
                continue;
            }
            if self.is_kw(self.pos, "throws")
                || self.is_ident(self.pos)
                || self.is_punct(self.pos, ".")
                || self.is_punct(self.pos, ",")
                || self.is_punct(self.pos, "<")
                || self.is_punct(self.pos, ">")
                || self.kind(self.pos) == Some(TokenKind::At)
            {
                self.pos += 1;
                continue;
            }
            return false;
        }
    }

    fn parse_params(&mut self, lo: usize, hi: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        for (a, b) in self.split_commas(lo, hi, true) {
            if a >= b {
                continue;
            }
            self.pos = a;
            let mods = self.parse_modifiers(false);
            let ty_start = self.pos;
            let Some(ty_end) = self.parse_type(ty_start).filter(|&e| e < b) else {
                continue;
            };
            if !self.is_ident(ty_end) {
                continue;
            }
            let mut type_end = ty_end;
            let name_tok = ty_end;
            let mut k = name_tok + 1;
            let mut dims = 0;
            while k + 1 < b && self.is_punct(k, "[") && self.is_punct(k + 1, "]") {
                k += 2;
                dims += 1;
            }
            if k != b {
                continue;
            }
            if type_end > ty_start && self.is_punct(type_end - 1, "...") {
                type_end -= 1;
            }
            let mut ty = self.type_text(ty_start, type_end);
            if type_end != ty_end {
                ty.push_str("[]");
            }
            for _ in 0..dims {
                ty.push_str("[]");
            }
            let idx = self.decls.len();
            let span = Span::new(self.start_of(a), self.end_of(b - 1));
            let name_span = self.toks[name_tok].span;
            self.decls.push(VarDeclaration {
                name: String::from(self.text(name_tok)),
                declared_type_text: ty,
                span,
                pos: self.line_index.pos(self.src, name_span.start),
                name_span,
                declarator_span: Span::new(name_span.start, self.end_of(b - 1)),
                initializer_span: None,
                annotations: mods.anns.iter().map(|&i| self.anns[i].clone()).collect(),
                declarator_group_size: 1,
                group_index: 0,
                kind: DeclKind::Parameter,
                scope: Span::new(span.start, OPEN_SCOPE),
            });
            self.set_targets(&mods.anns, AnnotationTarget::Declaration(idx));
            for &i in &mods.anns {
                self.decls[idx].annotations.iter_mut().for_each(|a| {
                    if a.span == self.anns[i].span {
                        a.target = AnnotationTarget::Declaration(idx);
                    }
                });
            }
            out.push(idx);
        }
        out
    }

    /// Parse a method or initializer body, converting an aborted body into a
    /// gap. Returns the end offset of the body.
    fn parse_member_block(&mut self, open: usize, _member_start: usize) -> usize {
        let snap = self.snapshot();
        match self.parse_block(open) {
            BlockEnd::Closed(end) => end,
            BlockEnd::Eof => self.src.len(),
            BlockEnd::Abort(at) => {
                self.rollback(&snap);
                let end = if at > open { self.end_of(at - 1) } else { self.end_of(open) };
                self.gap(self.start_of(open), end);
                self.pos = at;
                end
            }
        }
    }

    /// Declarators after a type: `a = x, b[] = {..};`. On success the
    /// declarations and initializer calls are recorded and `pos` is past the
    /// terminator. `bound` limits scanning (for-loop headers); there the
    /// terminator may be `;`, `:` or the bound itself.
    #[allow(clippy::too_many_arguments)]
    fn parse_declarators(
        &mut self,
        anns: &[usize],
        stmt_start: usize,
        ty_start: usize,
        ty_end: usize,
        kind: DeclKind,
        host: StatementHost,
        bound: Option<usize>,
    ) -> Result<bool, usize> {
        let limit = bound.unwrap_or(usize::MAX);
        let base_type = self.type_text(ty_start, ty_end);
        struct Pending {
            name_tok: usize,
            dims: usize,
            end_tok: usize,
            init: Option<ExprRange>,
        }
        let mut pending: Vec<Pending> = Vec::new();
        self.pos = ty_end;
        let terminator;
        loop {
            if !self.is_ident(self.pos) || self.pos >= limit {
                return Ok(false);
            }
            let name_tok = self.pos;
            self.pos += 1;
            let mut dims = 0;
            while self.is_punct(self.pos, "[") && self.is_punct(self.pos + 1, "]") {
                self.pos += 2;
                dims += 1;
            }
            let mut init = None;
            if self.is_punct(self.pos, "=") {
                let lo = self.pos + 1;
                let mut nested = Vec::new();
                let end = self.scan_expression(lo, limit, true, &mut nested)?;
                if end.malformed || end.idx == lo {
                    return Ok(false);
                }
                init = Some(ExprRange { lo, hi: end.idx, nested });
                self.pos = end.idx;
            }
            pending.push(Pending {
                name_tok,
                dims,
                end_tok: self.pos - 1,
                init,
            });
            if self.is_punct(self.pos, ",") && self.pos < limit {
                self.pos += 1;
                continue;
            }
            if self.pos == limit || self.is_punct(self.pos, ";") || (bound.is_some() && self.is_punct(self.pos, ":")) {
                terminator = self.pos;
                break;
            }
            return Ok(false);
        }
        let stmt_end = if self.pos == limit { self.end_of(terminator - 1) } else { self.end_of(terminator) };
        if bound.is_none() {
            self.pos = terminator + 1;
        }
        let stmt = Span::new(self.start_of(stmt_start), stmt_end);
        let first = self.decls.len();
        let group = pending.len();
        let annotations: Vec<RawAnnotation> = anns
            .iter()
            .map(|&i| {
                let mut a = self.anns[i].clone();
                a.target = AnnotationTarget::Declaration(first);
                a
            })
            .collect();
        self.set_targets(anns, AnnotationTarget::Declaration(first));
        for (gi, p) in pending.iter().enumerate() {
            let name_span = self.toks[p.name_tok].span;
            let mut ty = base_type.clone();
            for _ in 0..p.dims {
                ty.push_str("[]");
            }
            self.decls.push(VarDeclaration {
                name: String::from(self.text(p.name_tok)),
                declared_type_text: ty,
                span: stmt,
                pos: self.line_index.pos(self.src, name_span.start),
                name_span,
                declarator_span: Span::new(name_span.start, self.end_of(p.end_tok)),
                initializer_span: p
                    .init
                    .as_ref()
                    .map(|r| Span::new(self.start_of(r.lo), self.end_of(r.hi - 1))),
                annotations: annotations.clone(),
                declarator_group_size: group,
                group_index: gi,
                kind,
                scope: Span::new(stmt.start, OPEN_SCOPE),
            });
        }
        for p in &pending {
            if let Some(r) = &p.init {
                self.extract_calls(r, stmt, host, None);
            }
        }
        Ok(true)
    }

    // ----- statements -----

    fn parse_block(&mut self, open: usize) -> BlockEnd {
        if self.depth >= MAX_DEPTH {
            self.skip_balanced(open);
            return BlockEnd::Closed(self.end_of(self.pos.saturating_sub(1)));
        }
        self.depth += 1;
        self.pos = open + 1;
        let decl_mark = self.decls.len();
        let result = loop {
            if self.eof() {
                break BlockEnd::Eof;
            }
            if self.is_punct(self.pos, "}") {
                self.pos += 1;
                break BlockEnd::Closed(self.end_of(self.pos - 1));
            }
            if let Err(at) = self.parse_statement(true) {
                break BlockEnd::Abort(at);
            }
        };
        let end = match result {
            BlockEnd::Closed(e) => e,
            _ => self.src.len(),
        };
        for d in &mut self.decls[decl_mark..] {
            if d.kind == DeclKind::Local && d.scope.end == OPEN_SCOPE {
                d.scope.end = end;
            }
        }
        self.depth -= 1;
        result
    }

    fn host(in_block: bool) -> StatementHost {
        if in_block {
            StatementHost::Block
        } else {
            StatementHost::NotExtractable
        }
    }

    /// Parse a parenthesized header at `pos`, recording its calls.
    fn parse_paren_header(&mut self, stmt_start: usize, host: StatementHost) -> Result<bool, usize> {
        if !self.is_punct(self.pos, "(") {
            return Ok(false);
        }
        let open = self.pos;
        let mut nested = Vec::new();
        let end = self.scan_expression(open + 1, usize::MAX, false, &mut nested)?;
        if end.malformed || !self.is_punct(end.idx, ")") {
            let stop = end.idx.max(open + 1);
            self.gap(self.start_of(stmt_start), self.end_of(stop.min(self.toks.len()) - 1));
            self.pos = if self.is_punct(end.idx, ";") || self.is_punct(end.idx, ")") { end.idx + 1 } else { end.idx };
            return Ok(false);
        }
        let stmt = Span::new(self.start_of(stmt_start), self.end_of(end.idx));
        self.extract_calls(&ExprRange { lo: open + 1, hi: end.idx, nested }, stmt, host, None);
        self.pos = end.idx + 1;
        Ok(true)
    }

    fn parse_statement(&mut self, in_block: bool) -> Result<(), usize> {
        if self.depth >= MAX_DEPTH {
            let start = self.pos;
            self.skip_as_gap(start);
            return Ok(());
        }
        self.depth += 1;
        let r = self.parse_statement_inner(in_block);
        self.depth -= 1;
        r
    }

    fn parse_statement_inner(&mut self, in_block: bool) -> Result<(), usize> {
        let start = self.pos;
        let host = Self::host(in_block);
        if self.is_punct(start, "{") {
            return match self.parse_block(start) {
                BlockEnd::Abort(at) => Err(at),
                _ => Ok(()),
            };
        }
        if self.is_punct(start, ";") {
            self.pos += 1;
            return Ok(());
        }
        if self.is_punct(start, "}") {
            return Ok(());
        }
        if self.kind(start) == Some(TokenKind::Keyword) {
            match self.text(start) {
                "if" | "switch" | "synchronized" | "while" => {
                    let kw = self.text(start);
                    self.pos += 1;
                    let header_host = if kw == "while" { StatementHost::NotExtractable } else { host };
                    if !self.parse_paren_header(start, header_host)? {
                        return Ok(());
                    }
                    if kw == "switch" && self.is_punct(self.pos, "{") {
                        let open = self.pos;
                        return match self.parse_block(open) {
                            BlockEnd::Abort(at) => Err(at),
                            _ => Ok(()),
                        };
                    }
                    self.parse_statement(false)?;
                    if kw == "if" && self.is_kw(self.pos, "else") {
                        self.pos += 1;
                        self.parse_statement(false)?;
                    }
                    return Ok(());
                }
                "for" => return self.parse_for(start),
                "do" => {
                    self.pos += 1;
                    self.parse_statement(false)?;
                    if self.is_kw(self.pos, "while") {
                        let w = self.pos;
                        self.pos += 1;
                        self.parse_paren_header(w, StatementHost::NotExtractable)?;
                        if self.is_punct(self.pos, ";") {
                            self.pos += 1;
                        }
                    }
                    return Ok(());
                }
                "try" => return self.parse_try(start),
                "else" => {
                    self.pos += 1;
                    return self.parse_statement(false);
                }
                "return" | "throw" => {
                    self.pos += 1;
                    return self.parse_expression_statement(start, host);
                }
                "assert" => {
                    self.pos += 1;
                    return self.parse_expression_statement(start, StatementHost::NotExtractable);
                }
                "break" | "continue" => {
                    let s = self.pos;
                    self.skip_as_gap(s);
                    // a well-formed break/continue is not a gap
                    if self.is_punct(self.pos.saturating_sub(1), ";") {
                        self.gaps.pop();
                    }
                    return Ok(());
                }
                "case" | "default" => return self.parse_case_label(),
                "void" | "public" | "private" | "protected" | "abstract" | "native" | "static" | "transient" | "volatile" | "strictfp" => {
                    if !(self.text(start) == "static" && self.is_punct(start + 1, "{")) {
                        return Err(start);
                    }
                }
                "this" | "super" if self.is_punct(start + 1, "(") => {
                    // explicit constructor invocation must stay first
                    return self.parse_expression_statement(start, StatementHost::NotExtractable);
                }
                _ => {}
            }
        }
        if self.is_ident(start) && self.text(start) == "yield" && !matches!(self.text(start + 1), "=" | "." | "(" | "[" | "++" | "--") {
            self.pos += 1;
            return self.parse_expression_statement(start, host);
        }
        if self.is_ident(start) && self.is_punct(start + 1, ":") {
            self.pos += 2;
            return self.parse_statement(in_block);
        }
        let snap = self.snapshot();
        let mods = self.parse_modifiers(false);
        if mods.member_only {
            self.rollback(&snap);
            return Err(start);
        }
        if self.is_type_decl_start(self.pos) {
            self.parse_type_decl(&mods.anns);
            return Ok(());
        }
        let ty_start = self.pos;
        if let Some(ty_end) = self.parse_type(ty_start) {
            if self.is_ident(ty_end) {
                if self.is_punct(ty_end + 1, "(") {
                    let looks_like_method = self
                        .partner(ty_end + 1)
                        .is_some_and(|c| self.is_punct(c + 1, "{") || self.is_kw(c + 1, "throws"));
                    if looks_like_method {
                        self.rollback(&snap);
                        return Err(start);
                    }
                } else if matches!(self.text(ty_end + 1), "=" | "," | ";" | "[") {
                    let decl_snap = self.snapshot();
                    match self.parse_declarators(&mods.anns, start, ty_start, ty_end, DeclKind::Local, host, None)? {
                        true => return Ok(()),
                        false => self.rollback(&decl_snap),
                    }
                }
            }
        }
        self.set_targets(&mods.anns, AnnotationTarget::Other);
        self.pos = ty_start;
        self.parse_expression_statement(start, host)
    }

    fn parse_case_label(&mut self) -> Result<(), usize> {
        let start = self.pos;
        let mut i = self.pos + 1;
        let mut depth = 0i32;
        while i < self.toks.len() {
            if self.kind(i) == Some(TokenKind::Punct) {
                match self.text(i) {
                    "(" | "[" => depth += 1,
                    ")" | "]" => depth -= 1,
                    ":" | "->" if depth <= 0 => break,
                    ";" | "{" | "}" if depth <= 0 => break,
                    _ => {}
                }
            }
            i += 1;
        }
        if self.is_punct(i, ":") {
            self.pos = i + 1;
            return Ok(());
        }
        if self.is_punct(i, "->") {
            self.pos = i + 1;
            if self.is_punct(self.pos, "{") {
                return self.parse_statement(false);
            }
            let s = self.pos;
            return self.parse_expression_statement(s, StatementHost::NotExtractable);
        }
        self.skip_as_gap(start);
        Ok(())
    }

    fn parse_for(&mut self, start: usize) -> Result<(), usize> {
        self.pos += 1;
        if !self.is_punct(self.pos, "(") {
            return Ok(());
        }
        let open = self.pos;
        let Some(close) = self.partner(open).filter(|&c| c > open) else {
            self.skip_as_gap(start);
            return Ok(());
        };
        let decl_mark = self.decls.len();
        let header = Span::new(self.start_of(start), self.end_of(close));
        // init section: a local declaration if it parses as one
        self.pos = open + 1;
        let snap = self.snapshot();
        let mods = self.parse_modifiers(false);
        let mut after_init = open + 1;
        if let Some(ty_end) = self.parse_type(self.pos).filter(|&e| e < close) {
            if self.is_ident(ty_end) {
                let ty_start = self.pos;
                match self.parse_declarators(&mods.anns, open + 1, ty_start, ty_end, DeclKind::Local, StatementHost::NotExtractable, Some(close))? {
                    true => after_init = self.pos,
                    false => {
                        self.rollback(&snap);
                    }
                }
            } else {
                self.rollback(&snap);
            }
        } else {
            self.rollback(&snap);
        }
        // remaining header sections
        let mut lo = after_init;
        while lo < close {
            let mut nested = Vec::new();
            let end = self.scan_expression(lo, close, false, &mut nested)?;
            if end.idx > lo && !end.malformed {
                self.extract_calls(&ExprRange { lo, hi: end.idx, nested }, header, StatementHost::NotExtractable, None);
            }
            lo = end.idx.max(lo) + 1;
        }
        self.pos = close + 1;
        self.parse_statement(false)?;
        let end = self.end_of(self.pos.saturating_sub(1));
        for d in &mut self.decls[decl_mark..] {
            if d.kind == DeclKind::Local && d.scope.end == OPEN_SCOPE {
                d.scope = Span::new(header.start, end);
            }
        }
        Ok(())
    }

    fn parse_try(&mut self, start: usize) -> Result<(), usize> {
        self.pos += 1;
        let decl_mark = self.decls.len();
        if self.is_punct(self.pos, "(") {
            let open = self.pos;
            let Some(close) = self.partner(open).filter(|&c| c > open) else {
                self.skip_as_gap(start);
                return Ok(());
            };
            let mut i = open + 1;
            while i < close {
                self.pos = i;
                let snap = self.snapshot();
                let mods = self.parse_modifiers(false);
                let ty_start = self.pos;
                let mut parsed = false;
                if let Some(ty_end) = self.parse_type(ty_start).filter(|&e| e < close) {
                    if self.is_ident(ty_end) && self.is_punct(ty_end + 1, "=") {
                        let semi = (ty_end..close).find(|&j| self.is_punct(j, ";")).unwrap_or(close);
                        parsed = self.parse_declarators(&mods.anns, i, ty_start, ty_end, DeclKind::Local, StatementHost::NotExtractable, Some(semi))?;
                        if parsed {
                            i = semi + 1;
                        }
                    }
                }
                if !parsed {
                    self.rollback(&snap);
                    let semi = (i..close).find(|&j| self.is_punct(j, ";")).unwrap_or(close);
                    i = semi + 1;
                }
            }
            self.pos = close + 1;
        }
        if self.is_punct(self.pos, "{") {
            let open = self.pos;
            if let BlockEnd::Abort(at) = self.parse_block(open) {
                return Err(at);
            }
        }
        let end = self.end_of(self.pos.saturating_sub(1));
        for d in &mut self.decls[decl_mark..] {
            if d.scope.end == OPEN_SCOPE {
                d.scope.end = end;
            }
        }
        while self.is_kw(self.pos, "catch") {
            self.pos += 1;
            let mut params = Vec::new();
            if self.is_punct(self.pos, "(") {
                let open = self.pos;
                let Some(close) = self.partner(open).filter(|&c| c > open) else {
                    return Ok(());
                };
                params = self.parse_catch_param(open + 1, close);
                self.pos = close + 1;
            }
            if self.is_punct(self.pos, "{") {
                let open = self.pos;
                if let BlockEnd::Abort(at) = self.parse_block(open) {
                    return Err(at);
                }
            }
            let end = self.end_of(self.pos.saturating_sub(1));
            for i in params {
                self.decls[i].scope.end = end;
            }
        }
        if self.is_kw(self.pos, "finally") {
            self.pos += 1;
            if self.is_punct(self.pos, "{") {
                let open = self.pos;
                if let BlockEnd::Abort(at) = self.parse_block(open) {
                    return Err(at);
                }
            }
        }
        Ok(())
    }

    fn parse_catch_param(&mut self, lo: usize, hi: usize) -> Vec<usize> {
        // `final IOException | RuntimeException e`
        if hi <= lo || !self.is_ident(hi - 1) {
            return Vec::new();
        }
        let name_tok = hi - 1;
        self.pos = lo;
        let mods = self.parse_modifiers(false);
        let ty = self.type_text(self.pos, name_tok);
        let idx = self.decls.len();
        let name_span = self.toks[name_tok].span;
        let span = Span::new(self.start_of(lo), name_span.end);
        self.decls.push(VarDeclaration {
            name: String::from(self.text(name_tok)),
            declared_type_text: ty,
            span,
            pos: self.line_index.pos(self.src, name_span.start),
            name_span,
            declarator_span: name_span,
            initializer_span: None,
            annotations: mods.anns.iter().map(|&i| self.anns[i].clone()).collect(),
            declarator_group_size: 1,
            group_index: 0,
            kind: DeclKind::Parameter,
            scope: Span::new(span.start, OPEN_SCOPE),
        });
        self.set_targets(&mods.anns, AnnotationTarget::Declaration(idx));
        vec![idx]
    }

    fn parse_expression_statement(&mut self, start: usize, host: StatementHost) -> Result<(), usize> {
        let lo = self.pos;
        let mut nested = Vec::new();
        let end = self.scan_expression(lo, usize::MAX, false, &mut nested)?;
        if end.malformed || !self.is_punct(end.idx, ";") {
            // a stray closer is consumed; a block's `}` is left for the block
            let mut stop = end.idx;
            if self.is_punct(stop, ";") || self.is_punct(stop, ")") || self.is_punct(stop, "]") || stop == start {
                stop += 1;
            }
            let stop = stop.min(self.toks.len()).max(start + 1);
            self.gap(self.start_of(start), self.end_of(stop - 1));
            self.pos = stop;
            return Ok(());
        }
        let stmt = Span::new(self.start_of(start), self.end_of(end.idx));
        self.extract_calls(&ExprRange { lo, hi: end.idx, nested }, stmt, host, Some(end.idx));
        self.pos = end.idx + 1;
        Ok(())
    }

    /// Walk an expression from `lo` until a top-level `;` (or `,` when
    /// `stop_on_comma`), a closer that belongs to the outer context, or
    /// `bound`. Lambda block bodies and anonymous class bodies are parsed
    /// recursively and reported in `nested`.
    fn scan_expression(
        &mut self,
        lo: usize,
        bound: usize,
        stop_on_comma: bool,
        nested: &mut Vec<(usize, usize)>,
    ) -> Result<ScanEnd, usize> {
        let mut stack: Vec<(u8, usize)> = Vec::new();
        let mut last_closed_paren: Option<usize> = None;
        let mut i = lo;
        let n = self.toks.len().min(bound);
        while i < n {
            if self.kind(i) != Some(TokenKind::Punct) {
                i += 1;
                continue;
            }
            let t = self.text(i);
            match t {
                ";" => {
                    return Ok(ScanEnd { idx: i, malformed: !stack.is_empty() });
                }
                "," if stack.is_empty() && stop_on_comma => return Ok(ScanEnd { idx: i, malformed: false }),
                "(" | "[" => stack.push((t.as_bytes()[0], i)),
                ")" | "]" => {
                    let want = if t == ")" { b'(' } else { b'[' };
                    match stack.last() {
                        None => return Ok(ScanEnd { idx: i, malformed: false }),
                        Some(&(k, open)) if k == want => {
                            stack.pop();
                            if t == ")" {
                                last_closed_paren = Some(open);
                            }
                        }
                        Some(_) => return Ok(ScanEnd { idx: i, malformed: true }),
                    }
                }
                "}" => match stack.last() {
                    None => return Ok(ScanEnd { idx: i, malformed: false }),
                    Some(&(b'{', _)) => {
                        stack.pop();
                    }
                    Some(_) => return Ok(ScanEnd { idx: i, malformed: true }),
                },
                "{" => {
                    let prev_is_arrow = i > lo && self.is_punct(i - 1, "->");
                    let after_paren = i > lo && self.is_punct(i - 1, ")");
                    let anon = after_paren && last_closed_paren.is_some_and(|o| self.preceded_by_new(o));
                    let switch_body = after_paren && last_closed_paren.is_some_and(|o| o > 0 && self.is_kw(o - 1, "switch"));
                    if prev_is_arrow || switch_body {
                        let depth_ok = self.depth < MAX_DEPTH;
                        match self.parse_block(i) {
                            BlockEnd::Closed(_) => {}
                            BlockEnd::Eof => {
                                nested.push((i, self.toks.len()));
                                return Ok(ScanEnd { idx: self.toks.len(), malformed: true });
                            }
                            BlockEnd::Abort(at) => {
                                if depth_ok {
                                    return Err(at);
                                }
                            }
                        }
                        nested.push((i, self.pos));
                        i = self.pos;
                        continue;
                    }
                    if anon {
                        self.parse_class_body(i, false);
                        nested.push((i, self.pos));
                        i = self.pos;
                        continue;
                    }
                    stack.push((b'{', i));
                }
                _ => {}
            }
            i += 1;
        }
        Ok(ScanEnd { idx: i, malformed: !stack.is_empty() || bound > self.toks.len() || i < bound })
    }

    fn preceded_by_new(&self, open_paren: usize) -> bool {
        let mut j = open_paren;
        let mut steps = 0;
        while j > 0 && steps < 64 {
            j -= 1;
            steps += 1;
            match self.kind(j) {
                Some(TokenKind::Keyword) if self.text(j) == "new" => return true,
                Some(TokenKind::Ident) | Some(TokenKind::At) => {}
                Some(TokenKind::Punct) if matches!(self.text(j), "." | "<" | ">" | "," | "?") => {}
                Some(TokenKind::Keyword) if matches!(self.text(j), "extends" | "super") => {}
                _ => return false,
            }
        }
        false
    }

    // ----- call extraction -----

    fn in_nested(nested: &[(usize, usize)], i: usize) -> Option<usize> {
        nested.iter().find(|&&(a, b)| a <= i && i < b).map(|&(_, b)| b)
    }

    fn extract_calls(&mut self, range: &ExprRange, stmt: Span, host: StatementHost, semi: Option<usize>) {
        let mut i = range.lo;
        while i < range.hi {
            if let Some(skip) = Self::in_nested(&range.nested, i) {
                i = skip;
                continue;
            }
            let is_new = self.is_kw(i, "new");
            let is_call = self.is_ident(i) && self.is_punct(i + 1, "(");
            if is_call {
                let prev_blocks = i > range.lo
                    && (self.is_ident(i - 1) || (self.kind(i - 1) == Some(TokenKind::Keyword) && PRIMITIVES.contains(&self.text(i - 1))));
                let after_new = i > range.lo && self.is_kw(i - 1, "new");
                let qualified_new = self.qualified_type_after_new(i, range.lo);
                if !prev_blocks && !after_new && !qualified_new {
                    self.record_call(range, i, stmt, host, semi);
                }
            } else if is_new {
                self.record_constructor(range, i, stmt, host, semi);
            }
            i += 1;
        }
    }

    /// `new a.b.Foo(`: true when the ident at `i` ends such a type name.
    fn qualified_type_after_new(&self, i: usize, lo: usize) -> bool {
        let mut j = i;
        while j >= lo + 2 && self.is_punct(j - 1, ".") && self.is_ident(j - 2) {
            j -= 2;
        }
        j > lo && j != i && self.is_kw(j - 1, "new")
    }

    fn arguments(&self, open: usize, close: usize) -> Vec<Argument> {
        if close <= open + 1 {
            return Vec::new();
        }
        self.split_commas(open + 1, close, false)
            .into_iter()
            .filter(|&(a, b)| a < b)
            .map(|(a, b)| {
                let span = Span::new(self.start_of(a), self.end_of(b - 1));
                Argument {
                    text: String::from(&self.src[span.start..span.end]),
                    span,
                }
            })
            .collect()
    }

    fn record_call(&mut self, range: &ExprRange, name_tok: usize, stmt: Span, host: StatementHost, semi: Option<usize>) {
        let open = name_tok + 1;
        let Some(close) = self.partner(open).filter(|&c| c > open && c < range.hi) else {
            return;
        };
        let (start_tok, receiver_text) = if name_tok > range.lo && self.is_punct(name_tok - 1, ".") {
            let chain = self.walk_receiver(name_tok - 1, range.lo);
            let text = if chain < name_tok - 1 {
                String::from(self.src[self.start_of(chain)..self.start_of(name_tok - 1)].trim_end())
            } else {
                String::new()
            };
            (chain.min(name_tok), text)
        } else {
            (name_tok, String::new())
        };
        let span = Span::new(self.start_of(start_tok), self.end_of(close));
        let name_span = self.toks[name_tok].span;
        self.calls.push(CallSite {
            method_name: String::from(self.text(name_tok)),
            receiver_text,
            arguments: self.arguments(open, close),
            span,
            pos: self.line_index.pos(self.src, name_span.start),
            name_span,
            qualified_candidates: Vec::new(),
            enclosing_statement_span: stmt,
            host,
            is_expression_statement: semi == Some(close + 1) && start_tok == range.lo && span.start == stmt.start,
        });
    }

    fn record_constructor(&mut self, range: &ExprRange, new_tok: usize, stmt: Span, host: StatementHost, semi: Option<usize>) {
        let mut j = new_tok + 1;
        if !self.is_ident(j) {
            return;
        }
        let mut type_name = String::from(self.text(j));
        let mut last = j;
        j += 1;
        while self.is_punct(j, ".") && self.is_ident(j + 1) {
            type_name.push('.');
            type_name.push_str(self.text(j + 1));
            last = j + 1;
            j += 2;
        }
        if self.is_punct(j, "<") {
            match self.skip_type_args(j) {
                Some(k) => j = k,
                None => return,
            }
        }
        if !self.is_punct(j, "(") {
            return;
        }
        let Some(close) = self.partner(j).filter(|&c| c > j && c < range.hi) else {
            return;
        };
        let span = Span::new(self.start_of(new_tok), self.end_of(close));
        let name_span = self.toks[last].span;
        self.calls.push(CallSite {
            method_name: String::from("<init>"),
            receiver_text: type_name,
            arguments: self.arguments(j, close),
            span,
            pos: self.line_index.pos(self.src, self.start_of(new_tok)),
            name_span,
            qualified_candidates: Vec::new(),
            enclosing_statement_span: stmt,
            host,
            is_expression_statement: semi == Some(close + 1) && new_tok == range.lo && span.start == stmt.start,
        });
    }

    /// Given the index of the `.` before a method name, return the index of
    /// the first token of the receiver chain.
    fn walk_receiver(&self, dot: usize, lo: usize) -> usize {
        let mut j = dot;
        loop {
            if j <= lo {
                return j;
            }
            let mut k = j - 1;
            // skip trailing index expressions: a[0][1]
            while self.is_punct(k, "]") {
                match self.partner(k) {
                    Some(o) if o >= lo && o < k && o > lo => k = o - 1,
                    _ => return j + 1,
                }
            }
            let seg_start = match self.kind(k) {
                Some(TokenKind::Ident) => k,
                Some(TokenKind::Keyword) if matches!(self.text(k), "this" | "super" | "class") => k,
                Some(TokenKind::StringLit) | Some(TokenKind::TextBlock) => return k,
                Some(TokenKind::Punct) if self.text(k) == ")" => {
                    let Some(o) = self.partner(k).filter(|&o| o >= lo && o < k) else {
                        return j + 1;
                    };
                    if o > lo && self.is_ident(o - 1) {
                        o - 1
                    } else if o > lo && self.is_kw(o - 1, "super") || o > lo && self.is_kw(o - 1, "this") {
                        o - 1
                    } else {
                        return o;
                    }
                }
                _ => return j + 1,
            };
            if seg_start > lo && self.is_punct(seg_start - 1, ".") {
                j = seg_start - 1;
                continue;
            }
            if seg_start > lo && self.is_kw(seg_start - 1, "new") {
                return seg_start - 1;
            }
            return seg_start;
        }
    }

    // ----- finish -----

    fn finish(mut self, file_path: &str, all_tokens: Vec<Token>) -> CompilationUnit {
        let len = self.src.len();
        for d in &mut self.decls {
            if d.scope.end == OPEN_SCOPE || d.scope.end > len {
                d.scope.end = len;
            }
        }
        self.gaps.sort();
        let mut merged: Vec<Span> = Vec::with_capacity(self.gaps.len());
        for g in self.gaps {
            match merged.last_mut() {
                Some(last) if g.start <= last.end => last.end = last.end.max(g.end),
                _ => merged.push(g),
            }
        }
        // Anything recorded inside a gap is discarded.
        let in_gap = |s: Span| merged.iter().any(|g| g.contains(s));
        let mut remap = vec![usize::MAX; self.decls.len()];
        let mut decls = Vec::with_capacity(self.decls.len());
        for (i, d) in self.decls.into_iter().enumerate() {
            if !in_gap(d.name_span) {
                remap[i] = decls.len();
                decls.push(d);
            }
        }
        let fix = |t: AnnotationTarget| match t {
            AnnotationTarget::Declaration(i) => match remap.get(i) {
                Some(&j) if j != usize::MAX => AnnotationTarget::Declaration(j),
                _ => AnnotationTarget::Other,
            },
            other => other,
        };
        for d in &mut decls {
            for a in &mut d.annotations {
                a.target = fix(a.target);
            }
        }
        let mut anns: Vec<RawAnnotation> = self.anns.into_iter().filter(|a| !in_gap(a.span)).collect();
        for a in &mut anns {
            a.target = fix(a.target);
        }
        anns.sort_by_key(|a| a.span);
        let mut calls: Vec<CallSite> = self.calls.into_iter().filter(|c| !in_gap(c.span)).collect();
        calls.sort_by_key(|c| (c.name_span, c.span));
        let mut unit = CompilationUnit {
            file_path: String::from(file_path),
            source: String::from(self.src),
            package_name: self.package_name,
            imports: self.imports,
            declarations: decls,
            calls,
            raw_annotations: anns,
            parse_gaps: merged,
            tokens: all_tokens,
            line_index: self.line_index,
        };
        let candidates: Vec<Vec<String>> = unit
            .calls
            .iter()
            .map(|c| super::resolve::resolve_call_candidates(&unit, c, &[]))
            .collect();
        for (c, cands) in unit.calls.iter_mut().zip(candidates) {
            c.qualified_candidates = cands;
        }
        unit
    }
}
