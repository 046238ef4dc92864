//! Total Java tokenizer. Every input produces a token stream; malformed
//! literals and stray bytes become tokens rather than errors.

use alloc::vec::Vec;

use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    Keyword,
    StringLit,
    TextBlock,
    CharLit,
    Number,
    LineComment,
    BlockComment,
    Punct,
    At,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn text<'a>(&self, src: &'a str) -> &'a str {
        &src[self.span.start..self.span.end]
    }

    pub fn is_comment(&self) -> bool {
        matches!(self.kind, TokenKind::LineComment | TokenKind::BlockComment)
    }
}

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "false", "final", "finally",
    "float", "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "null", "package", "private", "protected", "public", "return", "short",
    "static", "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "true", "try", "void", "volatile", "while",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.binary_search(&word).is_ok()
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_' || b == b'$' || b >= 0x80
}

fn is_ident_continue(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'$' || b >= 0x80
}

const MULTI_PUNCT: &[&[u8]] = &[b"...", b"->", b"::", b"==", b"!=", b"&&", b"||", b"++", b"--"];

pub fn tokenize(src: &str) -> Vec<Token> {
    let bytes = src.as_bytes();
    let mut out = Vec::with_capacity(src.len() / 4);
    let mut i = 0;
    let n = bytes.len();
    while i < n {
        let b = bytes[i];
        if b.is_ascii_whitespace() || b == 0x0c {
            i += 1;
            continue;
        }
        let start = i;
        let kind;
        if b == b'/' && i + 1 < n && bytes[i + 1] == b'/' {
            while i < n && bytes[i] != b'\n' {
                i += 1;
            }
            kind = TokenKind::LineComment;
        } else if b == b'/' && i + 1 < n && bytes[i + 1] == b'*' {
            i += 2;
            loop {
                if i + 1 >= n {
                    i = n;
                    break;
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
            kind = TokenKind::BlockComment;
        } else if b == b'"' && bytes[i..].starts_with(b"\"\"\"") {
            i += 3;
            loop {
                if i >= n {
                    break;
                }
                if bytes[i] == b'\\' {
                    i = (i + 2).min(n);
                    continue;
                }
                if bytes[i..].starts_with(b"\"\"\"") {
                    i += 3;
                    break;
                }
                i += 1;
            }
            kind = TokenKind::TextBlock;
        } else if b == b'"' || b == b'\'' {
            i += 1;
            while i < n && bytes[i] != b'\n' {
                if bytes[i] == b'\\' {
                    i += 1;
                    if i < n && bytes[i] != b'\n' {
                        i += 1;
                    }
                    continue;
                }
                if bytes[i] == b {
                    i += 1;
                    break;
                }
                i += 1;
            }
            kind = if b == b'"' {
                TokenKind::StringLit
            } else {
                TokenKind::CharLit
            };
        } else if b.is_ascii_digit() || (b == b'.' && i + 1 < n && bytes[i + 1].is_ascii_digit()) {
            i += 1;
            while i < n {
                let c = bytes[i];
                if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' {
                    i += 1;
                } else if (c == b'+' || c == b'-')
                    && matches!(bytes[i - 1], b'e' | b'E' | b'p' | b'P')
                    && !bytes[start..i].starts_with(b"0x")
                {
                    i += 1;
                } else {
                    break;
                }
            }
            kind = TokenKind::Number;
        } else if is_ident_start(b) {
            while i < n && is_ident_continue(bytes[i]) {
                i += 1;
            }
            kind = if is_keyword(&src[start..i]) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
        } else if b == b'@' {
            i += 1;
            kind = TokenKind::At;
        } else if b"(){}[];,.<>=!~?:+-*/&|^%".contains(&b) {
            i += MULTI_PUNCT
                .iter()
                .find(|p| bytes[i..].starts_with(p))
                .map_or(1, |p| p.len());
            kind = TokenKind::Punct;
        } else {
            i += 1;
            kind = TokenKind::Unknown;
        }
        out.push(Token {
            kind,
            span: Span::new(start, i),
        });
    }
    out
}

/// Decode the body of a Java string literal token (quotes included).
pub fn unescape_string(lit: &str) -> alloc::string::String {
    let inner = lit.strip_prefix('"').unwrap_or(lit);
    let inner = inner.strip_suffix('"').unwrap_or(inner);
    let mut out = alloc::string::String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('b') => out.push('\u{8}'),
            Some('f') => out.push('\u{c}'),
            Some('s') => out.push(' '),
            Some('0') => out.push('\0'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

pub fn escape_string(value: &str) -> alloc::string::String {
    let mut out = alloc::string::String::with_capacity(value.len() + 2);
    out.push('"');
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}
