//! Import-level name resolution. There is no classpath: a receiver's type
//! is known only when its declaration or the receiver text itself names a
//! type that the imports pin down.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CallSite, CompilationUnit, DeclKind, VarDeclaration};

/// `java.util.Map<String, Integer>[]` → `Map`.
pub fn simple_type_name(type_text: &str) -> &str {
    let base = erase_type(type_text);
    base.rsplit('.').next().unwrap_or(base)
}

/// Strip type arguments, array dimensions and varargs.
fn erase_type(type_text: &str) -> &str {
    let t = type_text.trim();
    let t = match t.find('<') {
        Some(i) => &t[..i],
        None => t,
    };
    let t = match t.find('[') {
        Some(i) => &t[..i],
        None => t,
    };
    t.trim_end_matches("...").trim()
}

/// Innermost declaration of `name` visible at `offset`.
pub fn declaration_in_scope<'u>(unit: &'u CompilationUnit, name: &str, offset: usize) -> Option<&'u VarDeclaration> {
    unit.declarations
        .iter()
        .filter(|d| d.name == name && d.scope.start <= offset && offset <= d.scope.end)
        .filter(|d| d.kind == DeclKind::Field || d.name_span.start <= offset)
        .max_by_key(|d| (d.scope.start, core::cmp::Reverse(d.scope.end)))
}

fn is_simple_name(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

fn is_dotted_name(text: &str) -> bool {
    !text.is_empty() && text.split('.').all(is_simple_name)
}

/// Resolve a type as written in this unit to candidate qualified names.
pub(crate) fn resolve_type(unit: &CompilationUnit, type_text: &str, known_packages: &[String]) -> Vec<String> {
    let base = erase_type(type_text);
    if !is_dotted_name(base) {
        return Vec::new();
    }
    let (first, rest) = match base.find('.') {
        Some(i) => (&base[..i], &base[i..]),
        None => (base, ""),
    };
    if first.starts_with(|c: char| c.is_lowercase()) {
        // already qualified
        return if rest.is_empty() { Vec::new() } else { alloc::vec![String::from(base)] };
    }
    let mut out = Vec::new();
    for imp in unit.imports.iter().filter(|i| !i.is_static && !i.wildcard) {
        if imp.qualified_name.rsplit('.').next() == Some(first) {
            out.push(format!("{}{}", imp.qualified_name, rest));
        }
    }
    if out.is_empty() {
        for imp in unit.imports.iter().filter(|i| !i.is_static && i.wildcard) {
            if known_packages.iter().any(|p| *p == imp.qualified_name) {
                out.push(format!("{}.{}{}", imp.qualified_name, first, rest));
            }
        }
        if known_packages.iter().any(|p| p == "java.lang") {
            out.push(format!("java.lang.{first}{rest}"));
        }
    }
    out
}

/// `((LocationManager) ctx.getSystemService(..))` → `LocationManager`.
fn cast_type(receiver: &str) -> Option<&str> {
    let inner = receiver.trim().strip_prefix('(')?.strip_suffix(')')?.trim();
    let after = inner.strip_prefix('(')?;
    let close = after.find(')')?;
    let ty = after[..close].trim();
    if is_dotted_name(erase_type(ty)) && !after[close + 1..].trim().is_empty() {
        Some(ty)
    } else {
        None
    }
}

/// Qualified method names the call may refer to, sorted and deduplicated.
/// `known_packages` lists packages for which wildcard imports are expanded.
pub fn resolve_call_candidates(unit: &CompilationUnit, call: &CallSite, known_packages: &[String]) -> Vec<String> {
    let method = call.method_name.as_str();
    let receiver = call.receiver_text.trim();
    let mut types: Vec<String> = Vec::new();
    let mut out: Vec<String> = Vec::new();
    if method == "<init>" {
        types = resolve_type(unit, receiver, known_packages);
    } else if receiver.is_empty() {
        for imp in unit.imports.iter().filter(|i| i.is_static) {
            if imp.wildcard {
                out.push(format!("{}.{method}", imp.qualified_name));
            } else if imp.qualified_name.rsplit('.').next() == Some(method) {
                out.push(imp.qualified_name.clone());
            }
        }
        // A wildcard static import only counts when nothing more specific
        // names the method.
        if out.len() > 1 {
            let exact: Vec<String> = unit
                .imports
                .iter()
                .filter(|i| i.is_static && !i.wildcard && i.qualified_name.rsplit('.').next() == Some(method))
                .map(|i| i.qualified_name.clone())
                .collect();
            if !exact.is_empty() {
                out = exact;
            }
        }
    } else if let Some(ty) = cast_type(receiver) {
        types = resolve_type(unit, ty, known_packages);
    } else if is_dotted_name(receiver) {
        let name = receiver.strip_prefix("this.").unwrap_or(receiver);
        let (head, tail) = match name.find('.') {
            Some(i) => (&name[..i], &name[i + 1..]),
            None => (name, ""),
        };
        let decl = if receiver.starts_with("this.") {
            unit.declarations
                .iter()
                .filter(|d| d.kind == DeclKind::Field && d.name == head && d.scope.contains_offset(call.span.start))
                .max_by_key(|d| d.scope.start)
        } else {
            declaration_in_scope(unit, head, call.span.start)
        };
        match decl {
            Some(d) if tail.is_empty() => types = resolve_type(unit, &d.declared_type_text, known_packages),
            Some(_) => {}
            None => {
                if head.starts_with(|c: char| c.is_uppercase()) || name.contains('.') {
                    types = resolve_type(unit, name, known_packages);
                }
            }
        }
    }
    for t in types {
        out.push(format!("{t}.{method}"));
    }
    out.sort();
    out.dedup();
    out
}

/// The declaration to annotate for a call, if the call already has one:
/// first a declaration whose initializer contains the call, then the local
/// or field named by the first simple-name argument that has one.
/// Parameters are not returned.
pub fn find_covering_declaration<'u>(unit: &'u CompilationUnit, call: &CallSite) -> Option<&'u VarDeclaration> {
    let by_initializer = unit
        .declarations
        .iter()
        .filter(|d| d.initializer_span.is_some_and(|s| s.contains(call.span)))
        .min_by_key(|d| d.initializer_span.map(|s| s.len()));
    if by_initializer.is_some() {
        return by_initializer;
    }
    call.arguments
        .iter()
        .filter(|a| is_simple_name(&a.text))
        .filter_map(|a| declaration_in_scope(unit, &a.text, call.span.start))
        .find(|d| d.kind != DeclKind::Parameter)
}
