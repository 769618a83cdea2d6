//! Minimal N-Triples tokenizer.
//!
//! Subjects and objects become vertex names: IRIs without their angle
//! brackets, blank nodes as written (`_:b0`), literals with their quotes and
//! any `@lang` / `^^<type>` suffix. Predicates become labels named by their
//! local part, the text after the last `#` or `/`, so
//! `<http://www.w3.org/2000/01/rdf-schema#subClassOf>` is `subClassOf`.
//! No RDF semantics beyond that.

use super::{insert_with_inverse, DataGraph, GraphError};

fn split_term(s: &str) -> Result<(&str, &str), String> {
    let s = s.trim_start();
    let bytes = s.as_bytes();
    match bytes.first() {
        Some(b'<') => {
            let end = s.find('>').ok_or("unterminated IRI")?;
            Ok((&s[1..end], &s[end + 1..]))
        }
        Some(b'_') if s.starts_with("_:") => {
            let end = s.find(|c: char| c.is_whitespace()).unwrap_or(s.len());
            Ok((&s[..end], &s[end..]))
        }
        Some(b'"') => {
            let mut i = 1;
            while i < bytes.len() {
                match bytes[i] {
                    b'\\' => i += 2,
                    b'"' => break,
                    _ => i += 1,
                }
            }
            if i >= bytes.len() {
                return Err("unterminated literal".into());
            }
            let mut end = i + 1;
            if s[end..].starts_with("^^<") {
                end += s[end..].find('>').ok_or("unterminated datatype IRI")? + 1;
            } else if s[end..].starts_with('@') {
                end += s[end..]
                    .find(|c: char| c.is_whitespace())
                    .unwrap_or(s.len() - end);
            }
            Ok((&s[..end], &s[end..]))
        }
        _ => Err(format!("unexpected term start in `{s}`")),
    }
}

fn local_name(iri: &str) -> &str {
    iri.rsplit(['#', '/'])
        .find(|p| !p.is_empty())
        .unwrap_or(iri)
}

/// Loads N-Triples, optionally materializing `p^-1` inverse edges as
/// [`super::load_triples`] does.
pub fn load_ntriples(text: &str, add_inverses: bool) -> Result<DataGraph, GraphError> {
    let mut g = DataGraph::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| GraphError::MalformedStatement {
            line: i + 1,
            reason,
        };
        let (subject, rest) = split_term(line).map_err(err)?;
        let (predicate, rest) = split_term(rest).map_err(err)?;
        let (object, rest) = split_term(rest).map_err(err)?;
        if rest.trim() != "." {
            return Err(err(format!(
                "expected `.` after object, found `{}`",
                rest.trim()
            )));
        }
        insert_with_inverse(&mut g, subject, local_name(predicate), object, add_inverses);
    }
    Ok(g)
}
