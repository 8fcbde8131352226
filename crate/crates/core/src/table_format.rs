//! Line-oriented monoid table files.
//!
//! ```text
//! # the Sierpinski monoid
//! elements: 1 0
//! identity: 1
//! table:
//! 1 0
//! 0 0
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result, TableParseError};
use crate::monoid::{validate_monoid, FiniteMonoid};

fn err(line: usize, message: impl Into<String>) -> Error {
    TableParseError { line, message: message.into() }.into()
}

pub fn parse_table(text: &str) -> Result<FiniteMonoid> {
    let mut elements: Option<Vec<String>> = None;
    let mut identity: Option<(usize, String)> = None;
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    let mut in_table = false;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if elements.is_some() {
                return Err(err(line_no, "duplicate `elements:` line"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(err(line_no, "`elements:` lists no elements"));
            }
            elements = Some(names);
            in_table = false;
        } else if let Some(rest) = line.strip_prefix("identity:") {
            let mut it = rest.split_whitespace();
            let name = it.next().ok_or_else(|| err(line_no, "`identity:` names no element"))?;
            if it.next().is_some() {
                return Err(err(line_no, "`identity:` takes exactly one element"));
            }
            identity = Some((line_no, name.to_string()));
            in_table = false;
        } else if let Some(rest) = line.strip_prefix("table:") {
            in_table = true;
            if !rest.trim().is_empty() {
                rows.push((line_no, rest.split_whitespace().map(str::to_string).collect()));
            }
        } else if in_table {
            rows.push((line_no, line.split_whitespace().map(str::to_string).collect()));
        } else {
            return Err(err(line_no, format!("unexpected line `{line}`")));
        }
    }

    let last = text.lines().count().max(1);
    let names = elements.ok_or_else(|| err(last, "missing `elements:` line"))?;
    let (id_line, id_name) = identity.ok_or_else(|| err(last, "missing `identity:` line"))?;
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != names.len() {
        return Err(err(last, "duplicate element names in `elements:`"));
    }
    let id = *index.get(id_name.as_str()).ok_or_else(|| err(id_line, format!("unknown element `{id_name}`")))?;
    if rows.len() != names.len() {
        return Err(err(last, format!("table has {} rows, expected {}", rows.len(), names.len())));
    }
    let mut table = Vec::with_capacity(rows.len());
    for (line_no, row) in rows {
        if row.len() != names.len() {
            return Err(err(line_no, format!("row has {} entries, expected {}", row.len(), names.len())));
        }
        let parsed = row
            .iter()
            .map(|n| index.get(n.as_str()).copied().ok_or_else(|| err(line_no, format!("unknown element `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        table.push(parsed);
    }
    Ok(validate_monoid(table, id, Some(names))?)
}

pub fn write_table(m: &FiniteMonoid) -> String {
    let mut out = String::new();
    out.push_str(&format!("elements: {}\n", m.names().join(" ")));
    out.push_str(&format!("identity: {}\n", m.name(m.identity())));
    out.push_str("table:\n");
    for a in m.elements() {
        let row: Vec<&str> = m.elements().map(|b| m.name(m.mul(a, b))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::I_ZERO;

    #[test]
    fn parses_sierpinski_with_identity_last() {
        let m = parse_table("# I\nelements: 0 1\nidentity: 1\ntable:\n0 0\n0 1\n").unwrap();
        assert_eq!(m, FiniteMonoid::sierpinski());
        assert_eq!(m.name(I_ZERO), "0");
    }

    #[test]
    fn round_trip() {
        let m = FiniteMonoid::cyclic(2, 3);
        assert_eq!(parse_table(&write_table(&m)).unwrap(), m);
    }

    #[test]
    fn reports_lines() {
        let e = parse_table("elements: a b\nidentity: a\ntable:\na b\nb q\n").unwrap_err();
        assert_eq!(e.to_string(), "line 5: unknown element `q`");
        let e = parse_table("elements: a b\nidentity: c\ntable:\na b\nb a\n").unwrap_err();
        assert!(e.to_string().starts_with("line 2"));
        let e = parse_table("elements: a b\nidentity: a\ntable:\na b\n").unwrap_err();
        assert!(e.to_string().contains("1 rows"));
    }

    #[test]
    fn law_violations_surface() {
        let e = parse_table("elements: a b\nidentity: a\ntable:\na b\na b\n").unwrap_err();
        assert!(matches!(e, Error::Monoid(_)));
    }
}
