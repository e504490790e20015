//! Flat `key = value` files holding expected reference results.

use std::collections::BTreeMap;

/// The values shipped with the binary.
pub const BUILTIN: &str = include_str!("../golden/reproduce.txt");

pub type Values = BTreeMap<String, String>;

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<Values, String> {
    let mut out = Values::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected `key = value`", n + 1))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(format!("line {}: duplicate key `{}`", n + 1, k.trim()));
        }
    }
    Ok(out)
}

pub fn render(values: &Values) -> String {
    values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

/// Lines `- key = expected` / `+ key = actual` for every disagreement.
pub fn diff(expected: &Values, actual: &Values) -> Vec<String> {
    let mut keys: Vec<&String> = expected.keys().chain(actual.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = Vec::new();
    for k in keys {
        match (expected.get(k), actual.get(k)) {
            (Some(a), Some(b)) if a == b => {}
            (a, b) => {
                if let Some(a) = a {
                    out.push(format!("- {k} = {a}"));
                }
                if let Some(b) = b {
                    out.push(format!("+ {k} = {b}"));
                }
            }
        }
    }
    out
}
