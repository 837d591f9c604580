//! Checked-in transcription of the classification table and the comparison
//! against computed records.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{ClassificationRecord, Status, SystemId, SystemsError};
use crate::events::{format_signature, EvenEvent, SymmetryOp};

pub const GOLDEN_TABLE2: &str = include_str!("../../data/table2.golden");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRow {
    pub line: usize,
    pub system: SystemId,
    pub status: Status,
    pub event: EvenEvent,
    pub signature: BTreeSet<SymmetryOp>,
}

/// Splits `(A,D), (1,2)` on commas outside parentheses.
fn split_ops(inner: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(inner[start..].trim());
    parts.into_iter().filter(|p| !p.is_empty()).collect()
}

pub fn parse_signature(s: &str) -> Result<BTreeSet<SymmetryOp>, String> {
    let inner = s
        .trim()
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| format!("signature {s:?} is not wrapped in <...>"))?;
    split_ops(inner)
        .into_iter()
        .map(|p| p.parse::<SymmetryOp>().map_err(|e| e.to_string()))
        .collect()
}

/// Parses `system | status | short | expanded | symmetries` lines. Blank lines
/// and `#` comments are skipped. The short and expanded columns must name the
/// same event.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>, SystemsError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fail = |reason: String| SystemsError::Golden { line, reason };
        let cols: Vec<&str> = body.split('|').map(str::trim).collect();
        let [system, status, short, expanded, signature] = cols.as_slice() else {
            return Err(fail(format!("expected 5 columns, got {}", cols.len())));
        };
        let system = SystemId::from_name(system).ok_or_else(|| fail(format!("unknown system {system:?}")))?;
        let status = match *status {
            "regular" => Status::Regular,
            "anti" => Status::Anti,
            other => return Err(fail(format!("unknown status {other:?}"))),
        };
        let event: EvenEvent = short.parse().map_err(|e| fail(format!("{e}")))?;
        let spelled: EvenEvent = expanded.parse().map_err(|e| fail(format!("{e}")))?;
        if event != spelled {
            return Err(fail(format!("{short} and {expanded} are different events")));
        }
        let signature = parse_signature(signature).map_err(fail)?;
        rows.push(GoldenRow { line, system, status, event, signature });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenMismatch {
    Missing { event: String },
    Unexpected { event: String },
    Differs { event: String, expected: String, actual: String },
}

impl fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldenMismatch::Missing { event } => write!(f, "{event}: in golden table, not computed"),
            GoldenMismatch::Unexpected { event } => write!(f, "{event}: computed, not in golden table"),
            GoldenMismatch::Differs { event, expected, actual } => {
                write!(f, "{event}: expected {expected}, got {actual}")
            }
        }
    }
}

fn describe(system: SystemId, status: Status, signature: &BTreeSet<SymmetryOp>) -> String {
    format!("{system} {status} {}", format_signature(signature))
}

/// Compares computed records against golden rows; empty means exact agreement.
pub fn golden_check(records: &[ClassificationRecord], golden: &[GoldenRow]) -> Vec<GoldenMismatch> {
    let expected: BTreeMap<EvenEvent, String> = golden
        .iter()
        .map(|g| (g.event, describe(g.system, g.status, &g.signature)))
        .collect();
    let actual: BTreeMap<EvenEvent, String> = records
        .iter()
        .map(|r| (r.event, describe(r.system, r.status, &r.signature)))
        .collect();
    let mut out = Vec::new();
    if expected.len() != golden.len() {
        out.push(GoldenMismatch::Differs {
            event: "<table>".into(),
            expected: "distinct golden rows".into(),
            actual: format!("{} rows for {} events", golden.len(), expected.len()),
        });
    }
    for (event, want) in &expected {
        match actual.get(event) {
            None => out.push(GoldenMismatch::Missing { event: event.short() }),
            Some(got) if got != want => out.push(GoldenMismatch::Differs {
                event: event.short(),
                expected: want.clone(),
                actual: got.clone(),
            }),
            Some(_) => {}
        }
    }
    for event in actual.keys().filter(|e| !expected.contains_key(e)) {
        out.push(GoldenMismatch::Unexpected { event: event.short() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::table2;

    #[test]
    fn golden_file_parses_to_18_rows() {
        let rows = parse_golden(GOLDEN_TABLE2).unwrap();
        assert_eq!(rows.len(), 18);
    }

    #[test]
    fn computed_table_matches_golden() {
        let rows = parse_golden(GOLDEN_TABLE2).unwrap();
        let mismatches = golden_check(&table2(), &rows);
        assert!(mismatches.is_empty(), "{mismatches:?}");
    }

    #[test]
    fn detects_tampering() {
        let tampered = GOLDEN_TABLE2.replace(
            "QI | regular | X(1,2)+X(2,1) | A(1)D(2)+A(2)D(1) | <(A,D), (1,2)>",
            "QI | anti    | X(1,2)+X(2,1) | A(1)D(2)+A(2)D(1) | <(A,D), (1,2)>",
        );
        let rows = parse_golden(&tampered).unwrap();
        let mismatches = golden_check(&table2(), &rows);
        assert_eq!(mismatches.len(), 1);
        assert!(matches!(&mismatches[0], GoldenMismatch::Differs { event, .. } if event == "X(1,2)+X(2,1)"));
    }

    #[test]
    fn rejects_inconsistent_short_and_expanded() {
        let bad = "RI | anti | E(1,2)+Y(1,2) | A(1)B(2)+C(1)D(2) | <(A,C)∩(B,D)>";
        assert!(matches!(parse_golden(bad), Err(SystemsError::Golden { line: 1, .. })));
    }

    #[test]
    fn signature_parsing() {
        let s = parse_signature("<(A,D), (1,2)>").unwrap();
        assert_eq!(format_signature(&s), "<(A,D), (1,2)>");
        assert!(parse_signature("(A,D)").is_err());
    }
}
