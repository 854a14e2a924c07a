use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use super::{LabelId, LabelMetric, ModelError, Mts, StateId};
use crate::lattice::{ParseUnitError, UnitValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based line number, when the error is tied to a line.
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{directive}` expects {expected} fields, found {found}")]
    Arity {
        directive: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Value(#[from] ParseUnitError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn at(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError {
        line: Some(line),
        kind: kind.into(),
    }
}

/// Parses the line-oriented model format.
///
/// ```text
/// states: x y
/// alphabet: a b
/// metric: a b 1/2
/// trans: x a y
/// ```
pub fn parse_mts(text: &str) -> Result<Mts, ParseError> {
    let mut states: Vec<String> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut metric_lines: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut trans_lines: Vec<(usize, Vec<&str>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (directive, rest) = content
            .split_once(':')
            .ok_or_else(|| at(line, ParseErrorKind::UnknownDirective(content.to_string())))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match directive.trim() {
            "states" => {
                for f in fields {
                    if states.iter().any(|s| s == f) {
                        return Err(at(line, ModelError::DuplicateState(f.to_string())));
                    }
                    states.push(f.to_string());
                }
            }
            "alphabet" => {
                for f in fields {
                    if labels.iter().any(|s| s == f) {
                        return Err(at(line, ModelError::DuplicateLabel(f.to_string())));
                    }
                    labels.push(f.to_string());
                }
            }
            "metric" => metric_lines.push((line, arity(line, "metric", fields, 3)?)),
            "trans" => trans_lines.push((line, arity(line, "trans", fields, 3)?)),
            other => {
                return Err(at(
                    line,
                    ParseErrorKind::UnknownDirective(other.to_string()),
                ))
            }
        }
    }

    let state_ix: HashMap<&str, StateId> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), StateId(i)))
        .collect();
    let label_ix: HashMap<&str, LabelId> = labels
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), LabelId(i)))
        .collect();
    let sid = |line: usize, n: &str| {
        state_ix
            .get(n)
            .copied()
            .ok_or_else(|| at(line, ModelError::UnknownState(n.to_string())))
    };
    let lid = |line: usize, n: &str| {
        label_ix
            .get(n)
            .copied()
            .ok_or_else(|| at(line, ModelError::UnknownLabel(n.to_string())))
    };

    let mut metric = LabelMetric::discrete(labels.len());
    let mut given: HashMap<(LabelId, LabelId), UnitValue> = HashMap::new();
    for (line, f) in &metric_lines {
        let (a, b) = (lid(*line, f[0])?, lid(*line, f[1])?);
        let v: UnitValue = f[2].parse().map_err(|e: ParseUnitError| at(*line, e))?;
        if a == b {
            // self-distance is always 0
            continue;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&old) = given.get(&key) {
            if old != v {
                return Err(at(
                    *line,
                    ModelError::ConflictingEntry(f[0].to_string(), f[1].to_string(), old, v),
                ));
            }
        }
        given.insert(key, v);
        metric.set(a, b, v);
    }

    let mut transitions = Vec::with_capacity(trans_lines.len());
    for (line, f) in &trans_lines {
        transitions.push((sid(*line, f[0])?, lid(*line, f[1])?, sid(*line, f[2])?));
    }

    Mts::new(states, labels, metric, transitions).map_err(|e| ParseError {
        line: None,
        kind: e.into(),
    })
}

fn arity<'a>(
    line: usize,
    directive: &'static str,
    fields: Vec<&'a str>,
    expected: usize,
) -> Result<Vec<&'a str>, ParseError> {
    if fields.len() != expected {
        return Err(at(
            line,
            ParseErrorKind::Arity {
                directive,
                expected,
                found: fields.len(),
            },
        ));
    }
    Ok(fields)
}

/// Canonical text form: every off-diagonal metric entry that differs from 1 is
/// listed once, transitions in source order. `parse_mts` inverts it.
pub fn to_text(m: &Mts) -> String {
    let mut out = String::new();
    writeln!(out, "states: {}", m.state_names().join(" ")).unwrap();
    writeln!(out, "alphabet: {}", m.label_names().join(" ")).unwrap();
    for a in m.labels() {
        for b in m.labels().filter(|&b| b > a) {
            let v = m.d(a, b);
            if !v.is_one() {
                writeln!(out, "metric: {} {} {}", m.label_name(a), m.label_name(b), v).unwrap();
            }
        }
    }
    for (s, a, t) in m.transitions() {
        writeln!(
            out,
            "trans: {} {} {}",
            m.state_name(s),
            m.label_name(a),
            m.state_name(t)
        )
        .unwrap();
    }
    out
}
