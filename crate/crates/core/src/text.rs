//! Line-based text formats for posets, metrics and finite spaces.
//!
//! ```text
//! # comments run to the end of the line
//! poset vee
//! elem a b c
//! le a c
//! le b c
//! ```
//!
//! ```text
//! metric two
//! point p q
//! dist p q 1/2
//! ```
//!
//! ```text
//! space sierpinski
//! point x y
//! open U x
//! ```
//!
//! The first statement picks the format. `elem` and `point` may repeat.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::constructions::formal_ball::parse_rational;
use crate::constructions::{Rational, RationalMetric};
use crate::finite_space::{FiniteTopSpace, Subset};
use crate::poset::FinitePoset;
use crate::semi_topogenous::SubsetOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: {reason}")]
    Validation { line: usize, reason: String },
}

fn parse_err(line: usize, reason: impl Into<String>) -> TextError {
    TextError::Parse {
        line,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile {
    Poset(FinitePoset),
    Metric(RationalMetric),
    Space(FiniteTopSpace),
}

impl InputFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InputFile::Poset(_) => "poset",
            InputFile::Metric(_) => "metric",
            InputFile::Space(_) => "space",
        }
    }
}

/// Non-blank lines with comments stripped, as `(line number, words)`.
fn statements(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            (!words.is_empty()).then_some((i + 1, words))
        })
        .collect()
}

/// Parses any of the three formats; `default_name` is used when the header
/// line carries no name.
pub fn parse_input(text: &str, default_name: &str) -> Result<InputFile, TextError> {
    let stmts = statements(text);
    let Some((line, head)) = stmts.first() else {
        return Err(parse_err(1, "empty input"));
    };
    if head.len() > 2 {
        return Err(parse_err(*line, "header takes at most one name"));
    }
    let name = head.get(1).copied().unwrap_or(default_name);
    let rest = &stmts[1..];
    match head[0] {
        "poset" => parse_poset_body(name, rest).map(InputFile::Poset),
        "metric" => parse_metric_body(name, rest).map(InputFile::Metric),
        "space" => parse_space_body(name, rest).map(InputFile::Space),
        other => Err(parse_err(
            *line,
            format!("unknown header {other:?}; expected poset, metric or space"),
        )),
    }
}

pub fn read_input_file(path: &Path) -> Result<InputFile, TextError> {
    let text = std::fs::read_to_string(path).map_err(|e| TextError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("input");
    parse_input(&text, stem)
}

pub fn parse_poset(text: &str, default_name: &str) -> Result<FinitePoset, TextError> {
    match parse_input(text, default_name)? {
        InputFile::Poset(p) => Ok(p),
        other => Err(parse_err(1, format!("expected a poset, found a {}", other.kind()))),
    }
}

/// Declared names with their lines; rejects duplicates.
struct Declared<'a> {
    names: Vec<String>,
    seen: HashSet<&'a str>,
}

impl<'a> Declared<'a> {
    fn new() -> Self {
        Self {
            names: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn add(&mut self, line: usize, what: &str, ids: &[&'a str]) -> Result<(), TextError> {
        if ids.is_empty() {
            return Err(parse_err(line, format!("{what} needs at least one name")));
        }
        for &id in ids {
            if !self.seen.insert(id) {
                return Err(TextError::Validation {
                    line,
                    reason: format!("duplicate {what} {id}"),
                });
            }
            self.names.push(id.to_string());
        }
        Ok(())
    }

    fn index(&self, line: usize, what: &str, id: &str) -> Result<usize, TextError> {
        self.names
            .iter()
            .position(|n| n == id)
            .ok_or_else(|| parse_err(line, format!("undeclared {what} {id}")))
    }
}

fn parse_poset_body(name: &str, stmts: &[(usize, Vec<&str>)]) -> Result<FinitePoset, TextError> {
    let mut decl = Declared::new();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (line, words) in stmts {
        let line = *line;
        match words[0] {
            "elem" => decl.add(line, "element", &words[1..])?,
            "le" => {
                if words.len() != 3 {
                    return Err(parse_err(line, "expected: le A B"));
                }
                let a = decl.index(line, "element", words[1])?;
                let b = decl.index(line, "element", words[2])?;
                pairs.push((line, a, b));
            }
            other => return Err(parse_err(line, format!("unknown statement {other:?} in a poset file"))),
        }
    }
    let build = |upto: usize| {
        let ps: Vec<(usize, usize)> = pairs[..upto].iter().map(|&(_, a, b)| (a, b)).collect();
        FinitePoset::from_index_pairs(name, decl.names.clone(), &ps)
    };
    build(pairs.len()).map_err(|e| {
        // report the first `le` line at which the relation stops being a partial order
        let line = (1..=pairs.len())
            .find(|&k| build(k).is_err())
            .map_or(0, |k| pairs[k - 1].0);
        TextError::Validation {
            line,
            reason: e.to_string(),
        }
    })
}

fn parse_metric_body(name: &str, stmts: &[(usize, Vec<&str>)]) -> Result<RationalMetric, TextError> {
    let mut decl = Declared::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    let mut last_line = stmts.first().map_or(1, |s| s.0);
    for (line, words) in stmts {
        let line = *line;
        last_line = line;
        match words[0] {
            "point" => decl.add(line, "point", &words[1..])?,
            "dist" => {
                if words.len() != 4 {
                    return Err(parse_err(line, "expected: dist A B NUM[/DEN]"));
                }
                let a = decl.index(line, "point", words[1])?;
                let b = decl.index(line, "point", words[2])?;
                let d = parse_rational(words[3])
                    .ok_or_else(|| parse_err(line, format!("bad rational {:?}", words[3])))?;
                entries.push((a, b, d));
            }
            other => return Err(parse_err(line, format!("unknown statement {other:?} in a metric file"))),
        }
    }
    RationalMetric::from_entries(name, decl.names, &entries).map_err(|e| TextError::Validation {
        line: last_line,
        reason: e.to_string(),
    })
}

fn parse_space_body(name: &str, stmts: &[(usize, Vec<&str>)]) -> Result<FiniteTopSpace, TextError> {
    let mut decl = Declared::new();
    let mut opens = Vec::new();
    let mut open_names = HashSet::new();
    for (line, words) in stmts {
        let line = *line;
        match words[0] {
            "point" => decl.add(line, "point", &words[1..])?,
            "open" => {
                let Some(open_name) = words.get(1) else {
                    return Err(parse_err(line, "expected: open NAME POINT…"));
                };
                if !open_names.insert(*open_name) {
                    return Err(TextError::Validation {
                        line,
                        reason: format!("duplicate open {open_name}"),
                    });
                }
                let mut s = Subset::EMPTY;
                for id in &words[2..] {
                    s.insert(decl.index(line, "point", id)?);
                }
                opens.push(s);
            }
            other => return Err(parse_err(line, format!("unknown statement {other:?} in a space file"))),
        }
    }
    FiniteTopSpace::from_subbasis(name, decl.names, &opens).map_err(|e| TextError::Validation {
        line: stmts.first().map_or(1, |s| s.0),
        reason: e.to_string(),
    })
}

/// Writes the cover relation, which reads back to the same poset.
pub fn write_poset(poset: &FinitePoset) -> String {
    let mut out = format!("poset {}\n", poset.name());
    if !poset.is_empty() {
        let _ = writeln!(out, "elem {}", poset.elements().join(" "));
    }
    for (a, b) in poset.cover_pairs() {
        let _ = writeln!(out, "le {} {}", poset.element(a), poset.element(b));
    }
    out
}

/// Writes the nonempty basis sets as opens `B0, B1, …`.
pub fn write_space(space: &FiniteTopSpace) -> String {
    let mut out = format!("space {}\n", space.name());
    if !space.is_empty() {
        let _ = writeln!(out, "point {}", space.points().join(" "));
    }
    for (i, &b) in space.basis().iter().enumerate() {
        let pts: Vec<&str> = b.iter().map(|x| space.point(x)).collect();
        let _ = writeln!(out, "open B{i} {}", pts.join(" "));
    }
    out
}

pub fn write_metric(metric: &RationalMetric) -> String {
    let mut out = format!("metric {}\n", metric.name());
    if !metric.is_empty() {
        let _ = writeln!(out, "point {}", metric.points().join(" "));
    }
    for a in 0..metric.len() {
        for b in (a + 1)..metric.len() {
            let _ = writeln!(out, "dist {} {} {}", metric.points()[a], metric.points()[b], metric.d(a, b));
        }
    }
    out
}

/// One `rel {a,b} {a,b,c}` line per related pair.
pub fn write_subset_order(order: &SubsetOrder) -> String {
    let space = order.space();
    order
        .pairs()
        .into_iter()
        .map(|(v, w)| format!("rel {} {}\n", space.format_subset(v), space.format_subset(w)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::samples::*;

    #[test]
    fn chain2_file() {
        let p = parse_poset("# two elements\nposet chain2\nelem x y\nle x y\n", "f").unwrap();
        assert_eq!(p, chain2());
        assert_eq!(parse_poset(&write_poset(&vee()), "f").unwrap(), vee());
    }

    #[test]
    fn undeclared_element_has_line() {
        let err = parse_poset("poset p\nelem x y\n\nle x z\n", "f").unwrap_err();
        assert_eq!(err, parse_err(4, "undeclared element z"));
    }

    #[test]
    fn cycle_is_reported_at_closing_line() {
        let err = parse_poset("poset p\nelem a b c\nle a b\nle b c\nle c a\n", "f").unwrap_err();
        assert!(matches!(err, TextError::Validation { line: 5, .. }), "{err}");
    }

    #[test]
    fn asymmetric_metric() {
        let text = "metric m\npoint p q\ndist p q 1\ndist q p 2\n";
        let err = parse_input(text, "f").unwrap_err();
        match err {
            TextError::Validation { reason, .. } => assert!(reason.contains("asymmetric"), "{reason}"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn metric_round_trip() {
        let m = RationalMetric::uniform(3);
        assert_eq!(parse_input(&write_metric(&m), "x").unwrap(), InputFile::Metric(m));
    }

    #[test]
    fn space_round_trip() {
        let s = FiniteTopSpace::sierpinski();
        let text = "space sierpinski\npoint x y\nopen U x\n";
        let parsed = match parse_input(text, "f").unwrap() {
            InputFile::Space(sp) => sp,
            other => panic!("{other:?}"),
        };
        assert_eq!(parsed, s);
        match parse_input(&write_space(&s), "f").unwrap() {
            InputFile::Space(sp) => assert_eq!(sp.opens(), s.opens()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_header() {
        assert!(matches!(parse_input("graph g\n", "f"), Err(TextError::Parse { line: 1, .. })));
        assert!(matches!(parse_input("# nothing\n", "f"), Err(TextError::Parse { .. })));
    }
}
