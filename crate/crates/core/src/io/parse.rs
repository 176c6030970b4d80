//! The polytope text format.
//!
//! ```text
//! # comment
//! polytope NAME
//! dim N
//! vertices M
//! <M lines of N integers>
//! end
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::exact::{Int, IntVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeEntry {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<IntVector>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolytopeFile {
    pub entries: Vec<PolytopeEntry>,
}

impl PolytopeFile {
    pub fn get(&self, name: &str) -> Option<&PolytopeEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            e.write_text(&mut out);
        }
        out
    }
}

impl PolytopeEntry {
    pub fn write_text(&self, out: &mut String) {
        let _ = writeln!(out, "polytope {}\ndim {}\nvertices {}", self.name, self.dim, self.vertices.len());
        for v in &self.vertices {
            let row: Vec<String> = v.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out.push_str("end\n");
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, reason: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, reason: reason.into() }
    }

    /// Whitespace-separated tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out.into_iter().map(|(s, t)| (self.text[..s].chars().count() + 1, t)).collect()
    }

    /// `keyword value` line; returns the value token and its column.
    fn keyword(&self, keyword: &str) -> Result<(usize, &str), ParseError> {
        let toks = self.tokens();
        match toks.as_slice() {
            [(_, k), (c, v)] if *k == keyword => Ok((*c, v)),
            [(c, k), ..] if *k != keyword => Err(self.error(*c, format!("expected `{keyword}`, found `{k}`"))),
            [(c, _)] => Err(self.error(*c, format!("`{keyword}` needs a value"))),
            [_, _, (c, extra), ..] => Err(self.error(*c, format!("unexpected token `{extra}`"))),
            _ => Err(self.error(1, format!("expected `{keyword}`"))),
        }
    }

    fn count(&self, keyword: &str) -> Result<usize, ParseError> {
        let (c, v) = self.keyword(keyword)?;
        v.parse().map_err(|_| self.error(c, format!("`{v}` is not a non-negative integer")))
    }
}

pub fn parse(contents: &str) -> Result<PolytopeFile, ParseError> {
    let mut lines = contents
        .lines()
        .enumerate()
        .map(|(i, text)| Line { number: i + 1, text })
        .filter(|l| {
            let t = l.text.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
        .peekable();

    let mut entries = Vec::new();
    let mut names = HashSet::new();
    let last_line = contents.lines().count().max(1);

    while let Some(header) = lines.next() {
        let (col, name) = header.keyword("polytope")?;
        if !names.insert(name.to_string()) {
            return Err(header.error(col, format!("duplicate polytope name `{name}`")));
        }
        let next = |lines: &mut std::iter::Peekable<_>, what: &str| -> Result<Line<'_>, ParseError> {
            lines.next().ok_or(ParseError { line: last_line, column: 1, reason: format!("unexpected end of input, expected {what}") })
        };
        let dim = next(&mut lines, "`dim`")?.count("dim")?;
        let count = next(&mut lines, "`vertices`")?.count("vertices")?;
        let mut vertices = Vec::with_capacity(count);
        for _ in 0..count {
            let row = next(&mut lines, "a vertex row")?;
            let toks = row.tokens();
            if toks.first().is_some_and(|(_, t)| *t == "end") {
                return Err(row.error(1, format!("entry `{name}` declares {count} vertices but has {}", vertices.len())));
            }
            if toks.len() != dim {
                let c = toks.get(dim).map_or(1, |(c, _)| *c);
                return Err(row.error(c, format!("row has {} entries, expected {dim}", toks.len())));
            }
            let v: IntVector = toks
                .iter()
                .map(|(c, t)| t.parse::<Int>().map_err(|_| row.error(*c, format!("`{t}` is not an integer"))))
                .collect::<Result<_, _>>()?;
            vertices.push(v);
        }
        let end = next(&mut lines, "`end`")?;
        match end.tokens().as_slice() {
            [(_, "end")] => {}
            [(c, t), ..] => return Err(end.error(*c, format!("expected `end`, found `{t}`"))),
            [] => unreachable!("blank lines are skipped"),
        }
        entries.push(PolytopeEntry { name: name.to_string(), dim, vertices });
    }
    Ok(PolytopeFile { entries })
}
