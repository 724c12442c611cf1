//! Plain-text diagram and triangle files.
//!
//! ```text
//! diagram
//! source.type: A
//! source.n0: 2
//! source.prefix:
//! source.tail: periodic (2,0,0)
//! target.type: A
//! ...
//! level 0 2 4 4 2
//! ```

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::triangle::recompute_eps;
use super::{DiagramLevel, EmbeddingDiagram, Triangle, TriangleMode};
use crate::exhaustions::format::{parse_descriptor_lines, parse_rational_at};
use crate::text::{content_lines, split_key, ParseError, Scanner};

impl fmt::Display for EmbeddingDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "diagram")?;
        for (side, d) in [("source", &self.source), ("target", &self.target)] {
            for line in d.to_string().lines() {
                writeln!(f, "{side}.{line}")?;
            }
        }
        for lv in &self.levels {
            writeln!(f, "level {} {} {} {} {}", lv.i, lv.k, lv.x, lv.y, lv.u)?;
        }
        Ok(())
    }
}

fn header<'a>(
    lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, &'a str)>>,
    word: &str,
) -> Result<(), ParseError> {
    match lines.next() {
        Some((_, content)) if content.trim() == word => Ok(()),
        Some((line, _)) => Err(ParseError::new(line, 1, format!("expected header '{word}'"))),
        None => Err(ParseError::new(1, 1, format!("empty input, expected '{word}'"))),
    }
}

/// Replaces the `side.` prefix of a key by spaces so columns stay put.
fn strip_side(lines: &[(usize, &str)], side: &str) -> Vec<(usize, String)> {
    lines
        .iter()
        .filter_map(|&(line, content)| {
            let lead = content.len() - content.trim_start().len();
            let rest = &content[lead..];
            rest.strip_prefix(side).and_then(|r| r.strip_prefix('.')).map(|r| {
                (line, format!("{}{}", " ".repeat(lead + side.len() + 1), r))
            })
        })
        .collect()
}

pub fn parse_diagram(src: &str) -> Result<EmbeddingDiagram, ParseError> {
    let mut lines = content_lines(src).peekable();
    header(&mut lines, "diagram")?;
    let mut keyed = Vec::new();
    let mut levels = Vec::new();
    for (line, content) in lines {
        let trimmed = content.trim_start();
        if trimmed.starts_with("level") && !trimmed.starts_with("level:") {
            let mut sc = Scanner::new(content, line, 1);
            if !sc.eat_keyword("level") {
                return Err(sc.error("expected 'level'"));
            }
            let i = sc.natural()? as usize;
            let k = sc.natural()? as usize;
            let x = sc.big_natural()?;
            let y = sc.big_natural()?;
            let u = sc.big_natural()?;
            sc.finish()?;
            levels.push(DiagramLevel { i, k, x, y, u });
        } else if trimmed.starts_with("source.") || trimmed.starts_with("target.") {
            if !levels.is_empty() {
                return Err(ParseError::new(line, 1, "descriptor keys must precede level lines"));
            }
            keyed.push((line, content));
        } else {
            return Err(ParseError::new(
                line,
                1,
                "expected 'source.<key>: ...', 'target.<key>: ...' or 'level i k x y u'",
            ));
        }
    }
    let end = keyed.last().map_or(1, |e| e.0);
    let side = |name: &str| -> Result<_, ParseError> {
        let stripped = strip_side(&keyed, name);
        if stripped.is_empty() {
            return Err(ParseError::new(end, 1, format!("missing {name} descriptor")));
        }
        parse_descriptor_lines(stripped.iter().map(|(l, s)| (*l, s.as_str())))
    };
    Ok(EmbeddingDiagram {
        source: side("source")?,
        target: side("target")?,
        levels,
    })
}

impl std::str::FromStr for EmbeddingDiagram {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_diagram(s)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triangle")?;
        writeln!(f, "q: {}", self.q)?;
        let mode = match self.mode {
            TriangleMode::General => "general",
            TriangleMode::Constant => "constant",
        };
        writeln!(f, "mode: {mode}")?;
        for (k, n) in self.group_sizes.iter().enumerate() {
            writeln!(f, "n {}: {n}", k + 1)?;
        }
        for (k, l) in self.group_bounds.iter().enumerate() {
            writeln!(f, "l {}: {l}", k + 1)?;
        }
        for (k, row) in self.rows.iter().enumerate() {
            let entries: Vec<String> = row.iter().map(|a| a.to_string()).collect();
            writeln!(f, "row {k}: {}", entries.join(" "))?;
        }
        for (k, b) in self.b.iter().enumerate() {
            writeln!(f, "b {}: {b}", k + 1)?;
        }
        Ok(())
    }
}

/// `name index` keys, with indices required to run 0.. or 1.. in order.
fn indexed_key(key: &str, name: &str) -> Option<Result<usize, ()>> {
    let rest = key.strip_prefix(name)?;
    if !rest.starts_with(' ') {
        return None;
    }
    Some(rest.trim().parse::<usize>().map_err(|_| ()))
}

pub fn parse_triangle(src: &str) -> Result<Triangle, ParseError> {
    let mut lines = content_lines(src).peekable();
    header(&mut lines, "triangle")?;
    let mut q = None;
    let mut mode = None;
    let mut group_sizes: Vec<BigUint> = Vec::new();
    let mut group_bounds: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigUint>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();
    let mut last = 1;
    for (line, content) in lines {
        last = line;
        let (key, value, column) =
            split_key(content).ok_or_else(|| ParseError::new(line, 1, "expected 'key: value'"))?;
        let mut sc = Scanner::new(value, line, column);
        let order = |got: usize, want: usize, what: &str| {
            if got == want {
                Ok(())
            } else {
                Err(ParseError::new(line, 1, format!("expected {what} {want}, found {got}")))
            }
        };
        let bad_index = || ParseError::new(line, 1, format!("malformed index in '{key}'"));
        if key == "q" {
            q = Some(sc.natural()?);
            sc.finish()?;
        } else if key == "mode" {
            mode = Some(match sc.identifier() {
                Some("general") => TriangleMode::General,
                Some("constant") => TriangleMode::Constant,
                _ => return Err(sc.error("expected 'general' or 'constant'")),
            });
            sc.finish()?;
        } else if let Some(idx) = indexed_key(key, "n") {
            order(idx.map_err(|_| bad_index())?, group_sizes.len() + 1, "n")?;
            group_sizes.push(sc.big_natural()?);
            sc.finish()?;
        } else if let Some(idx) = indexed_key(key, "l") {
            order(idx.map_err(|_| bad_index())?, group_bounds.len() + 1, "l")?;
            group_bounds.push(sc.natural()? as usize);
            sc.finish()?;
        } else if let Some(idx) = indexed_key(key, "row") {
            order(idx.map_err(|_| bad_index())?, rows.len(), "row")?;
            let mut row = Vec::new();
            while !sc.at_end() {
                row.push(sc.big_natural()?);
            }
            rows.push(row);
        } else if let Some(idx) = indexed_key(key, "b") {
            order(idx.map_err(|_| bad_index())?, b.len() + 1, "b")?;
            b.push(parse_rational_at(value, line, column)?);
        } else {
            return Err(ParseError::new(line, 1, format!("unknown key '{key}'")));
        }
    }
    let q = q.ok_or_else(|| ParseError::new(last, 1, "missing key 'q'"))?;
    let mode = mode.ok_or_else(|| ParseError::new(last, 1, "missing key 'mode'"))?;
    if rows.is_empty() {
        return Err(ParseError::new(last, 1, "missing 'row 0'"));
    }
    let eps = match mode {
        TriangleMode::General if q >= 4 => recompute_eps(q, &b),
        _ => Vec::new(),
    };
    Ok(Triangle {
        q,
        mode,
        group_sizes,
        group_bounds,
        rows,
        b,
        eps,
    })
}

impl std::str::FromStr for Triangle {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_triangle(s)
    }
}
