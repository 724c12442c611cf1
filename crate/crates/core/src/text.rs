//! Small line/column aware scanner shared by the text formats.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Re-anchor an error produced on an isolated fragment of a larger file.
    pub fn shifted(self, line: usize, column_offset: usize) -> Self {
        ParseError {
            line,
            column: self.column + column_offset,
            message: self.message,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

pub(crate) struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col_base: usize,
}

impl<'a> Scanner<'a> {
    /// `col_base` is the 1-based column of `src[0]` within its line.
    pub fn new(src: &'a str, line: usize, col_base: usize) -> Self {
        Scanner {
            src,
            pos: 0,
            line,
            col_base,
        }
    }

    pub fn column(&self) -> usize {
        self.col_base + self.src[..self.pos].chars().count()
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(
            self.line,
            self.col_base + self.src[..pos].chars().count(),
            message,
        )
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            })
        }
    }

    /// Consumes `word` if it appears next as a whole identifier.
    pub fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if let Some(after) = rest.strip_prefix(word) {
            if !after.starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                self.pos += word.len();
                return true;
            }
        }
        false
    }

    pub fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    pub fn natural(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(match rest.chars().next() {
                Some(c) => self.error(format!("expected a natural number, found '{c}'")),
                None => self.error("expected a natural number, found end of input"),
            });
        }
        let value = rest[..len]
            .parse::<u64>()
            .map_err(|_| self.error("number does not fit in 64 bits"))?;
        self.pos += len;
        Ok(value)
    }

    pub fn big_natural(&mut self) -> Result<num_bigint::BigUint, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a natural number"));
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("ascii digits"))
    }

    pub fn signed(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat('-');
        let start = self.pos;
        let magnitude = self.natural()?;
        let value = i64::try_from(magnitude).map_err(|_| self.error_at(start, "number too large"))?;
        Ok(if negative { -value } else { value })
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing input '{}'", self.rest())))
        }
    }
}

/// Iterates over the meaningful lines of a file: `#` comments stripped,
/// blank lines skipped. Yields (1-based line number, content).
pub(crate) fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(idx, line)| {
        let content = match line.find('#') {
            Some(at) => &line[..at],
            None => line,
        };
        let content = content.trim_end();
        if content.trim().is_empty() {
            None
        } else {
            Some((idx + 1, content))
        }
    })
}

/// Splits `key: value` and reports the 1-based column where `value` starts.
pub(crate) fn split_key(line: &str) -> Option<(&str, &str, usize)> {
    let at = line.find(':')?;
    let key = line[..at].trim();
    let value = &line[at + 1..];
    Some((key, value, line[..at + 1].chars().count() + 1))
}
