//! Text syntax for Leavitt path algebra elements.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := integer | integer? factor+
//! factor  := ident ('.' ident)* '*'?
//! ```
//!
//! Identifiers name vertices or edges. A dotted run is a path and must be
//! composable; a trailing `*` stars the whole run. Factors separated by
//! whitespace (or by `.` after a starred factor) are multiplied in the
//! algebra. Two unstarred factors side by side must compose, so `x1 x2` is
//! the path `x1.x2` while `e1 v` with `r(e1) ≠ v` is rejected rather than
//! silently read as zero. So `2 x1.x2 x1* - z` is `2·(x1 x2)(x1)* - z`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::graph::{Graph, Path};
use crate::lpa::{Element, Monomial};

/// A parse failure with a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
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

    /// Relocates an error found in a fragment that starts at `line`,
    /// `column_offset` within a larger file.
    pub fn shifted(self, line: usize, column_offset: usize) -> Self {
        ParseError {
            line,
            column: self.column + column_offset,
            message: self.message,
        }
    }
}

struct Parser<'a> {
    graph: &'a Arc<Graph>,
    chars: Vec<char>,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(1, at + 1, message)
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if is_ident_start(c) => {}
            Some(c) => return Err(self.error(start, format!("expected a name, found `{c}`"))),
            None => return Err(self.error(start, "expected a name, found end of input")),
        }
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn integer(&mut self) -> BigInt {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().expect("digits only")
    }

    /// Appends the named vertex or edge to `path`, or starts a path.
    fn step(&self, path: Option<Path>, at: usize, name: &str) -> Result<Path, ParseError> {
        let g = self.graph;
        let piece = if let Ok(v) = g.vertex(name) {
            Path::vertex(v)
        } else if let Ok(e) = g.edge_by_name(name) {
            g.path(&[e]).expect("single edge")
        } else {
            return Err(self.error(at, format!("unknown vertex or edge `{name}`")));
        };
        match path {
            None => Ok(piece),
            Some(p) => p.concat(&piece).ok_or_else(|| {
                self.error(
                    at,
                    format!(
                        "`{name}` cannot follow `{}`: range and source differ",
                        g.display_path(&p)
                    ),
                )
            }),
        }
    }

    /// A dotted run with an optional trailing star. Returns the path and
    /// whether it was starred.
    fn factor(&mut self) -> Result<(Path, bool), ParseError> {
        let (at, name) = self.ident()?;
        let mut path = self.step(None, at, &name)?;
        loop {
            let save = self.pos;
            self.skip_ws();
            match self.peek() {
                Some('.') => {
                    self.pos += 1;
                    self.skip_ws();
                    let (at, name) = self.ident()?;
                    path = self.step(Some(path), at, &name)?;
                }
                Some('*') => {
                    self.pos += 1;
                    return Ok((path, true));
                }
                _ => {
                    self.pos = save;
                    return Ok((path, false));
                }
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let g = self.graph;
        let mut coefficient = BigInt::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coefficient = self.integer();
            let save = self.pos;
            self.skip_ws();
            if !self.peek().is_some_and(is_ident_start) {
                self.pos = save;
                return Ok(Element::one(g.clone()).scale(&coefficient));
            }
        }
        if !self.peek().is_some_and(is_ident_start) {
            let at = self.pos;
            return Err(match self.peek() {
                Some(c) => self.error(at, format!("expected a term, found `{c}`")),
                None => self.error(at, "expected a term, found end of input"),
            });
        }
        let mut product = Element::one(g.clone());
        // Range of the trailing unstarred factor, for the juxtaposition rule.
        let mut open_path: Option<Path> = None;
        loop {
            let at = self.pos;
            let (path, starred) = self.factor()?;
            if starred {
                product = &product * &Element::monomial(g.clone(), Monomial::ghost(path));
                open_path = None;
            } else {
                if let Some(prev) = &open_path {
                    if prev.range() != path.source() {
                        return Err(self.error(
                            at,
                            format!(
                                "`{}` cannot follow `{}`: range and source differ",
                                g.display_path(&path),
                                g.display_path(prev)
                            ),
                        ));
                    }
                }
                product = &product * &Element::path(g.clone(), path.clone());
                open_path = Some(path);
            }
            let save = self.pos;
            self.skip_ws();
            match self.peek() {
                Some('.') if open_path.is_none() => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(c) if is_ident_start(c) => {}
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(product.scale(&coefficient))
    }

    fn expression(&mut self) -> Result<Element, ParseError> {
        let g = self.graph;
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error(self.pos, "empty expression"));
        }
        let mut total = Element::zero(g.clone());
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            self.skip_ws();
            let term = self.term()?;
            total = if negative { &total - &term } else { &total + &term };
            self.skip_ws();
            match self.peek() {
                None => return Ok(total),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => {
                    return Err(self.error(self.pos, format!("expected `+` or `-`, found `{c}`")))
                }
            }
            self.pos += 1;
        }
    }
}

/// Parses an element expression over `graph`.
pub fn parse_element(graph: Arc<Graph>, text: &str) -> Result<Element, ParseError> {
    let mut p = Parser {
        graph: &graph,
        chars: text.chars().collect(),
        pos: 0,
    };
    p.expression()
}

/// Parses a dotted path such as `x1.x2` or a single vertex name.
pub fn parse_path(graph: &Arc<Graph>, text: &str) -> Result<Path, ParseError> {
    let mut p = Parser {
        graph,
        chars: text.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    let (path, starred) = p.factor()?;
    p.skip_ws();
    if starred || p.peek().is_some() {
        return Err(p.error(p.pos.saturating_sub(starred as usize), "expected a single path"));
    }
    Ok(path)
}

/// `α β*` as text: `α` alone when `β` is a vertex, `β*` alone when `α` is.
pub fn format_monomial(g: &Graph, m: &Monomial) -> String {
    match (m.alpha().is_vertex(), m.beta().is_vertex()) {
        (true, true) => g.display_path(m.alpha()),
        (false, true) => g.display_path(m.alpha()),
        (true, false) => format!("{}*", g.display_path(m.beta())),
        (false, false) => format!("{} {}*", g.display_path(m.alpha()), g.display_path(m.beta())),
    }
}

/// Prints terms in monomial order; parses back to the same element.
pub fn format_element(x: &Element) -> String {
    let g = x.graph();
    let mut out = String::new();
    for (i, (m, c)) in x.terms().iter().enumerate() {
        let magnitude = c.abs();
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude} "));
        }
        out.push_str(&format_monomial(g, m));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Wrapper for printing a path with its graph's names.
pub struct PathDisplay<'a>(pub &'a Graph, pub &'a Path);

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_path(self.1))
    }
}
