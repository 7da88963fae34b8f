//! The line-oriented input language.
//!
//! ```text
//! # comment
//! ring x, y, z over gf(7)
//! degrees 2, 3, inf
//! ideal x^2 + y*z, y^3 - z^2*x, z^5
//! ```
//!
//! `ring` comes first; `degrees` and `ideal` are optional and may each
//! appear once.

use std::fmt;

use egh_core::mideal::{minimalize, MonomialIdeal};
use egh_core::monom::{Ambient, Bound, DegreeSequence, Monomial};
use egh_core::polyfp::{Polynomial, PolynomialIdeal, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for InputError {}

fn err(line: usize, column: usize, message: impl Into<String>, expected: &[&str]) -> InputError {
    InputError {
        line,
        column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Monomial,
    Field(PrimeField),
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Monomial => f.write_str("monomial"),
            RingKind::Field(k) => write!(f, "gf({})", k.modulus()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generators {
    Monomial(MonomialIdeal),
    Polynomial(PolynomialIdeal),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub ambient: Ambient,
    pub ring: RingKind,
    pub degrees: Option<DegreeSequence>,
    pub ideal: Option<Generators>,
}

impl InputDocument {
    pub fn monomial_ideal(&self) -> Option<&MonomialIdeal> {
        match &self.ideal {
            Some(Generators::Monomial(i)) => Some(i),
            _ => None,
        }
    }

    pub fn polynomial_ideal(&self) -> Option<&PolynomialIdeal> {
        match &self.ideal {
            Some(Generators::Polynomial(i)) => Some(i),
            _ => None,
        }
    }

    pub fn generator_texts(&self) -> Vec<String> {
        match &self.ideal {
            None => Vec::new(),
            Some(Generators::Monomial(i)) => i
                .generators()
                .iter()
                .map(|g| self.ambient.format_monomial(g))
                .collect(),
            Some(Generators::Polynomial(i)) => i.generators().iter().map(|g| g.format(&self.ambient)).collect(),
        }
    }

    /// Canonical text; parses back to an equal document.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {} over {}\n", self.ambient.names().join(", "), self.ring);
        if let Some(a) = &self.degrees {
            out.push_str(&format!("degrees {a}\n"));
        }
        if self.ideal.is_some() {
            out.push_str(&format!("ideal {}\n", self.generator_texts().join(", ")));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Int(&'a str),
    Comma,
    Open,
    Close,
    Other(char),
}

/// Splits a line into `(column, token)` pairs; columns are 1-based.
fn lex(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(&text[start..i])
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(&text[start..i])
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            i += ch.len_utf8();
            match ch {
                ',' => Tok::Comma,
                '(' => Tok::Open,
                ')' => Tok::Close,
                other => Tok::Other(other),
            }
        };
        out.push((start + 1, tok));
    }
    out
}

struct Line<'a> {
    number: usize,
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn fail(&self, message: &str, expected: &[&str]) -> InputError {
        let message = match self.toks.get(self.pos) {
            Some(_) => message.to_string(),
            None => format!("{message}: unexpected end of line"),
        };
        err(self.number, self.column(), message, expected)
    }

    fn next(&mut self) -> Option<Tok<'a>> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn ident(&mut self, expected: &[&str]) -> Result<&'a str, InputError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.fail("syntax error", expected)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), InputError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.fail("syntax error", &[&format!("`{word}`")])),
        }
    }

    fn expect(&mut self, tok: Tok<'_>, name: &str) -> Result<(), InputError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail("syntax error", &[name]))
        }
    }

    fn finish(&self) -> Result<(), InputError> {
        if self.pos < self.toks.len() {
            Err(self.fail("unexpected trailing input", &["end of line"]))
        } else {
            Ok(())
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, InputError> {
    let mut ring: Option<(Ambient, RingKind)> = None;
    let mut degrees: Option<DegreeSequence> = None;
    let mut ideal: Option<(usize, usize, &str)> = None;
    let mut degrees_seen = false;

    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let body = strip_comment(raw);
        let toks = lex(body);
        if toks.is_empty() {
            continue;
        }
        let mut line = Line {
            number,
            toks,
            pos: 0,
            end: body.trim_end().len() + 1,
        };
        let (col, word) = (line.column(), line.ident(&["`ring`", "`degrees`", "`ideal`"])?);
        match word {
            "ring" if ring.is_none() => ring = Some(parse_ring(&mut line)?),
            "degrees" | "ideal" if ring.is_none() => {
                return Err(err(number, col, format!("`{word}` before the ring declaration"), &["`ring`"]));
            }
            "degrees" if !degrees_seen => {
                let n = ring.as_ref().expect("checked").0.nvars();
                degrees = Some(parse_degrees(&mut line, n)?);
                degrees_seen = true;
            }
            "ideal" if ideal.is_none() => {
                let rest_col = line.column();
                ideal = Some((number, rest_col, &body[rest_col.saturating_sub(1).min(body.len())..]));
            }
            "ring" | "degrees" | "ideal" => {
                return Err(err(number, col, format!("duplicate `{word}` declaration"), &[]));
            }
            _ => {
                return Err(err(number, col, format!("unknown declaration `{word}`"), &["`ring`", "`degrees`", "`ideal`"]));
            }
        }
    }
    let Some((ambient, kind)) = ring else {
        return Err(err(1, 1, "missing ring declaration", &["`ring`"]));
    };
    let ideal = match ideal {
        None => None,
        Some((number, col, rest)) => Some(parse_ideal(&ambient, kind, number, col, rest)?),
    };
    Ok(InputDocument {
        ambient,
        ring: kind,
        degrees,
        ideal,
    })
}

fn parse_ring(line: &mut Line<'_>) -> Result<(Ambient, RingKind), InputError> {
    let mut names: Vec<(usize, &str)> = Vec::new();
    loop {
        let col = line.column();
        let name = line.ident(&["variable name"])?;
        if name == "over" && !names.is_empty() {
            line.pos -= 1;
            break;
        }
        if names.iter().any(|(_, n)| *n == name) {
            return Err(err(line.number, col, format!("duplicate variable `{name}`"), &[]));
        }
        names.push((col, name));
        match line.peek() {
            Some(Tok::Comma) => {
                line.next();
            }
            _ => break,
        }
    }
    line.keyword("over")?;
    let col = line.column();
    let kind = match line.ident(&["`gf`", "`monomial`"])? {
        "monomial" => RingKind::Monomial,
        "gf" => {
            line.expect(Tok::Open, "`(`")?;
            let pcol = line.column();
            let p = match line.next() {
                Some(Tok::Int(s)) => s.parse::<u32>().ok(),
                _ => {
                    line.pos -= 1;
                    return Err(line.fail("syntax error", &["prime modulus"]));
                }
            };
            let field = p
                .and_then(|p| PrimeField::new(p).ok())
                .ok_or_else(|| err(line.number, pcol, "non-prime modulus (need a prime below 65536)", &[]))?;
            line.expect(Tok::Close, "`)`")?;
            RingKind::Field(field)
        }
        other => return Err(err(line.number, col, format!("unknown coefficient kind `{other}`"), &["`gf`", "`monomial`"])),
    };
    line.finish()?;
    let ambient = Ambient::new(names.iter().map(|(_, n)| n.to_string()).collect())
        .map_err(|e| err(line.number, names[0].0, e.to_string(), &[]))?;
    Ok((ambient, kind))
}

fn parse_degrees(line: &mut Line<'_>, n: usize) -> Result<DegreeSequence, InputError> {
    let start = line.column();
    let mut entries = Vec::new();
    loop {
        match line.peek() {
            Some(Tok::Int(s)) => {
                let v = s
                    .parse::<u32>()
                    .map_err(|_| line.fail("degree out of range", &[]))?;
                entries.push(Bound::Finite(v));
            }
            Some(Tok::Ident("inf")) => entries.push(Bound::Infinite),
            _ => return Err(line.fail("syntax error", &["integer", "`inf`"])),
        }
        line.next();
        match line.peek() {
            Some(Tok::Comma) => {
                line.next();
            }
            None => break,
            _ => return Err(line.fail("syntax error", &["`,`", "end of line"])),
        }
    }
    if entries.len() > n {
        return Err(err(
            line.number,
            start,
            format!("{} degrees for {n} variables", entries.len()),
            &[],
        ));
    }
    DegreeSequence::new(entries).map_err(|e| err(line.number, start, e.to_string(), &[]))
}

/// Parses a bare degree list such as `2,3,inf` (as given on the command
/// line) for `n` variables.
pub fn parse_degree_list(text: &str, n: usize) -> Result<DegreeSequence, InputError> {
    let toks = lex(text);
    let mut line = Line {
        number: 1,
        toks,
        pos: 0,
        end: text.trim_end().len() + 1,
    };
    parse_degrees(&mut line, n)
}

/// Splits on top-level commas, keeping 1-based columns.
fn split_generators(rest: &str, col0: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (k, ch) in rest.char_indices() {
        if ch == ',' {
            out.push((start, &rest[start..k]));
            start = k + 1;
        }
    }
    out.push((start, &rest[start..]));
    out.into_iter()
        .map(|(off, s)| {
            let lead = s.len() - s.trim_start().len();
            (col0 + off + lead, s.trim())
        })
        .collect()
}

fn check_identifiers(ambient: &Ambient, line: usize, col: usize, text: &str) -> Result<(), InputError> {
    for (c, tok) in lex(text) {
        match tok {
            Tok::Ident(name) if ambient.index_of(name).is_none() => {
                return Err(err(line, col + c - 1, format!("undeclared variable `{name}`"), &[]));
            }
            Tok::Ident(_) | Tok::Int(_) | Tok::Other('*' | '^' | '+' | '-') => {}
            Tok::Other(ch) => {
                return Err(err(line, col + c - 1, format!("unexpected `{ch}`"), &["term"]));
            }
            Tok::Comma | Tok::Open | Tok::Close => {
                return Err(err(line, col + c - 1, "unexpected bracket", &["term"]));
            }
        }
    }
    Ok(())
}

fn parse_ideal(ambient: &Ambient, kind: RingKind, line: usize, col0: usize, rest: &str) -> Result<Generators, InputError> {
    let pieces = split_generators(rest.trim_end(), col0);
    if pieces.len() == 1 && pieces[0].1.is_empty() {
        // `ideal` with nothing after it is the zero ideal
        return Ok(match kind {
            RingKind::Monomial => Generators::Monomial(MonomialIdeal::zero(ambient)),
            RingKind::Field(k) => Generators::Polynomial(PolynomialIdeal::new(ambient, k, Vec::new()).expect("empty")),
        });
    }
    let mut monos: Vec<Monomial> = Vec::new();
    let mut polys: Vec<Polynomial> = Vec::new();
    for (col, text) in pieces {
        if text.is_empty() {
            return Err(err(line, col, "missing generator", &["generator"]));
        }
        check_identifiers(ambient, line, col, text)?;
        match kind {
            RingKind::Monomial => {
                let m = ambient
                    .parse_monomial(text)
                    .map_err(|e| err(line, col, format!("{e}"), &["monomial"]))?;
                monos.push(m);
            }
            RingKind::Field(k) => {
                let f = Polynomial::parse(ambient, k, text).map_err(|e| match e {
                    egh_core::Error::Inhomogeneous => err(line, col, "inhomogeneous generator", &[]),
                    other => err(line, col, other.to_string(), &["polynomial"]),
                })?;
                if f.is_zero() {
                    return Err(err(line, col, "generator is zero", &[]));
                }
                polys.push(f);
            }
        }
    }
    Ok(match kind {
        RingKind::Monomial => Generators::Monomial(minimalize(ambient, monos)),
        RingKind::Field(k) => Generators::Polynomial(PolynomialIdeal::new(ambient, k, polys).expect("checked")),
    })
}

/// Turns record-style values (`ring=x,y field=gf(7) degrees=2,3
/// ideal=x^2,x*y`) back into a document.
pub fn document_from_record(fields: &[(&str, &str)]) -> Result<InputDocument, InputError> {
    let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let ring = get("ring").ok_or_else(|| err(1, 1, "record has no ring", &["ring="]))?;
    let field = get("field").ok_or_else(|| err(1, 1, "record has no field", &["field="]))?;
    let mut text = format!("ring {} over {field}\n", ring.replace(',', ", "));
    if let Some(a) = get("degrees") {
        text.push_str(&format!("degrees {}\n", a.replace(',', ", ")));
    }
    if let Some(g) = get("ideal") {
        text.push_str(&format!("ideal {g}\n"));
    }
    parse_input(&text)
}
