//! Scalar expressions and `.arr` / `.pts` documents.

use std::fmt::Write as _;

use crate::arrangement::{
    catalog_build, dualize, dualize_inv, Arrangement, CatalogParams, PointSet, ProjLine, ProjPoint,
};
use crate::error::{Error, Result};
use crate::exact::Scalar;

const MAX_EXPONENT: i64 = 10_000;

struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    offset: usize,
}

impl ScalarParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.offset + self.pos + 1, msg)
    }

    fn at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.offset + pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let v = self.integer()?;
        i64::try_from(v).map_err(|_| self.at(start, "integer too large"))
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(self.at(at, "division by zero"));
                    }
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e = self.small_integer()?;
        if e > MAX_EXPONENT {
            return Err(self.at(at, "exponent too large"));
        }
        let p = base.pow(e as u32);
        if negative {
            if p.is_zero() {
                return Err(self.at(at, "division by zero"));
            }
            p.inv()
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let n = self.small_integer()?;
                self.expect(b')')?;
                if n < 1 || n > u32::MAX as i64 {
                    return Err(self.at(at, "root of unity order must be positive"));
                }
                Scalar::zeta(n as u32)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from_bigint(self.integer()?)),
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn parse_scalar_at(expr: &str, line: usize, offset: usize) -> Result<Scalar> {
    let mut p = ScalarParser {
        src: expr.as_bytes(),
        pos: 0,
        line,
        offset,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses integers, `p/q`, `z(n)` (a primitive n-th root of unity), `+ - * / ^`
/// and parentheses.
pub fn parse_scalar(expr: &str) -> Result<Scalar> {
    parse_scalar_at(expr, 1, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Points,
    Lines,
    Catalog,
}

impl DocumentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DocumentKind::Points => "points",
            DocumentKind::Lines => "lines",
            DocumentKind::Catalog => "catalog",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub kind: DocumentKind,
    /// Coordinate triples for `points` and `lines` documents.
    pub entries: Vec<[Scalar; 3]>,
    pub catalog: Option<(String, CatalogParams)>,
    pub label: String,
}

/// Splits a catalog spec such as `fermat m=5` or `Mmk:m=5:k=2:w=1,2`.
pub fn parse_catalog_spec(spec: &str) -> Result<(String, CatalogParams)> {
    let mut tokens = spec
        .split(|c: char| c.is_whitespace() || c == ':')
        .filter(|t| !t.is_empty());
    let name = tokens
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty catalog spec".into()))?
        .to_string();
    let mut params = CatalogParams::new();
    for t in tokens {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{t}`")))?;
        if params.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::InvalidArgument(format!("parameter `{k}` given twice")));
        }
    }
    Ok((name, params))
}

fn split_entry(body: &str, line: usize, offset: usize) -> Result<Vec<(usize, &str)>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((start, &body[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &body[start..]));
    if parts.len() != 3 {
        return Err(Error::parse(
            line,
            offset + 1,
            format!("expected 3 coordinates, found {}", parts.len()),
        ));
    }
    Ok(parts)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses a document: a header `points:`, `lines:` or `catalog: <name> k=v...`,
/// then one `[e1, e2, e3]` per line, with optional `label: <text>` and `#` comments.
pub fn parse_document(text: &str) -> Result<InputDocument> {
    let mut kind = None;
    let mut label = None;
    let mut catalog = None;
    let mut entries: Vec<[Scalar; 3]> = Vec::new();
    let mut seen: Vec<(ProjPoint, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = strip_comment(raw);
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("label:") {
            label = Some(rest.trim().to_string());
            continue;
        }
        if kind.is_none() {
            if trimmed == "points:" {
                kind = Some(DocumentKind::Points);
            } else if trimmed == "lines:" {
                kind = Some(DocumentKind::Lines);
            } else if let Some(rest) = trimmed.strip_prefix("catalog:") {
                let (name, params) =
                    parse_catalog_spec(rest).map_err(|e| Error::parse(line_no, indent + 9, e.to_string()))?;
                match catalog_build(&name, &params) {
                    Err(Error::UnknownCatalog(n)) => return Err(Error::UnknownCatalog(n)),
                    Err(e) => return Err(Error::parse(line_no, indent + 1, e.to_string())),
                    Ok(_) => {}
                }
                catalog = Some((name, params));
                kind = Some(DocumentKind::Catalog);
            } else {
                return Err(Error::parse(
                    line_no,
                    indent + 1,
                    "expected a header `points:`, `lines:` or `catalog: <name>`",
                ));
            }
            continue;
        }
        if kind == Some(DocumentKind::Catalog) {
            return Err(Error::parse(line_no, indent + 1, "catalog documents take no entries"));
        }
        let Some(body) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return Err(Error::parse(line_no, indent + 1, "expected an entry `[e1, e2, e3]`"));
        };
        let body_offset = indent + 1;
        let parts = split_entry(body, line_no, body_offset)?;
        let mut coords: Vec<Scalar> = Vec::with_capacity(3);
        for (off, part) in parts {
            coords.push(parse_scalar_at(part, line_no, body_offset + off)?);
        }
        let triple: [Scalar; 3] = coords.try_into().expect("three coordinates");
        let normalized = ProjPoint::new(triple.clone())
            .map_err(|_| Error::parse(line_no, indent + 1, "all coordinates are zero"))?;
        if let Some((_, first)) = seen.iter().find(|(p, _)| p == &normalized) {
            return Err(Error::parse(
                line_no,
                indent + 1,
                format!("duplicate entry (same as line {first})"),
            ));
        }
        seen.push((normalized, line_no));
        entries.push(triple);
    }
    let kind = kind.ok_or_else(|| Error::parse(1, 1, "missing header"))?;
    if kind != DocumentKind::Catalog && entries.is_empty() {
        return Err(Error::parse(text.lines().count().max(1), 1, "no entries"));
    }
    let label = label.unwrap_or_else(|| match &catalog {
        Some((name, params)) => catalog_build(name, params)
            .map(|a| a.label().to_string())
            .unwrap_or_default(),
        None => kind.as_str().to_string(),
    });
    Ok(InputDocument {
        kind,
        entries,
        catalog,
        label,
    })
}

impl InputDocument {
    /// The line arrangement: the lines themselves, or the dual of the points.
    pub fn arrangement(&self) -> Result<Arrangement> {
        match self.kind {
            DocumentKind::Catalog => {
                let (name, params) = self.catalog.as_ref().expect("catalog document");
                Ok(catalog_build(name, params)?.with_label(self.label.clone()))
            }
            DocumentKind::Lines => {
                let lines = self
                    .entries
                    .iter()
                    .map(|t| ProjLine::new(t.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Arrangement::new(lines, self.label.clone())
            }
            DocumentKind::Points => Ok(dualize(&self.point_set()?)),
        }
    }

    /// The point set `Z`; for line documents the dual points.
    pub fn point_set(&self) -> Result<PointSet> {
        match self.kind {
            DocumentKind::Points => {
                let pts = self
                    .entries
                    .iter()
                    .map(|t| ProjPoint::new(t.clone()))
                    .collect::<Result<Vec<_>>>()?;
                PointSet::new(pts, self.label.clone())
            }
            _ => Ok(dualize_inv(&self.arrangement()?)),
        }
    }

    /// Text that parses back to an equal document.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.kind {
            DocumentKind::Catalog => {
                let (name, params) = self.catalog.as_ref().expect("catalog document");
                let _ = write!(out, "catalog: {name}");
                for (k, v) in params {
                    let _ = write!(out, " {k}={v}");
                }
                out.push('\n');
            }
            k => {
                let _ = writeln!(out, "{}:", k.as_str());
            }
        }
        let _ = writeln!(out, "label: {}", self.label);
        for [a, b, c] in &self.entries {
            let _ = writeln!(out, "[{a}, {b}, {c}]");
        }
        out
    }

    /// A catalog document, checked by building the arrangement.
    pub fn catalog(name: &str, params: CatalogParams) -> Result<InputDocument> {
        let a = catalog_build(name, &params)?;
        Ok(InputDocument {
            kind: DocumentKind::Catalog,
            entries: Vec::new(),
            catalog: Some((name.to_string(), params)),
            label: a.label().to_string(),
        })
    }

    pub fn from_arrangement(a: &Arrangement) -> InputDocument {
        InputDocument {
            kind: DocumentKind::Lines,
            entries: a.lines().iter().map(|l| l.coeffs().clone()).collect(),
            catalog: None,
            label: a.label().to_string(),
        }
    }
}
