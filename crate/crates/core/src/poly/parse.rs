//! Text input: polynomials (`3*X^2*Y - Z T`, juxtaposition allowed), comma
//! separated ideals, and JSON presentation matrices.

use serde::Deserialize;

use super::field::PolyRing;
use super::matrix::Matrix;
use super::vector::{FreeModule, FreeVector, Polynomial};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a PolyRing,
    chars: Vec<char>,
    pos: usize,
    /// offset of `chars[0]` inside the original text
    base: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        let offset = self.base + self.pos;
        let before: String = self.text.chars().take(offset).collect();
        let line = before.matches('\n').count() + 1;
        let column = offset - before.rfind('\n').map(|i| before[..=i].chars().count()).unwrap_or(0) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("number too large"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if sign > 0 {
                acc.add(self.ring, &t)
            } else {
                acc.sub(self.ring, &t)
            };
        }
        Ok(acc)
    }

    fn starts_factor(c: char) -> bool {
        c.is_ascii_digit() || c == '(' || variable_index(c).is_some()
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(self.ring, &f);
                }
                Some(c) if Self::starts_factor(c) => {
                    let f = self.factor()?;
                    acc = acc.mul(self.ring, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let c = (n % self.ring.characteristic() as u64) as i64;
                Polynomial::constant(self.ring, c)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some(c) => match variable_index(c) {
                Some(i) => {
                    self.pos += 1;
                    Polynomial::var(i)
                }
                None => return Err(self.error(format!("unexpected character '{c}'"))),
            },
            None => return Err(self.error("unexpected end of input")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            if e > u16::MAX as u64 / 2 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(self.ring, e as u32));
        }
        Ok(base)
    }
}

fn variable_index(c: char) -> Option<usize> {
    match c.to_ascii_uppercase() {
        'X' => Some(0),
        'Y' => Some(1),
        'Z' => Some(2),
        'T' => Some(3),
        _ => None,
    }
}

fn parse_at(ring: &PolyRing, text: &str, base: usize, piece: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        chars: piece.chars().collect(),
        pos: 0,
        base,
        text,
    };
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        let c = p.peek().unwrap();
        return Err(p.error(format!("unexpected character '{c}'")));
    }
    Ok(e)
}

pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    parse_at(ring, text, 0, text)
}

/// Comma- (or newline-) separated list of polynomials.
pub fn parse_polys(ring: &PolyRing, text: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<char> = text.chars().collect();
    let mut depth = 0i32;
    for (k, &c) in chars.iter().enumerate().chain(std::iter::once((chars.len(), &','))) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | '\n' | ';' if depth == 0 => {
                let piece: String = chars[start..k].iter().collect();
                if !piece.trim().is_empty() {
                    out.push(parse_at(ring, text, start, &piece)?);
                }
                start = k + 1;
            }
            _ => {}
        }
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no polynomials given".into(),
        });
    }
    Ok(out)
}

#[derive(Deserialize)]
struct PresentationJson {
    target: Vec<i32>,
    source: Option<Vec<i32>>,
    rows: Vec<Vec<String>>,
}

/// `{"target": [..], "source": [..], "rows": [["X", "Y"], ..]}`; `source`
/// may be omitted when no column is zero.
pub fn parse_matrix(ring: &PolyRing, json: &str) -> Result<Matrix> {
    let pj: PresentationJson = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let target = FreeModule::new(pj.target);
    let mut rows = Vec::with_capacity(pj.rows.len());
    for r in &pj.rows {
        let mut row = Vec::with_capacity(r.len());
        for e in r {
            row.push(parse_poly(ring, e)?);
        }
        rows.push(row);
    }
    match pj.source {
        Some(s) => Matrix::from_rows(ring, target, FreeModule::new(s), &rows),
        None => {
            if rows.len() != target.rank() {
                return Err(Error::ShapeMismatch(format!(
                    "{} rows for target of rank {}",
                    rows.len(),
                    target.rank()
                )));
            }
            let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
            if rows.iter().any(|r| r.len() != ncols) {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            let cols: Vec<FreeVector> = (0..ncols)
                .map(|j| {
                    let polys: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
                    FreeVector::from_components(ring, &polys)
                })
                .collect();
            Matrix::from_columns(target, cols)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_and_powers() {
        let r = PolyRing::default();
        let p = parse_poly(&r, "XZ - Y^2").unwrap();
        assert_eq!(p.display(&r), "-Y^2 + X*Z");
        let q = parse_poly(&r, "(X+Y)^2").unwrap();
        assert_eq!(q.display(&r), "X^2 + 2*X*Y + Y^2");
        assert_eq!(parse_poly(&r, "3x*y").unwrap().display(&r), "3*X*Y");
    }

    #[test]
    fn lists_and_errors() {
        let r = PolyRing::default();
        assert_eq!(parse_polys(&r, "X, Y,\nZ").unwrap().len(), 3);
        match parse_poly(&r, "X + W") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        match parse_polys(&r, "X,\nY + ?") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&r, "X^").is_err());
        assert!(parse_poly(&r, "").is_err());
    }

    #[test]
    fn matrix_json() {
        let r = PolyRing::default();
        let m = parse_matrix(&r, r#"{"target":[0],"rows":[["X","Y^2"]]}"#).unwrap();
        assert_eq!(m.source().twists, vec![1, 2]);
        let z = parse_matrix(&r, r#"{"target":[0],"source":[1,1],"rows":[["X","0"]]}"#).unwrap();
        assert_eq!(z.ncols(), 2);
        assert!(parse_matrix(&r, r#"{"target":[0],"source":[2],"rows":[["X"]]}"#).is_err());
        assert!(parse_matrix(&r, "{").is_err());
    }
}
