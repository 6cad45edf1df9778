//! Module expressions accepted on the command line.
//!
//! ```text
//! sum   := term ('+' term)*
//! term  := base ['(' int ')']          twist, as in R(-2) or R/(X,Y,Z,T)(1)
//! base  := 'R'                         free module of rank one
//!        | 'R/(' gens ')'              quotient ring
//!        | 'I(' gens ')'               the ideal itself, as a module
//!        | 'syz2[' sum ']'             second syzygy module
//!        | '{' json '}'                cokernel of a presentation matrix
//! ```

use biliaison::poly::{parse_matrix, parse_polys, FreeModule, PolyRing};
use biliaison::resolution::{second_syzygy, PresentedModule};
use biliaison::{Error, Result};

use biliaison::liaison::ideal_module;

struct SpecParser<'a> {
    ring: &'a PolyRing,
    text: &'a str,
    pos: usize,
}

fn syntax(text: &str, pos: usize, message: impl Into<String>) -> Error {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> SpecParser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        syntax(self.text, self.pos, message)
    }

    /// Text up to the bracket closing the one just consumed.
    fn balanced(&mut self, open: char, close: char) -> Result<&'a str> {
        let start = self.pos;
        let mut depth = 1;
        for (i, c) in self.rest().char_indices() {
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    let inner = &self.text[start..start + i];
                    self.pos = start + i + c.len_utf8();
                    return Ok(inner);
                }
            }
        }
        Err(self.error(format!("missing '{close}'")))
    }

    fn sum(&mut self) -> Result<PresentedModule> {
        let mut acc = self.term()?;
        while self.eat("+") {
            acc = acc.direct_sum(&self.term()?);
        }
        Ok(acc)
    }

    fn gens(&mut self) -> Result<Vec<biliaison::poly::Polynomial>> {
        let at = self.pos;
        let inner = self.balanced('(', ')')?;
        parse_polys(self.ring, inner).map_err(|e| match e {
            Error::Parse { message, column, .. } => syntax(self.text, at + column - 1, message),
            other => other,
        })
    }

    fn term(&mut self) -> Result<PresentedModule> {
        let base = self.base()?;
        if self.eat("(") {
            let inner = self.balanced('(', ')')?;
            let s: i32 = inner
                .trim()
                .parse()
                .map_err(|_| self.error("twist must be an integer"))?;
            return Ok(base.shifted(s));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<PresentedModule> {
        self.skip_ws();
        if self.eat("syz2[") {
            let inner_start = self.pos;
            let inner = self.balanced('[', ']')?;
            let mut sub = SpecParser {
                ring: self.ring,
                text: self.text,
                pos: inner_start,
            };
            let m = sub.sum()?;
            sub.skip_ws();
            if sub.pos != inner_start + inner.len() {
                return Err(sub.error("unexpected text"));
            }
            return Ok(second_syzygy(&m)?.module);
        }
        if self.rest().starts_with('{') {
            let start = self.pos;
            self.pos += 1;
            self.balanced('{', '}')?;
            let json = &self.text[start..self.pos];
            return Ok(PresentedModule::new(self.ring, parse_matrix(self.ring, json)?));
        }
        if self.eat("R/(") {
            let gens = self.gens()?;
            return PresentedModule::quotient_ring(self.ring, &gens);
        }
        if self.eat("I(") {
            let gens = self.gens()?;
            return ideal_module(self.ring, &gens);
        }
        if self.eat("R") {
            return Ok(PresentedModule::free(self.ring, FreeModule::new(vec![0])));
        }
        Err(self.error("expected R, R/(..), I(..), syz2[..] or a JSON presentation"))
    }
}

pub fn parse_module(ring: &PolyRing, text: &str) -> Result<PresentedModule> {
    let mut p = SpecParser { ring, text, pos: 0 };
    let m = p.sum()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected text after module expression"));
    }
    Ok(m)
}
