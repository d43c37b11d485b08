//! Text codec for ordinals.
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := factor ("*" nat)?
//! factor := "w" ("^" factor)? | nat | "(" expr ")"
//! ```
//!
//! Whitespace between tokens is ignored. Any well-formed expression is
//! accepted and normalized; [`fmt::Display`] emits the canonical form, e.g.
//! `w^2*3+w*2+5`, `w^(w+1)`, `w^w^2`.

use std::fmt;
use std::str::FromStr;

use super::{Coefficient, Ordinal, Term};
use crate::error::{Error, Result};

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let rhs = self.term()?;
            acc = acc.checked_add(&rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        let base = self.factor()?;
        if self.eat(b'*') {
            let n = self.nat()?;
            return base.checked_mul(&Ordinal::nat(n));
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let exponent = self.factor()?;
                    Ok(Ordinal::omega_pow(exponent))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(_) => Err(self.error("expected 'w', a natural or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<Coefficient> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse::<Coefficient>().map_err(|_| {
            Error::Overflow(format!(
                "natural {digits} at position {start} exceeds the coefficient width"
            ))
        })
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write_term(f, t)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    let e = &t.exponent;
    if e.is_zero() {
        return write!(f, "{}", t.coefficient);
    }
    f.write_str("w")?;
    if e.as_natural() != Some(1) {
        // a bare factor (natural or ω^x) needs no parentheses
        if e.is_finite() || e.is_indecomposable() {
            write!(f, "^{e}")?;
        } else {
            write!(f, "^({e})")?;
        }
    }
    if t.coefficient != 1 {
        write!(f, "*{}", t.coefficient)?;
    }
    Ok(())
}
