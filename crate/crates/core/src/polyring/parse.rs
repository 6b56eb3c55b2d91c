//! Polynomial text grammar:
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*' factor)*
//! factor := (integer | variable) ('^' integer)?
//! ```
//!
//! Whitespace between tokens is ignored. Integer literals of any length are
//! reduced modulo the characteristic digit by digit.

use std::sync::Arc;

use super::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Star,
    Caret,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    message: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.here();
        match self.toks.get(self.pos) {
            Some((_, Tok::Int(s))) => {
                let e = s
                    .parse::<u32>()
                    .map_err(|_| Error::Syntax { pos: at, message: format!("exponent `{s}` out of range") })?;
                self.pos += 1;
                Ok(e)
            }
            _ => Err(Error::Syntax { pos: at, message: "expected integer exponent after `^`".into() }),
        }
    }

    /// Returns (coefficient, monomial) for one product of factors.
    fn term(&mut self) -> Result<(u32, Monomial)> {
        let field = self.ring.field();
        let mut coeff = 1u32;
        let mut mono = Monomial::one(self.ring.nvars());
        loop {
            let at = self.here();
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Int(s))) => {
                    self.pos += 1;
                    let mut v = 0u32;
                    for d in s.bytes() {
                        v = field.add(field.mul(v, 10), (d - b'0') as u32);
                    }
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    coeff = field.mul(coeff, field.pow(v, e as u64));
                }
                Some((_, Tok::Ident(name))) => {
                    self.pos += 1;
                    let idx =
                        self.ring.var_index(&name).ok_or(Error::UnknownVariable { name: name.clone(), pos: at })?;
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    let mut v = Monomial::one(self.ring.nvars());
                    v = v.mul(&Monomial::var(self.ring.nvars(), idx).pow(e));
                    mono = mono.mul(&v);
                }
                _ => return Err(Error::Syntax { pos: at, message: "expected a number or a variable".into() }),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((coeff, mono));
            }
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, message: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let field = ring.field();
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = match p.peek() {
            Some(Tok::Plus) => {
                p.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                p.pos += 1;
                true
            }
            _ if first => false,
            None => break,
            Some(_) => return Err(Error::Syntax { pos: p.here(), message: "expected `+` or `-`".into() }),
        };
        first = false;
        let (c, m) = p.term()?;
        terms.push((m, if negative { field.neg(c) } else { c }));
        if p.peek().is_none() {
            break;
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}
