//! Text syntax for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' nat)?
//! coeff  := int | int '/' posint
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored between tokens. The optional leading sign lets the
//! canonical printed form of a polynomial with negative leading coefficient
//! be read back.

use super::{Monomial, Polynomial, Variables};
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Int(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(usize, Tok<'a>)>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, peeked: None }
    }

    fn lex(&mut self) -> Result<(usize, Tok<'a>)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Tok::End));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((start, t));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            return Ok((start, Tok::Int(&self.src[start..self.pos])));
        }
        if b.is_ascii_alphabetic() {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(&self.src[start..self.pos])));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Error::Syntax { offset: start, message: format!("unexpected character `{ch}`") })
    }

    fn peek(&mut self) -> Result<&(usize, Tok<'a>)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    fn next(&mut self) -> Result<(usize, Tok<'a>)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

struct Parser<'a, 'v, C> {
    lex: Lexer<'a>,
    vars: &'v Variables,
    _c: std::marker::PhantomData<C>,
}

impl<C: Field> Parser<'_, '_, C> {
    fn poly(&mut self) -> Result<Polynomial<C>> {
        let mut out = Polynomial::zero(self.vars);
        let mut negate = match self.lex.peek()?.1 {
            Tok::Minus => {
                self.lex.next()?;
                true
            }
            Tok::Plus => {
                self.lex.next()?;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            match self.lex.next()? {
                (_, Tok::Plus) => negate = false,
                (_, Tok::Minus) => negate = true,
                (_, Tok::End) => return Ok(out),
                (off, t) => return Err(syntax(off, format!("expected `+`, `-` or end of input, found {t:?}"))),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, C)> {
        let mut exps = vec![0u32; self.vars.len()];
        let coeff = match self.lex.peek()?.clone() {
            (_, Tok::Int(_)) => {
                let c = self.coeff()?;
                while matches!(self.lex.peek()?.1, Tok::Star) {
                    self.lex.next()?;
                    self.factor(&mut exps)?;
                }
                c
            }
            (_, Tok::Ident(_)) => {
                self.factor(&mut exps)?;
                while matches!(self.lex.peek()?.1, Tok::Star) {
                    self.lex.next()?;
                    self.factor(&mut exps)?;
                }
                C::one()
            }
            (off, t) => return Err(syntax(off, format!("expected a coefficient or variable, found {t:?}"))),
        };
        Ok((Monomial::new(exps), coeff))
    }

    fn coeff(&mut self) -> Result<C> {
        let (off, num) = match self.lex.next()? {
            (off, Tok::Int(s)) => (off, s),
            (off, t) => return Err(syntax(off, format!("expected an integer, found {t:?}"))),
        };
        let den = if matches!(self.lex.peek()?.1, Tok::Slash) {
            self.lex.next()?;
            match self.lex.next()? {
                (doff, Tok::Int(s)) => {
                    if s.bytes().all(|b| b == b'0') {
                        return Err(Error::ZeroDenominator { offset: doff });
                    }
                    s
                }
                (doff, t) => return Err(syntax(doff, format!("expected a denominator, found {t:?}"))),
            }
        } else {
            "1"
        };
        C::from_decimal(num, den).ok_or_else(|| syntax(off, "coefficient out of range"))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let name = match self.lex.next()? {
            (_, Tok::Ident(s)) => s,
            (off, t) => return Err(syntax(off, format!("expected a variable, found {t:?}"))),
        };
        let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut power = 1u32;
        if matches!(self.lex.peek()?.1, Tok::Caret) {
            self.lex.next()?;
            power = match self.lex.next()? {
                (off, Tok::Int(s)) => s.parse().map_err(|_| syntax(off, "exponent out of range"))?,
                (off, t) => return Err(syntax(off, format!("expected an exponent, found {t:?}"))),
            };
        }
        exps[idx] = exps[idx]
            .checked_add(power)
            .ok_or_else(|| syntax(self.lex.pos, "exponent out of range"))?;
        Ok(())
    }
}

impl<C: Field> Polynomial<C> {
    /// Parses `text` in the ring with variables `vars`.
    pub fn parse(text: &str, vars: &Variables) -> Result<Self> {
        let mut p = Parser { lex: Lexer::new(text), vars, _c: std::marker::PhantomData };
        p.poly()
    }
}
