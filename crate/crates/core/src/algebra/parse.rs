//! Polynomial expressions: `+ - * / ^`, parentheses, integers, and named
//! variables. Division is only allowed by nonzero constants, so `1/6144*x`
//! parses exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    names: &'a [&'a str],
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(s[start..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError { pos: i, message: format!("unexpected character '{}'", c) });
        }
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.idx += 1;
                    acc = acc + self.term()?;
                }
                Tok::Op('-') => {
                    self.idx += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.idx += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.idx += 1;
                    let at = self.pos();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError { pos: at, message: "division by a non-constant or zero".into() });
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.idx += 1;
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.idx += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Tok::Op('^') = self.peek() {
            self.idx += 1;
            match self.peek().clone() {
                Tok::Num(n) => {
                    let e = match n.to_u32() {
                        Some(e) => e,
                        None => return self.err("exponent too large"),
                    };
                    self.idx += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let n = self.names.len();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.idx += 1;
                Ok(Poly::constant(n, Rational::from_integer(v)))
            }
            Tok::Ident(name) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.idx += 1;
                    Ok(Poly::var(n, i))
                }
                None => self.err(format!("unknown variable '{}'", name)),
            },
            Tok::Op('(') => {
                self.idx += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Tok::Op(')') => {
                        self.idx += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Tok::End => self.err("unexpected end of input"),
            t => self.err(format!("unexpected token {:?}", t)),
        }
    }
}

/// Parses a polynomial over the given variable names.
pub fn parse_poly<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Poly, ParseError> {
    let names: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
    let toks = tokenize(text)?;
    let mut p = Parser { toks, idx: 0, names: &names };
    if matches!(p.peek(), Tok::End) {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if !matches!(p.peek(), Tok::End) {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let p = parse_poly::<&str>(text, &[])?;
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(p.constant_term())
}
