//! Small recursive-descent parser shared by the text formats.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := '-' unary | power
//! power   := primary ['^' uint]
//! primary := uint | 'I' | '(' expr ')' | atom
//! ```
//!
//! Atoms are supplied by the caller: `z` for univariate rational functions,
//! `d[i]^j`, `dquot[i]^j` and `dlog[i]^j` for jet polynomials.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{Poly, RationalFunction};
use crate::scalar::QComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
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
        } else if "+-*/^()[]".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

/// Arithmetic the parser needs from its target type.
pub(crate) trait ExprRing: Clone {
    fn from_scalar(q: QComplex) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn div(&self, o: &Self) -> Result<Self, String>;
}

pub(crate) struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            end: src.len(),
            _src: src,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn step_back(&mut self) {
        self.pos = self.pos.saturating_sub(1);
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    pub(crate) fn uint(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = n.to_u32();
                match v {
                    Some(v) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    None => self.err("integer too large"),
                }
            }
            _ => self.err("expected an unsigned integer"),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }

    pub(crate) fn expr<R, A>(&mut self, atom: &mut A) -> Result<R, ParseError>
    where
        R: ExprRing,
        A: FnMut(&mut Parser<'a>, &str) -> Result<R, ParseError>,
    {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term(atom)?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term(atom)?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term(atom)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<R, A>(&mut self, atom: &mut A) -> Result<R, ParseError>
    where
        R: ExprRing,
        A: FnMut(&mut Parser<'a>, &str) -> Result<R, ParseError>,
    {
        let mut acc = self.unary(atom)?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary(atom)?);
            } else if self.eat('/') {
                let at = self.here();
                let rhs = self.unary(atom)?;
                acc = acc.div(&rhs).map_err(|msg| ParseError { pos: at, msg })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<R, A>(&mut self, atom: &mut A) -> Result<R, ParseError>
    where
        R: ExprRing,
        A: FnMut(&mut Parser<'a>, &str) -> Result<R, ParseError>,
    {
        if self.eat('-') {
            return Ok(self.unary(atom)?.neg());
        }
        let base = self.primary(atom)?;
        if self.eat('^') {
            let e = self.uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn primary<R, A>(&mut self, atom: &mut A) -> Result<R, ParseError>
    where
        R: ExprRing,
        A: FnMut(&mut Parser<'a>, &str) -> Result<R, ParseError>,
    {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(R::from_scalar(Complex::new(
                BigRational::from_integer(n),
                BigRational::zero(),
            ))),
            Some(Tok::Ident(id)) if id == "I" => Ok(R::from_scalar(Complex::new(
                BigRational::zero(),
                BigRational::from_integer(1.into()),
            ))),
            Some(Tok::Ident(id)) => atom(self, &id),
            Some(Tok::Sym('(')) => {
                let inner = self.expr(atom)?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected a number, 'I', '(' or a symbol")
            }
        }
    }
}

impl ExprRing for RationalFunction {
    fn from_scalar(q: QComplex) -> Self {
        RationalFunction::constant(q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        RationalFunction::pow(self, e)
    }
    fn div(&self, o: &Self) -> Result<Self, String> {
        self.checked_div(o).ok_or_else(|| "division by zero".to_string())
    }
}

/// Parses a rational function of `z`, e.g. `(1 - z^2)/(2*z^2)`.
pub fn parse_rational_function(s: &str) -> Result<RationalFunction, ParseError> {
    let mut p = Parser::new(s)?;
    let mut atom = |p: &mut Parser<'_>, id: &str| {
        if id == "z" {
            Ok(RationalFunction::from_poly(Poly::z()))
        } else {
            p.step_back();
            p.err(format!("unknown symbol '{id}'"))
        }
    };
    let r = p.expr(&mut atom)?;
    p.finish()?;
    Ok(r)
}

/// Parses a polynomial in `z`, such as `1 + 2*z - z^3` or `(1/2+I)*z^2`.
pub fn parse_poly(s: &str) -> Result<Poly, ParseError> {
    let r = parse_rational_function(s)?;
    if r.is_polynomial() {
        let c = r.den().coeff(0);
        Ok(r.num().scale(&(QComplex::one() / c)))
    } else {
        Err(ParseError {
            pos: 0,
            msg: "expected a polynomial, got a rational function".into(),
        })
    }
}

/// Parses an exact complex rational such as `-1/3`, `2*I` or `1/2+3*I`.
pub fn parse_qcomplex(s: &str) -> Result<QComplex, ParseError> {
    let p = parse_poly(s)?;
    if p.is_constant() {
        Ok(p.coeff(0))
    } else {
        Err(ParseError {
            pos: 0,
            msg: "expected a constant".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{format_qcomplex, qc, rat};

    #[test]
    fn polynomial_literals() {
        let p = parse_poly("1 + 2*z - z^3").unwrap();
        assert_eq!(p, Poly::from_i64(&[1, 2, 0, -1]));
        let q = parse_poly("z^2 - 1/4").unwrap();
        assert_eq!(q.coeff(0), Complex::new(rat(-1, 4), rat(0, 1)));
        let c = parse_poly("(1/2+3*I)*z").unwrap();
        assert_eq!(c.coeff(1), Complex::new(rat(1, 2), rat(3, 1)));
    }

    #[test]
    fn rational_literals() {
        let r = parse_rational_function("(1-z^2)/(2*z^2)").unwrap();
        assert_eq!(r.den(), &Poly::from_i64(&[0, 0, 1]));
        assert!(parse_poly("1/(1-z)").is_err());
        assert!(parse_rational_function("1/0").is_err());
    }

    #[test]
    fn complex_constants_roundtrip() {
        for s in ["3", "-1/2", "I", "-I", "1/2+3*I", "4-2/3*I"] {
            let q = parse_qcomplex(s).unwrap();
            assert_eq!(format_qcomplex(&q), s);
        }
        assert_eq!(parse_qcomplex("2*I").unwrap(), qc(0, 2));
        assert!(parse_qcomplex("z").is_err());
    }

    #[test]
    fn errors_report_position() {
        let e = parse_poly("1 + w").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_poly("1 +").is_err());
        assert!(parse_poly("(1+z").is_err());
        assert!(parse_poly("1 $ 2").is_err());
    }
}
