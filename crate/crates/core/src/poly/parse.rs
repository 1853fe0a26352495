//! Recursive-descent reader for the polynomial text grammar:
//!
//! ```text
//! expression := ['-'] term (('+' | '-') term)*
//! term       := factor ('*' factor)*
//! factor     := rational | variable ['^' natural] | '(' expression ')' ['^' natural]
//! rational   := integer ['/' positive-integer]
//! ```
//!
//! Whitespace (including newlines) is insignificant. The leading `-` is an
//! extension so that every formatted polynomial reads back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Vars};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
}

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at {}:{}: {msg}", self.line, self.column),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable `{v}` at {}:{}", self.line, self.column)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut lx = Lexer { chars: src.chars().peekable(), line: 1, col: 1 };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            let (line, col) = (lx.line, lx.col);
            let Some(&c) = lx.chars.peek() else {
                out.push((Tok::End, line, col));
                return Ok(out);
            };
            let tok = if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&d) = lx.chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    lx.bump();
                }
                Tok::Int(s.parse().expect("digits"))
            } else if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&d) = lx.chars.peek() {
                    if !(d.is_alphanumeric() || d == '_' || d == '\'') {
                        break;
                    }
                    s.push(d);
                    lx.bump();
                }
                Tok::Ident(s)
            } else if "+-*/^()".contains(c) {
                lx.bump();
                Tok::Sym(c)
            } else {
                return Err(ParseError {
                    line,
                    column: col,
                    kind: ParseErrorKind::Syntax(format!("unexpected `{c}`")),
                });
            };
            out.push((tok, line, col));
        }
    }

    fn bump(&mut self) {
        if let Some(c) = self.chars.next() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }
}

struct Parser<'v> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    vars: &'v Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (_, line, column) = self.toks[self.pos];
        ParseError { line, column, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<Poly, ParseError> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn natural(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let e = u32::try_from(&n).map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a natural-number exponent")),
        }
    }

    fn exponent(&mut self, base: Poly) -> Result<Poly, ParseError> {
        if self.eat('^') {
            let e = self.natural()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let (tok, line, column) = self.toks[self.pos].clone();
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                let value = if self.eat('/') {
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.pos += 1;
                            Rat::new(n, d)
                        }
                        _ => return Err(self.err("expected a positive denominator")),
                    }
                } else {
                    Rat::from_integer(n)
                };
                Ok(Poly::constant(self.vars, value))
            }
            Tok::Ident(name) => {
                let i = self.vars.index(&name).ok_or(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::UnknownVariable(name.clone()),
                })?;
                self.pos += 1;
                self.exponent(Poly::var_at(self.vars, i))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                self.exponent(inner)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            Tok::Sym(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text` as a polynomial in `vars`.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<Poly, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let out = p.expression()?;
    if *p.peek() != Tok::End {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rat::rat;

    #[test]
    fn zero_and_coefficients() {
        let v = Vars::parse("x y");
        assert!(parse_poly("0", &v).unwrap().is_zero());
        let p = parse_poly("3/4*y^8", &v).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&Monomial::from_exps(&[0, 8])), rat(3, 4));
    }

    #[test]
    fn format_is_canonical_grevlex() {
        let v = Vars::parse("x y z");
        let p = parse_poly("x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)", &v).unwrap();
        assert_eq!(p.to_string(), "x^10 + x^2*y^6 - 3*x^4*y^2*z^2 - 3*x^4*y^2 + z^6 + 3*z^4 + 3*z^2 + 1");
        assert_eq!(parse_poly(&p.to_string(), &v).unwrap(), p);
        let q = parse_poly("-x + 1/2", &v).unwrap();
        assert_eq!(q.to_string(), "-x + 1/2");
    }

    #[test]
    fn errors_carry_positions() {
        let v = Vars::parse("x y");
        let e = parse_poly("x +\n  q^2", &v).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("q".into()));
        let e = parse_poly("x + * y", &v).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(parse_poly("(x + y", &v).is_err());
        assert!(parse_poly("x y", &v).is_err());
        assert!(parse_poly("1/0", &v).is_err());
    }
}
