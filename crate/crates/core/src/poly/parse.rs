//! Recursive-descent parser for the polynomial text grammar.
//!
//! Grammar: integer (optionally `a/b`) coefficients, `+ - * ^`, parentheses;
//! juxtaposition is forbidden and whitespace is insignificant.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::poly::Polynomial;
use crate::vars::Vars;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

struct Sp {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_tok(&mut self) -> Result<Sp> {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let at = |tok| Sp { tok, line, col };
        let Some(b) = self.peek() else {
            return Ok(at(Tok::Eof));
        };
        match b {
            b'+' => {
                self.bump();
                Ok(at(Tok::Plus))
            }
            b'-' => {
                self.bump();
                Ok(at(Tok::Minus))
            }
            b'*' => {
                self.bump();
                Ok(at(Tok::Star))
            }
            b'^' => {
                self.bump();
                Ok(at(Tok::Caret))
            }
            b'/' => {
                self.bump();
                Ok(at(Tok::Slash))
            }
            b'(' => {
                self.bump();
                Ok(at(Tok::LParen))
            }
            b')' => {
                self.bump();
                Ok(at(Tok::RParen))
            }
            b'0'..=b'9' => {
                let mut digits = String::new();
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    digits.push(self.bump().unwrap() as char);
                }
                Ok(at(Tok::Int(digits.parse().expect("digits"))))
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut name = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    name.push(self.bump().unwrap() as char);
                }
                Ok(at(Tok::Ident(name)))
            }
            other => Err(Error::Parse {
                line,
                col,
                msg: format!("unexpected character `{}`", other as char),
            }),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    cur: Sp,
    vars: &'a Vars,
    field: CoefficientField,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a Vars, field: CoefficientField) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let cur = lexer.next_tok()?;
        Ok(Parser {
            lexer,
            cur,
            vars,
            field,
        })
    }

    fn advance(&mut self) -> Result<()> {
        self.cur = self.lexer.next_tok()?;
        Ok(())
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.cur.line,
            col: self.cur.col,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.cur.tok {
            Tok::Minus => {
                negate = true;
                self.advance()?;
            }
            Tok::Plus => {
                self.advance()?;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.cur.tok {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.cur.tok {
                Tok::Star => {
                    self.advance()?;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                // Juxtaposition like `2x` or `x y` is forbidden.
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(self.err("expected operator (juxtaposition is not allowed)"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.cur.tok == Tok::Caret {
            self.advance()?;
            let Tok::Int(ref n) = self.cur.tok else {
                return Err(self.err("expected a nonnegative integer exponent"));
            };
            let e: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            if e > u16::MAX as u32 {
                return Err(self.err("exponent too large"));
            }
            self.advance()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.cur.tok.clone() {
            Tok::LParen => {
                self.advance()?;
                let e = self.expr()?;
                if self.cur.tok != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.advance()?;
                Ok(e)
            }
            Tok::Int(n) => {
                self.advance()?;
                // Optional rational literal `a/b`.
                if self.cur.tok == Tok::Slash {
                    self.advance()?;
                    let Tok::Int(ref d) = self.cur.tok else {
                        return Err(self.err("expected an integer denominator"));
                    };
                    let d = d.clone();
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    let c = self.field.from_ratio(&n, &d).map_err(|e| match e {
                        Error::NonRepresentableCoefficient(_) => Error::Parse {
                            line: self.cur.line,
                            col: self.cur.col,
                            msg: format!("coefficient {n}/{d} is not representable in the field"),
                        },
                        other => other,
                    })?;
                    self.advance()?;
                    return Ok(Polynomial::constant(self.vars, self.field, c));
                }
                let c = self
                    .field
                    .from_ratio(&n, &BigInt::from(1))
                    .expect("integer embeds");
                Ok(Polynomial::constant(self.vars, self.field, c))
            }
            Tok::Ident(name) => {
                let p = Polynomial::var(self.vars, self.field, &name).map_err(|_| Error::Parse {
                    line: self.cur.line,
                    col: self.cur.col,
                    msg: format!("unknown variable `{name}`"),
                })?;
                self.advance()?;
                Ok(p)
            }
            _ => Err(self.err("expected a coefficient, variable or `(`")),
        }
    }
}

pub fn parse_polynomial(text: &str, vars: &Vars, field: CoefficientField) -> Result<Polynomial> {
    let mut p = Parser::new(text, vars, field)?;
    let poly = p.expr()?;
    if p.cur.tok != Tok::Eof {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableSet;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn commutator_entry_parses_to_two_terms() {
        let names: Vec<String> = ["x11", "x12", "x21", "x22", "y11", "y12", "y21", "y22"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let v = VariableSet::new(names).unwrap();
        let f = Polynomial::parse("x12*y21 - y12*x21", &v, q()).unwrap();
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn zero_and_cancellation() {
        let v = VariableSet::new(["x"]).unwrap();
        assert!(Polynomial::parse("0", &v, q()).unwrap().is_zero());
        assert!(Polynomial::parse("x^2 - x^2", &v, q()).unwrap().is_zero());
    }

    #[test]
    fn error_positions() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        match Polynomial::parse("x + 2y", &v, q()) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 6);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            Polynomial::parse("x + zz", &v, q()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn fp_denominator_must_be_invertible() {
        let v = VariableSet::new(["x"]).unwrap();
        let f7 = CoefficientField::prime(7).unwrap();
        assert!(Polynomial::parse("1/7*x", &v, f7).is_err());
        let ok = Polynomial::parse("1/2*x", &v, f7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(ok, Polynomial::parse("4*x", &v, f7).unwrap());
    }

    #[test]
    fn parentheses_and_unary_minus() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let f = Polynomial::parse("-(x - y)^2 + x^2 + y^2", &v, q()).unwrap();
        assert_eq!(f, Polynomial::parse("2*x*y", &v, q()).unwrap());
    }
}
