//! Parser for tower elements: `+ - * / ^`, parentheses, `sqrt(..)`,
//! integer literals (reduced mod 2) and variable names.

use super::ratfn::RatFn;
use super::tower::{TowerError, TowerField};
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Tower(#[from] TowerError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Int(text.parse().map_err(|_| ParseError::Unexpected(c, start))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::Unexpected(c, i));
        }
    }
    Ok(out)
}

/// Variable names used in `s`, in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::new();
    for t in tokenize(s)? {
        if let Tok::Ident(n) = t {
            if n != "sqrt" && !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a TowerField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.term()?;
        while self.eat('+') || self.eat('-') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(ParseError::DivisionByZero);
                }
                acc = acc.div(&d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn, ParseError> {
        if self.eat('-') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Int(e)) = self.peek().cloned() else { return Err(ParseError::Expected("integer exponent")) };
            self.pos += 1;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(ParseError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn, ParseError> {
        match self.peek().cloned() {
            None => Err(ParseError::Eof),
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if n % 2 == 0 { RatFn::zero() } else { RatFn::one() })
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err(ParseError::Expected("("));
                }
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Expected(")"));
                }
                Ok(self.field.sqrt(&inner)?)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(self.field.transcendental(&name)?)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Expected(")"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(ParseError::Unexpected(c, self.pos)),
        }
    }
}

pub fn parse(s: &str, field: &TowerField) -> Result<RatFn, ParseError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, field };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Expected("end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let k = TowerField::base(&["t"]);
        let x = parse("(t+1)/t", &k).unwrap();
        assert_eq!(k.format(&x), "(t + 1)/t");
        assert_eq!(parse(&k.format(&x), &k).unwrap(), x);
        assert!(parse("sqrt(t)", &k).is_err());
        let e = k.extend_sqrt("t").unwrap();
        let s = parse("sqrt(t)", &e).unwrap();
        assert_eq!(s, e.generator("t").unwrap());
        assert_eq!(parse("t^-1 + 3", &k).unwrap(), parse("(1+t)/t", &k).unwrap());
        assert_eq!(identifiers("t0/(t2+1)").unwrap(), vec!["t0", "t2"]);
        assert!(parse("x", &k).is_err());
    }
}
