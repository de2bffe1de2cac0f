//! Parser for the polynomial expression grammar used by task files:
//! integer/rational literals, named variables, `+ - * ^` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::mpoly::MPoly;
use super::rational::Rational;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
}

/// Parses `text` into a polynomial over Q whose variable `i` is `vars[i]`.
/// `line`/`column` locate the text inside a larger file for error reports.
pub fn parse_poly(text: &str, vars: &[&str], line: usize, column: usize) -> Result<MPoly<Rational>> {
    let toks = tokenize(text, line, column)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        line,
        column,
        len: text.chars().count(),
    };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        let (col, _) = &p.toks[p.pos];
        return Err(p.err(*col, "unexpected trailing input"));
    }
    Ok(poly)
}

fn tokenize(text: &str, line: usize, column: usize) -> Result<Vec<(usize, Tok)>> {
    let mut lx = Lexer {
        chars: text.chars().enumerate().collect(),
        pos: 0,
    };
    let mut out = Vec::new();
    while lx.pos < lx.chars.len() {
        let (i, c) = lx.chars[lx.pos];
        if c.is_whitespace() {
            lx.pos += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            let mut s = String::new();
            while lx.pos < lx.chars.len() && lx.chars[lx.pos].1.is_ascii_digit() {
                s.push(lx.chars[lx.pos].1);
                lx.pos += 1;
            }
            out.push((start, Tok::Num(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut s = String::new();
            while lx.pos < lx.chars.len()
                && (lx.chars[lx.pos].1.is_ascii_alphanumeric() || lx.chars[lx.pos].1 == '_')
            {
                s.push(lx.chars[lx.pos].1);
                lx.pos += 1;
            }
            out.push((start, Tok::Ident(s)));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Op(c)));
            lx.pos += 1;
        } else if c == '\u{2212}' {
            out.push((i, Tok::Op('-')));
            lx.pos += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: column + i,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'v> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'v [&'v str],
    line: usize,
    column: usize,
    len: usize,
}

impl Parser<'_> {
    fn err(&self, col: usize, msg: &str) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column + col,
            message: msg.to_string(),
        }
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(c, _)| *c)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly<Rational>> {
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek_op() {
            negate = c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.factor()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly<Rational>> {
        let base = self.primary()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let col = self.here();
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) => {
                    let e: u64 = n
                        .try_into()
                        .map_err(|_| self.err(col, "exponent too large"))?;
                    if e > 64 {
                        return Err(self.err(col, "exponent too large"));
                    }
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err(col, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MPoly<Rational>> {
        let col = self.here();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if self.peek_op() == Some('/') {
                    self.pos += 1;
                    let dcol = self.here();
                    match self.toks.get(self.pos) {
                        Some((_, Tok::Num(d))) if *d != BigInt::from(0) => {
                            q /= BigRational::from_integer(d.clone());
                            self.pos += 1;
                        }
                        _ => return Err(self.err(dcol, "expected a nonzero integer denominator")),
                    }
                }
                Ok(MPoly::constant(q))
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(i)),
                    None => Err(self.err(col, &format!("unknown variable {name:?}"))),
                }
            }
            Some((_, Tok::Op('('))) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.err(col, "expected a number, variable or '('")),
            None => Err(self.err(col, "unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    const V: &[&str] = &["x0", "x1", "x2", "x3", "t"];

    #[test]
    fn parses_sections() {
        let p = parse_poly("x0^2 - t*x1^2", V, 1, 1).unwrap();
        assert_eq!(p.fmt_with(V), "x0^2 - x1^2*t");
        let p = parse_poly("(x0 - x1)*(x0 + x1) + 3/2", V, 1, 1).unwrap();
        assert_eq!(p.constant_term(), rat(3, 2));
    }

    #[test]
    fn rejects_malformed() {
        let e = parse_poly("x0^^2", V, 3, 10).unwrap_err();
        match e {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 13);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x7", V, 1, 1).is_err());
        assert!(parse_poly("(x0", V, 1, 1).is_err());
        assert!(parse_poly("1/0", V, 1, 1).is_err());
    }
}
