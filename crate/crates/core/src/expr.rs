//! Parser for polynomial, rational-function and vector-field expressions.
//!
//! ```text
//! field   := ['+' | '-'] fterm (('+' | '-') fterm)*  |  '0'
//! fterm   := [product] '@' ident
//! expr    := ['+' | '-'] product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ['^' ['-'] integer]
//! atom    := integer | ident | '(' expr ')'
//! ```
//!
//! Rationals are written as quotients (`1/2`); decimal literals are
//! rejected. `@v` stands for the partial derivative in `v`. Division is
//! only possible by products of linear forms, which are split using the
//! caller's hint forms together with any linear subexpression met while
//! parsing. Offsets in errors count characters from the start of input.

use std::fmt;

use num_bigint::BigInt;

use crate::poly::{LinForm, Poly, RatFn, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    At,
    End,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '@' => Tok::At,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                    return err(start, "decimal literals are not supported; write a quotient such as 1/2");
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().unwrap()), start));
                continue;
            }
            '.' => return err(start, "decimal literals are not supported; write a quotient such as 1/2"),
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => return err(start, format!("unexpected character '{}'", other)),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [String],
    hints: Vec<LinForm>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [String], hints: &[LinForm]) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            vars,
            hints: hints.to_vec(),
        })
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::RParen => err(self.offset(), "unbalanced ')'"),
            _ => err(self.offset(), "unexpected trailing input"),
        }
    }

    fn note(&mut self, r: &RatFn) {
        if let Some(p) = r.as_poly() {
            if let Some((f, _)) = LinForm::from_poly(p) {
                if !self.hints.contains(&f) {
                    self.hints.push(f);
                }
            }
        }
    }

    fn expr(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = &acc + &rhs;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
            self.note(&acc);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.divide(&acc, &rhs, at)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn divide(&self, a: &RatFn, b: &RatFn, at: usize) -> Result<RatFn, ParseError> {
        if b.is_zero() {
            return err(at, "division by zero");
        }
        a.checked_div(b, &self.hints)
            .or_else(|_| err(at, "divisor is not a product of linear forms"))
    }

    fn unary(&mut self) -> Result<RatFn, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFn, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.offset();
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let e_at = self.offset();
        let e = match self.bump() {
            Tok::Int(v) => v,
            _ => return err(e_at, "expected an integer exponent"),
        };
        let e: u32 = e
            .try_into()
            .or_else(|_| err(at, "exponent too large"))?;
        let p = base.pow(e);
        if negative {
            self.divide(&RatFn::one(self.n()), &p, at)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFn, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(v) => Ok(RatFn::constant(self.n(), Rational::from_integer(v))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(RatFn::from_poly(Poly::var(self.n(), i))),
                None => err(at, format!("unknown variable '{}'", name)),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                if self.bump() != Tok::RParen {
                    return err(close, "expected ')'");
                }
                self.note(&inner);
                Ok(inner)
            }
            Tok::End => err(at, "unexpected end of input"),
            Tok::At => err(at, "'@' is only allowed in vector-field expressions"),
            _ => err(at, "expected a number, variable or '('"),
        }
    }

    fn derivation_var(&mut self) -> Result<usize, ParseError> {
        let at = self.offset();
        if self.bump() != Tok::At {
            return err(at, "expected '@' followed by a variable");
        }
        let at = self.offset();
        match self.bump() {
            Tok::Ident(name) => self
                .vars
                .iter()
                .position(|v| *v == name)
                .map_or_else(|| err(at, format!("unknown variable '{}'", name)), Ok),
            _ => err(at, "expected a variable after '@'"),
        }
    }

    fn field_term(&mut self) -> Result<(RatFn, usize), ParseError> {
        if *self.peek() == Tok::At {
            let v = self.derivation_var()?;
            return Ok((RatFn::one(self.n()), v));
        }
        let coef = self.product()?;
        let v = self.derivation_var()?;
        Ok((coef, v))
    }

    fn field(&mut self) -> Result<Vec<RatFn>, ParseError> {
        let n = self.n();
        let mut out = vec![RatFn::zero(n); n];
        if self.toks.len() == 2 && self.toks[0].0 == Tok::Int(BigInt::from(0)) {
            self.bump();
            return Ok(out);
        }
        let mut sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -1
            }
            Tok::Plus => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let (c, v) = self.field_term()?;
            out[v] = if sign < 0 { &out[v] - &c } else { &out[v] + &c };
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
        }
        Ok(out)
    }
}

/// Parses a rational-function expression in `vars`.
pub fn parse_ratfn(src: &str, vars: &[String], hints: &[LinForm]) -> Result<RatFn, ParseError> {
    let mut p = Parser::new(src, vars, hints)?;
    let r = p.expr()?;
    p.expect_end()?;
    Ok(r)
}

/// Parses an expression that must reduce to a polynomial.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<Poly, ParseError> {
    let r = parse_ratfn(src, vars, &[])?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => err(0, "expression is not a polynomial"),
    }
}

/// Parses a homogeneous linear form, returning it with its scale.
pub fn parse_linform(src: &str, vars: &[String]) -> Result<(LinForm, Rational), ParseError> {
    let p = parse_poly(src, vars)?;
    if p.is_zero() {
        return err(0, "linear form is zero");
    }
    LinForm::from_poly(&p).map_or_else(|| err(0, "expression is not a homogeneous linear form"), Ok)
}

/// Parses a vector field `sum c_i @x_i` into its coefficient list.
pub fn parse_field(src: &str, vars: &[String], hints: &[LinForm]) -> Result<Vec<RatFn>, ParseError> {
    let mut p = Parser::new(src, vars, hints)?;
    let f = p.field()?;
    p.expect_end()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn rationals_as_quotients() {
        let r = parse_ratfn("-1/15", &vars(), &[]).unwrap();
        assert_eq!(r.constant_value(), Some(rat(-1, 15)));
        let e = parse_ratfn("0.5", &vars(), &[]).unwrap_err();
        assert_eq!(e.offset, 0);
    }

    #[test]
    fn precedence_and_powers() {
        let r = parse_poly("2*x^2 - x*y + 3", &vars()).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let expected = &(&x.pow(2).scale(&int(2)) - &(&x * &y)) + &Poly::constant(2, int(3));
        assert_eq!(r, expected);
        let s = parse_ratfn("x^-2", &vars(), &[]).unwrap();
        assert_eq!(s.degree(), Some(-2));
    }

    #[test]
    fn unicode_minus() {
        let a = parse_ratfn("x \u{2212} y", &vars(), &[]).unwrap();
        let b = parse_ratfn("x - y", &vars(), &[]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn division_by_expanded_product() {
        let r = parse_ratfn("y/(x^3*y - x*y^3)", &vars(), &[]).unwrap();
        assert_eq!(r.den_factors().len(), 3);
        assert!(parse_ratfn("1/(x^2 + y^2)", &vars(), &[]).is_err());
    }

    #[test]
    fn fields() {
        let f = parse_field("(1/x)@x + ((x)/(x-y))@x - ((y)/(x-y))@y", &vars(), &[]).unwrap();
        let g = parse_field("(1/x + x/(x - y))@x + (-y/(x - y))@y", &vars(), &[]).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_field("@y", &vars(), &[]).unwrap()[1], RatFn::one(2));
        assert!(parse_field("0", &vars(), &[]).unwrap().iter().all(RatFn::is_zero));
    }

    #[test]
    fn malformed_field_reports_offset() {
        let e = parse_field("@@x", &vars(), &[]).unwrap_err();
        assert_eq!(e.offset, 1);
        let e = parse_field("x@z", &vars(), &[]).unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_ratfn("(x + y", &vars(), &[]).unwrap_err();
        assert_eq!(e.offset, 6);
    }

    #[test]
    fn linear_forms() {
        let (f, s) = parse_linform("2*x - 2*y", &vars()).unwrap();
        assert_eq!(s, int(2));
        assert_eq!(f.coeffs(), &[int(1), int(-1)]);
        assert!(parse_linform("x + 1", &vars()).is_err());
    }
}
