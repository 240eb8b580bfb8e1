//! A small expression language for rational generating functions in `t`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := '-' factor | base ('^' exponent)?
//! base     := rational | 't' | '(' expr ')'
//! rational := int ('/' int)?
//! exponent := '-'? int | '(' '-'? int ')'
//! ```
//!
//! `int/int` is read as a single literal, so `2/3^2` is `(2/3)^2` while
//! `t/2` and `1/(1-t)` are divisions. Unary minus binds looser than `^`:
//! `-t^2` is `-(t^2)`. Negative exponents divide by the positive power.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fps::{fmt_rational, Rational, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesAst {
    /// A non-negative rational literal.
    Rational(Rational),
    Var,
    Neg(Box<SeriesAst>),
    Add(Box<SeriesAst>, Box<SeriesAst>),
    Sub(Box<SeriesAst>, Box<SeriesAst>),
    Mul(Box<SeriesAst>, Box<SeriesAst>),
    Div(Box<SeriesAst>, Box<SeriesAst>),
    Pow(Box<SeriesAst>, i64),
}

impl SeriesAst {
    pub fn int(n: i64) -> Self {
        SeriesAst::Rational(Rational::from_integer(BigInt::from(n)))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }

    fn at_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    fn expr(&mut self) -> Result<SeriesAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = SeriesAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = SeriesAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<SeriesAst> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = SeriesAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = SeriesAst::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<SeriesAst> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(SeriesAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(SeriesAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        let v = self.int()?;
        let v: i64 = match i64::try_from(v) {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent out of range");
            }
        };
        if paren {
            self.expect(b')')?;
        }
        Ok(if neg { -v } else { v })
    }

    fn base(&mut self) -> Result<SeriesAst> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(SeriesAst::Var)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if self.at_digit() {
                        let den_pos = self.pos;
                        let den = self.int()?;
                        if den.is_zero() {
                            self.pos = den_pos;
                            return self.err("zero denominator in rational literal");
                        }
                        return Ok(SeriesAst::Rational(Rational::new(num, den)));
                    }
                    self.pos = save;
                }
                Ok(SeriesAst::Rational(Rational::from_integer(num)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> Result<SeriesAst> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(ast)
}

fn eval_at(ast: &SeriesAst, w: usize) -> Result<Series> {
    Ok(match ast {
        SeriesAst::Rational(q) => Series::constant(q.clone(), w),
        SeriesAst::Var => Series::var(w),
        SeriesAst::Neg(a) => -&eval_at(a, w)?,
        SeriesAst::Add(a, b) => &eval_at(a, w)? + &eval_at(b, w)?,
        SeriesAst::Sub(a, b) => &eval_at(a, w)? - &eval_at(b, w)?,
        SeriesAst::Mul(a, b) => &eval_at(a, w)? * &eval_at(b, w)?,
        SeriesAst::Div(a, b) => eval_at(a, w)?.div(&eval_at(b, w)?)?,
        SeriesAst::Pow(a, e) => {
            let base = eval_at(a, w)?;
            let p = base.pow(e.unsigned_abs() as u32);
            if *e < 0 {
                p.recip()?
            } else {
                p
            }
        }
    })
}

/// Evaluates to a series known exactly up to `t^precision`. Divisions by
/// series of positive order shed coefficients, so the working precision is
/// raised until the result reaches the requested precision.
pub fn evaluate(ast: &SeriesAst, precision: usize) -> Result<Series> {
    let cap = 4 * precision + 64;
    let mut w = precision;
    loop {
        match eval_at(ast, w) {
            Ok(s) if s.precision() >= precision => return Ok(s.truncate(precision)),
            Ok(s) => {
                let deficit = precision - s.precision();
                w += deficit;
                if w > cap {
                    return Err(Error::Precision {
                        needed: precision,
                        available: s.precision(),
                    });
                }
            }
            // A divisor may look like zero (or of too high order) only because
            // the working precision is too small to see its first term.
            Err(e @ (Error::ZeroDivisor | Error::DivisionOrder { .. } | Error::Precision { .. })) => {
                if w >= cap {
                    return Err(e);
                }
                w = (2 * w + 1).min(cap);
            }
            Err(e) => return Err(e),
        }
    }
}

pub fn evaluate_str(text: &str, precision: usize) -> Result<Series> {
    evaluate(&parse(text)?, precision)
}

/// Fully parenthesised rendering that parses back to the same tree.
impl fmt::Display for SeriesAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesAst::Rational(q) => {
                if q.denom().is_one() && !q.is_negative() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "({})", fmt_rational(q))
                }
            }
            SeriesAst::Var => write!(f, "t"),
            SeriesAst::Neg(a) => write!(f, "(-{a})"),
            SeriesAst::Add(a, b) => write!(f, "({a}+{b})"),
            SeriesAst::Sub(a, b) => write!(f, "({a}-{b})"),
            SeriesAst::Mul(a, b) => write!(f, "({a}*{b})"),
            // a bare integer after '/' would merge into a rational literal
            SeriesAst::Div(a, b) if matches!(**b, SeriesAst::Rational(_)) => write!(f, "({a}/({b}))"),
            SeriesAst::Div(a, b) => write!(f, "({a}/{b})"),
            SeriesAst::Pow(a, e) => write!(f, "({a}^{e})"),
        }
    }
}
