//! Recursive-descent parser for the scalar expression language.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)*
//! atom    := number | identifier | '(' sum ')'
//! ```

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::symbolic::{parse_rational, render_rational, Context, Ctx, Rational, ScalarField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(Rational),
    Coord(usize),
    Generator(usize),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a Context,
}

pub fn parse_expression(text: &str, ctx: &Context) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0, ctx };
    p.skip_ws();
    if p.pos >= text.len() {
        return Err(p.error("empty expression"));
    }
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(&format!("unexpected `{}`", p.peek_char().unwrap_or(' '))));
    }
    Ok(e)
}

/// Parses and lowers to a canonical field.
pub fn parse_field(text: &str, ctx: &Ctx) -> Result<ScalarField> {
    parse_expression(text, ctx)?.lower(ctx)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek_char() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Sum(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Difference(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Product(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Quotient(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.error("exponent must be a non-negative integer"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "exponent too large".into(),
            })?;
            base = Expr::Power(Box::new(base), e);
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek_char() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_char() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let lit = self.take_while(|c| c.is_ascii_digit() || c == '.');
                parse_rational(lit).map(Expr::Literal).ok_or(Error::Syntax {
                    offset: start,
                    message: format!("malformed number `{lit}`"),
                })
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                let dim = self.ctx.dim();
                match self.ctx.lookup(name) {
                    Some(v) if v < dim => Ok(Expr::Coord(v)),
                    Some(v) => Ok(Expr::Generator(v - dim)),
                    None => Err(Error::UnknownIdentifier {
                        name: name.to_string(),
                        offset: start,
                    }),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }
}

impl Expr {
    pub fn lower(&self, ctx: &Ctx) -> Result<ScalarField> {
        Ok(match self {
            Expr::Literal(q) => ScalarField::constant(ctx, q.clone()),
            Expr::Coord(i) => ScalarField::coord(ctx, *i),
            Expr::Generator(k) => ScalarField::generator(ctx, *k),
            Expr::Neg(a) => -a.lower(ctx)?,
            Expr::Sum(a, b) => a.lower(ctx)? + b.lower(ctx)?,
            Expr::Difference(a, b) => a.lower(ctx)? - b.lower(ctx)?,
            Expr::Product(a, b) => a.lower(ctx)? * b.lower(ctx)?,
            Expr::Quotient(a, b) => a.lower(ctx)?.checked_div(&b.lower(ctx)?)?,
            Expr::Power(a, e) => a.lower(ctx)?.pow(*e as i32)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) | Expr::Difference(..) => 1,
            Expr::Product(..) | Expr::Quotient(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Power(..) => 4,
            Expr::Literal(q) if !q.is_integer() => 2,
            Expr::Literal(q) if q.is_negative() => 3,
            _ => 5,
        }
    }

    /// Renders with the given identifier names and minimal parentheses.
    pub fn render(&self, ctx: &Context) -> String {
        let mut s = String::new();
        self.write(ctx, &mut s);
        s
    }

    fn write(&self, ctx: &Context, out: &mut String) {
        let child = |e: &Expr, need: bool, out: &mut String| {
            if need {
                out.push('(');
                e.write(ctx, out);
                out.push(')');
            } else {
                e.write(ctx, out);
            }
        };
        let p = self.precedence();
        match self {
            Expr::Literal(q) => {
                if q.is_zero() {
                    out.push('0')
                } else {
                    out.push_str(&render_rational(q))
                }
            }
            Expr::Coord(i) => out.push_str(&ctx.coords()[*i]),
            Expr::Generator(k) => out.push_str(&ctx.generators()[*k].name),
            Expr::Neg(a) => {
                out.push('-');
                child(a, a.precedence() < 3, out);
            }
            Expr::Sum(a, b) | Expr::Difference(a, b) | Expr::Product(a, b) | Expr::Quotient(a, b) => {
                let op = match self {
                    Expr::Sum(..) => " + ",
                    Expr::Difference(..) => " - ",
                    Expr::Product(..) => "*",
                    _ => "/",
                };
                child(a, a.precedence() < p, out);
                out.push_str(op);
                child(b, b.precedence() <= p, out);
            }
            Expr::Power(a, e) => {
                child(a, a.precedence() < 4, out);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}
