//! Recursive-descent parser for the canonical expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := '-'? integer | '(' '-'? integer ')'
//! atom   := integer | 'z' | 'w' | '(' expr ')'
//! ```
//!
//! The parser produces an [`Expr`] tree which is then folded into any
//! [`ExprField`] (Q(z) or Q(z)(w)).

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(char, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

/// A field an [`Expr`] can be evaluated in.
pub trait ExprField: Sized {
    fn from_integer(n: &BigInt) -> Self;
    /// `None` if the variable is not allowed in this field.
    fn variable(name: char) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` on division by zero.
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn powi(&self, e: i64) -> Option<Self>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Int(usize, usize),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '0'..='9' => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        end = j + 1;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(start, end), start));
            }
            'z' | 'w' => {
                out.push((Tok::Var(c), i));
                it.next();
            }
            '+' => {
                out.push((Tok::Plus, i));
                it.next();
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, i));
                it.next();
            }
            '*' => {
                out.push((Tok::Star, i));
                it.next();
            }
            '/' => {
                out.push((Tok::Slash, i));
                it.next();
            }
            '^' => {
                out.push((Tok::Caret, i));
                it.next();
            }
            '(' => {
                out.push((Tok::LParen, i));
                it.next();
            }
            ')' => {
                out.push((Tok::RParen, i));
                it.next();
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> (Tok, usize) {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                (Tok::Star, _) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                (Tok::Slash, at) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().0 == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let (Tok::Caret, at) = self.peek() {
            self.bump();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e, at));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.peek().0 == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = self.peek().0 == Tok::Minus;
        if neg {
            self.bump();
        }
        let (tok, at) = self.bump();
        let Tok::Int(s, e) = tok else {
            return self.err(at, "expected an integer exponent");
        };
        let v: i64 = match self.src[s..e].parse() {
            Ok(v) if v <= 4096 => v,
            _ => return self.err(at, "exponent out of range"),
        };
        if paren {
            let (t, at) = self.bump();
            if t != Tok::RParen {
                return self.err(at, "expected ')' after exponent");
            }
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Int(s, e) => Ok(Expr::Int(self.src[s..e].parse().expect("digits parse as an integer"))),
            Tok::Var(c) => Ok(Expr::Var(c, at)),
            Tok::LParen => {
                let inner = self.expr()?;
                let (t, at) = self.bump();
                if t != Tok::RParen {
                    return self.err(at, "expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.err(at, "unexpected end of input"),
            _ => self.err(at, "expected a number, variable or '('"),
        }
    }
}

/// Parses `src` into an expression tree.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.expr()?;
    let (t, at) = p.peek();
    if t != Tok::End {
        return p.err(at, "unexpected trailing input");
    }
    Ok(e)
}

/// Folds an expression into `F`.
pub fn eval_expr<F: ExprField>(e: &Expr) -> Result<F, ParseError> {
    Ok(match e {
        Expr::Int(n) => F::from_integer(n),
        Expr::Var(c, at) => F::variable(*c).ok_or_else(|| ParseError {
            position: *at,
            message: format!("variable '{c}' is not allowed here"),
        })?,
        Expr::Neg(a) => eval_expr::<F>(a)?.neg(),
        Expr::Add(a, b) => eval_expr::<F>(a)?.add(&eval_expr::<F>(b)?),
        Expr::Sub(a, b) => eval_expr::<F>(a)?.sub(&eval_expr::<F>(b)?),
        Expr::Mul(a, b) => eval_expr::<F>(a)?.mul(&eval_expr::<F>(b)?),
        Expr::Div(a, b, at) => eval_expr::<F>(a)?.div(&eval_expr::<F>(b)?).ok_or_else(|| ParseError {
            position: *at,
            message: "division by zero".into(),
        })?,
        Expr::Pow(a, k, at) => eval_expr::<F>(a)?.powi(*k).ok_or_else(|| ParseError {
            position: *at,
            message: "negative power of zero".into(),
        })?,
    })
}

/// Parses and evaluates in one step.
pub fn parse_in<F: ExprField>(src: &str) -> Result<F, ParseError> {
    eval_expr(&parse_expr(src)?)
}
