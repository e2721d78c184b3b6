//! Text syntax for polynomials and module vectors.
//!
//! Polynomials: terms joined by `+`/`-`, integer or `a/b` rational
//! coefficients, `^` powers, and products written with `*` or by
//! juxtaposition (`x^2y^3` and `x^2*y^3` read the same). Vectors combine
//! polynomial coefficients with basis symbols `e1..en`, or use the bracket
//! form `[f1, ..., fn]`; both spellings of the same value are equal after
//! parsing. All errors carry the line/column of the offending token.
//!
//! The lexer is shared with the session-file parser in the CLI, which layers
//! statement keywords on top of the same token stream.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::module::{FreeModule, ModuleVector};
use crate::ring::{PolyRing, Polynomial};

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, msg: msg.into() }
    }
}

/// One lexical token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// Token plus its source position.
#[derive(Debug, Clone)]
pub struct SpannedTok {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Whole-input tokenizer with one token of lookahead.
///
/// `#` starts a comment running to end of line. Symbols are the single
/// characters `+ - * / ^ ( ) [ ] , ; = : < >`.
pub struct Lexer {
    toks: Vec<SpannedTok>,
    pos: usize,
}

impl Lexer {
    pub fn new(src: &str) -> Result<Lexer, ParseError> {
        let mut toks = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut it = src.chars().peekable();
        while let Some(&c) = it.peek() {
            if c == '\n' {
                it.next();
                line += 1;
                col = 1;
            } else if c.is_whitespace() {
                it.next();
                col += 1;
            } else if c == '#' {
                while it.peek().is_some_and(|&c2| c2 != '\n') {
                    it.next();
                    col += 1;
                }
            } else if c.is_ascii_digit() {
                let (tl, tc) = (line, col);
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    it.next();
                    col += 1;
                }
                let n: BigInt = s.parse().expect("digits only");
                toks.push(SpannedTok { tok: Tok::Int(n), line: tl, col: tc });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let (tl, tc) = (line, col);
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    it.next();
                    col += 1;
                }
                toks.push(SpannedTok { tok: Tok::Ident(s), line: tl, col: tc });
            } else if "+-*/^()[],;=:<>".contains(c) {
                toks.push(SpannedTok { tok: Tok::Sym(c), line, col });
                it.next();
                col += 1;
            } else {
                return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
            }
        }
        toks.push(SpannedTok { tok: Tok::Eof, line, col });
        Ok(Lexer { toks, pos: 0 })
    }

    pub fn peek(&self) -> &SpannedTok {
        &self.toks[self.pos]
    }

    pub fn bump(&mut self) -> SpannedTok {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    /// Consumes the symbol if it is next; reports whether it did.
    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`, found {}", self.peek().tok)))
        }
    }

    /// Consumes the exact keyword identifier if it is next.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{kw}`, found {}", self.peek().tok)))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match &self.peek().tok {
            Tok::Ident(_) => {
                let t = self.bump();
                match t.tok {
                    Tok::Ident(s) => Ok((s, t.line, t.col)),
                    _ => unreachable!(),
                }
            }
            other => Err(self.error_here(format!("expected a name, found {other}"))),
        }
    }

    pub fn expect_int(&mut self) -> Result<(BigInt, usize, usize), ParseError> {
        match &self.peek().tok {
            Tok::Int(_) => {
                let t = self.bump();
                match t.tok {
                    Tok::Int(n) => Ok((n, t.line, t.col)),
                    _ => unreachable!(),
                }
            }
            other => Err(self.error_here(format!("expected an integer, found {other}"))),
        }
    }

    /// Error anchored at the current token.
    pub fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(t.line, t.col, msg)
    }
}

/// Intermediate expression value: scalars and vectors mix only through
/// scalar-by-vector multiplication.
enum Value {
    Scalar(Polynomial),
    Vector(ModuleVector),
}

struct ExprParser<'a> {
    lx: &'a mut Lexer,
    ring: Arc<PolyRing>,
    module: Option<Arc<FreeModule>>,
}

impl ExprParser<'_> {
    fn parse_expr(&mut self) -> Result<Value, ParseError> {
        let negate = self.lx.eat_sym('-');
        let mut acc = self.parse_term()?;
        if negate {
            acc = match acc {
                Value::Scalar(p) => Value::Scalar(p.neg()),
                Value::Vector(v) => Value::Vector(v.neg()),
            };
        }
        loop {
            let (sub, pos) = match self.lx.peek() {
                t if t.tok == Tok::Sym('+') => (false, (t.line, t.col)),
                t if t.tok == Tok::Sym('-') => (true, (t.line, t.col)),
                _ => break,
            };
            self.lx.bump();
            let rhs = self.parse_term()?;
            acc = match (acc, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => {
                    Value::Scalar(if sub { a.sub(&b) } else { a.add(&b) })
                }
                (Value::Vector(a), Value::Vector(b)) => {
                    Value::Vector(if sub { a.sub(&b) } else { a.add(&b) })
                }
                _ => {
                    return Err(ParseError::new(
                        pos.0,
                        pos.1,
                        "cannot add a polynomial and a vector",
                    ))
                }
            };
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.lx.peek().tok, Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn parse_term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            let t = self.lx.peek();
            let (pos, explicit_div) = ((t.line, t.col), t.tok == Tok::Sym('/'));
            if t.tok == Tok::Sym('*') || explicit_div {
                self.lx.bump();
            } else if !self.starts_atom() {
                break;
            }
            let rhs = self.parse_factor()?;
            acc = if explicit_div {
                self.divide(acc, rhs, pos)?
            } else {
                self.multiply(acc, rhs, pos)?
            };
        }
        Ok(acc)
    }

    fn multiply(
        &self,
        a: Value,
        b: Value,
        pos: (usize, usize),
    ) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Scalar(f), Value::Scalar(g)) => Value::Scalar(f.mul(&g)),
            (Value::Scalar(f), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(f)) => {
                Value::Vector(v.scale(&f))
            }
            (Value::Vector(_), Value::Vector(_)) => {
                return Err(ParseError::new(pos.0, pos.1, "cannot multiply two vectors"))
            }
        })
    }

    fn divide(&self, a: Value, b: Value, pos: (usize, usize)) -> Result<Value, ParseError> {
        let c = match &b {
            Value::Scalar(p) if p.is_constant() && !p.is_zero() => {
                let (_, c) = p.leading().unwrap();
                c.recip()
            }
            Value::Scalar(p) if p.is_zero() => {
                return Err(ParseError::new(pos.0, pos.1, "division by zero"))
            }
            _ => {
                return Err(ParseError::new(
                    pos.0,
                    pos.1,
                    "division is only defined by nonzero constants",
                ))
            }
        };
        Ok(match a {
            Value::Scalar(p) => Value::Scalar(p.scale(&c)),
            Value::Vector(v) => {
                let m = crate::ring::Monomial::one(self.ring.num_vars());
                Value::Vector(v.scale_term(&c, &m))
            }
        })
    }

    fn parse_factor(&mut self) -> Result<Value, ParseError> {
        let base = self.parse_atom()?;
        if !self.lx.eat_sym('^') {
            return Ok(base);
        }
        let (n, line, col) = self.lx.expect_int()?;
        let exp = u32::try_from(&n)
            .map_err(|_| ParseError::new(line, col, format!("exponent `{n}` is too large")))?;
        match base {
            Value::Scalar(p) => Ok(Value::Scalar(p.pow(exp))),
            Value::Vector(_) => {
                Err(ParseError::new(line, col, "cannot raise a vector to a power"))
            }
        }
    }

    fn parse_atom(&mut self) -> Result<Value, ParseError> {
        let t = self.lx.peek().clone();
        match &t.tok {
            Tok::Int(_) => {
                let n = match self.lx.bump().tok {
                    Tok::Int(n) => n,
                    _ => unreachable!(),
                };
                Ok(Value::Scalar(Polynomial::constant(
                    &self.ring,
                    BigRational::from_integer(n),
                )))
            }
            Tok::Ident(name) => {
                self.lx.bump();
                if let Some(i) = self.ring.var_index(name) {
                    return Ok(Value::Scalar(Polynomial::variable(&self.ring, i)));
                }
                if let Some(module) = &self.module {
                    if let Some(idx) = basis_index(name) {
                        if idx == 0 || idx > module.rank() {
                            return Err(ParseError::new(
                                t.line,
                                t.col,
                                format!(
                                    "basis index out of range: `{name}` in a rank-{} module",
                                    module.rank()
                                ),
                            ));
                        }
                        return Ok(Value::Vector(ModuleVector::basis(module, idx - 1)));
                    }
                }
                Err(ParseError::new(t.line, t.col, format!("unknown identifier `{name}`")))
            }
            Tok::Sym('(') => {
                self.lx.bump();
                let v = self.parse_expr()?;
                self.lx.expect_sym(')')?;
                Ok(v)
            }
            Tok::Sym('[') => {
                let module = match &self.module {
                    Some(m) => m.clone(),
                    None => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            "bracket vectors are not allowed in a polynomial",
                        ))
                    }
                };
                self.lx.bump();
                let mut comps = Vec::new();
                loop {
                    let at = (self.lx.peek().line, self.lx.peek().col);
                    match self.parse_expr()? {
                        Value::Scalar(p) => comps.push(p),
                        Value::Vector(_) => {
                            return Err(ParseError::new(
                                at.0,
                                at.1,
                                "bracket components must be polynomials",
                            ))
                        }
                    }
                    if !self.lx.eat_sym(',') {
                        break;
                    }
                }
                self.lx.expect_sym(']')?;
                if comps.len() != module.rank() {
                    return Err(ParseError::new(
                        t.line,
                        t.col,
                        format!(
                            "bracket vector has {} components; module rank is {}",
                            comps.len(),
                            module.rank()
                        ),
                    ));
                }
                Ok(Value::Vector(ModuleVector::from_components(&module, comps)))
            }
            other => Err(self.lx.error_here(format!("expected an expression, found {other}"))),
        }
    }
}

/// `e7` → `Some(7)`; anything else → `None`.
fn basis_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses a polynomial expression from an open token stream, stopping at the
/// first token that cannot extend the expression.
pub fn parse_polynomial_tokens(
    lx: &mut Lexer,
    ring: &Arc<PolyRing>,
) -> Result<Polynomial, ParseError> {
    let mut p = ExprParser { lx, ring: ring.clone(), module: None };
    match p.parse_expr()? {
        Value::Scalar(f) => Ok(f),
        Value::Vector(_) => unreachable!("vectors cannot appear without a module"),
    }
}

/// Parses a vector expression from an open token stream. A scalar result is
/// accepted when it is zero (any rank) or the module has rank 1.
pub fn parse_vector_tokens(
    lx: &mut Lexer,
    module: &Arc<FreeModule>,
) -> Result<ModuleVector, ParseError> {
    let at = (lx.peek().line, lx.peek().col);
    let mut p = ExprParser { lx, ring: module.ring().clone(), module: Some(module.clone()) };
    match p.parse_expr()? {
        Value::Vector(v) => Ok(v),
        Value::Scalar(f) if f.is_zero() => Ok(ModuleVector::zero(module)),
        Value::Scalar(f) if module.rank() == 1 => {
            Ok(ModuleVector::basis(module, 0).scale(&f))
        }
        Value::Scalar(_) => Err(ParseError::new(
            at.0,
            at.1,
            "expected a vector, found a polynomial (use e1..en or bracket form)",
        )),
    }
}

fn expect_consumed(lx: &Lexer) -> Result<(), ParseError> {
    if lx.at_eof() {
        Ok(())
    } else {
        Err(lx.error_here(format!("unexpected {} after expression", lx.peek().tok)))
    }
}

/// Parses a complete string as one polynomial.
pub fn parse_polynomial(src: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer::new(src)?;
    let p = parse_polynomial_tokens(&mut lx, ring)?;
    expect_consumed(&lx)?;
    Ok(p)
}

/// Parses a complete string as one module vector.
pub fn parse_vector(src: &str, module: &Arc<FreeModule>) -> Result<ModuleVector, ParseError> {
    let mut lx = Lexer::new(src)?;
    let v = parse_vector_tokens(&mut lx, module)?;
    expect_consumed(&lx)?;
    Ok(v)
}
