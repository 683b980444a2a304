//! Concrete syntax for input classes `f`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := INT ('^' exponent)?
//! atom     := INT | INT '/' INT | 'x' INT | 's' '[' INT ']' '(' NAME ')'
//!           | 'c' '[' INT ']' '(' NAME ')' | 'c1' '(' NAME ')'
//!           | 'schur' '[' INT (',' INT)* ']' '(' 'x' ')' | '(' expr ')'
//! ```
//!
//! `s[i](B)` and `c[i](B)` are Segre and Chern classes of a bundle `B`;
//! `c1(L)` is the class of the twisting line bundle and `schur[λ](x)` the
//! Schur polynomial in all variables.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeffring::{chern_from_segre, ClassPoly, Rational, TWIST_BUNDLE};
use crate::error::{Error, Result};
use crate::geometry::Partition;
use crate::tpoly::{schur_in_t, TPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    /// `x_i`, 1-based.
    Var(usize),
    Segre { index: u32, bundle: String },
    Chern { index: u32, bundle: String },
    Schur(Partition),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Rat(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(i) => format!("integer `{i}`"),
            Tok::Rat(r) => format!("number `{r}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn parse_err(column: usize, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Parse {
        column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, col));
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let numer: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let denom: BigInt = chars[dstart..i].iter().collect::<String>().parse().unwrap();
                if denom.is_zero() {
                    return Err(parse_err(dstart + 1, "zero denominator", &["non-zero integer"]));
                }
                out.push((Tok::Rat(Rational::new(numer, denom)), col));
            } else {
                out.push((Tok::Int(numer), col));
            }
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        return Err(parse_err(col, format!("unexpected character `{ch}`"), &[]));
    }
    out.push((Tok::Eof, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    d: usize,
    open_parens: Vec<usize>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        if *self.peek() == Tok::Eof && !self.open_parens.is_empty() {
            return parse_err(self.col(), "unbalanced parenthesis", expected);
        }
        parse_err(self.col(), format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<usize> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        match self.peek().clone() {
            Tok::Int(i) => {
                let col = self.col();
                self.bump();
                u32::try_from(&i).map_err(|_| parse_err(col, format!("{what} {i} is too large"), &[]))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let col = self.col();
        let base = self.small_int("exponent")?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return base
                .checked_pow(e)
                .ok_or_else(|| parse_err(col, "exponent overflows", &[]));
        }
        Ok(base)
    }

    fn bundle_arg(&mut self) -> Result<String> {
        self.expect(Tok::LParen, &["`(`"])?;
        let name = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                s
            }
            _ => return Err(self.unexpected(&["bundle name"])),
        };
        self.expect(Tok::RParen, &["`)`"])?;
        Ok(name)
    }

    fn bracket_index(&mut self) -> Result<u32> {
        self.expect(Tok::LBracket, &["`[`"])?;
        let i = self.small_int("index")?;
        self.expect(Tok::RBracket, &["`]`"])?;
        Ok(i)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                Ok(Expr::Num(Rational::from_integer(i)))
            }
            Tok::Rat(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::LParen => {
                self.bump();
                self.open_parens.push(col);
                let inner = self.expr()?;
                self.expect(Tok::RParen, &["`)`", "`+`", "`-`", "`*`"])?;
                self.open_parens.pop();
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                self.identifier(&name, col)
            }
            _ => Err(self.unexpected(&["number", "variable", "class symbol", "`(`", "`-`"])),
        }
    }

    fn identifier(&mut self, name: &str, col: usize) -> Result<Expr> {
        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let index: usize = digits.parse().unwrap_or(usize::MAX);
                if index == 0 || index > self.d {
                    return Err(Error::VariableOutOfRange { index, d: self.d, column: col });
                }
                return Ok(Expr::Var(index));
            }
        }
        match name {
            "s" => {
                let index = self.bracket_index()?;
                let bundle = self.bundle_arg()?;
                Ok(Expr::Segre { index, bundle })
            }
            "c" => {
                let index = self.bracket_index()?;
                let bundle = self.bundle_arg()?;
                Ok(Expr::Chern { index, bundle })
            }
            "c1" => {
                let bundle = self.bundle_arg()?;
                Ok(Expr::Chern { index: 1, bundle })
            }
            "schur" => {
                self.expect(Tok::LBracket, &["`[`"])?;
                let mut parts = Vec::new();
                if *self.peek() != Tok::RBracket {
                    parts.push(self.small_int("part")?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        parts.push(self.small_int("part")?);
                    }
                }
                self.expect(Tok::RBracket, &["`,`", "`]`"])?;
                let lambda = Partition::new(parts)
                    .map_err(|e| parse_err(col, e.to_string(), &[]))?;
                self.expect(Tok::LParen, &["`(`"])?;
                match self.peek() {
                    Tok::Ident(x) if x == "x" => {
                        self.bump();
                    }
                    _ => return Err(self.unexpected(&["`x`"])),
                }
                self.expect(Tok::RParen, &["`)`"])?;
                if lambda.len() > self.d {
                    return Err(parse_err(
                        col,
                        format!("Schur partition {lambda} has more than {} parts", self.d),
                        &[],
                    ));
                }
                Ok(Expr::Schur(lambda))
            }
            other => Err(parse_err(
                col,
                format!("unknown identifier `{other}`"),
                &["x<i>", "s[i](B)", "c[i](B)", "c1(L)", "schur[λ](x)"],
            )),
        }
    }
}

/// Parses `text` as a class in the variables `x1, ..., xd`.
pub fn parse_expression(text: &str, d: usize) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, d, open_parens: Vec::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        if *p.peek() == Tok::RParen {
            return Err(parse_err(p.col(), "unbalanced parenthesis", &["`+`", "`-`", "`*`", "end of input"]));
        }
        return Err(p.unexpected(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

/// Evaluates an expression as a polynomial in `t_1, ..., t_d`.
pub fn lower_expr(e: &Expr, d: usize) -> Result<TPoly> {
    Ok(match e {
        Expr::Num(r) => TPoly::constant(d, ClassPoly::constant(r.clone())),
        Expr::Var(i) => {
            if *i == 0 || *i > d {
                return Err(Error::VariableOutOfRange { index: *i, d, column: 0 });
            }
            TPoly::var(d, i - 1)
        }
        Expr::Segre { index, bundle } => TPoly::constant(d, segre_class(bundle, *index)),
        Expr::Chern { index, bundle } => TPoly::constant(d, chern_class(bundle, *index)),
        Expr::Schur(lambda) => schur_in_t(lambda, d)?,
        Expr::Add(a, b) => lower_expr(a, d)?.add(&lower_expr(b, d)?)?,
        Expr::Sub(a, b) => lower_expr(a, d)?.sub(&lower_expr(b, d)?)?,
        Expr::Mul(a, b) => lower_expr(a, d)?.mul(&lower_expr(b, d)?)?,
        Expr::Neg(a) => lower_expr(a, d)?.neg(),
        Expr::Pow(a, k) => lower_expr(a, d)?.pow(*k)?,
    })
}

/// Parses and lowers in one go.
pub fn parse_class(text: &str, d: usize) -> Result<TPoly> {
    lower_expr(&parse_expression(text, d)?, d)
}

fn segre_class(bundle: &str, k: u32) -> ClassPoly {
    if bundle == TWIST_BUNDLE {
        // s(L) = 1/(1 + c_1(L))
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        ClassPoly::twist().pow(k).scale(&Rational::from_integer(sign.into()))
    } else {
        ClassPoly::segre(bundle, k)
    }
}

fn chern_class(bundle: &str, k: u32) -> ClassPoly {
    if bundle == TWIST_BUNDLE {
        match k {
            0 => ClassPoly::one(),
            1 => ClassPoly::twist(),
            _ => ClassPoly::zero(),
        }
    } else {
        chern_from_segre(bundle, k)
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(r) if r.is_negative() => 3,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(r) => {
                if r.is_negative() {
                    write!(f, "-")?;
                }
                let a = r.abs();
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "({}/{})", a.numer(), a.denom())
                }
            }
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Segre { index, bundle } => write!(f, "s[{index}]({bundle})"),
            Expr::Chern { index, bundle } => write!(f, "c[{index}]({bundle})"),
            Expr::Schur(lambda) => {
                let parts: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
                let parts = if parts.is_empty() { "0".to_string() } else { parts.join(",") };
                write!(f, "schur[{parts}](x)")
            }
            Expr::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
