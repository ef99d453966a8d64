//! Text form of gauge-field components.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := "-" factor | atom ("^" ["-"] int | "/" divisor)*
//! atom    := rational | symbol | coord | "(" expr ")"
//! divisor := rational | symbol | "(" expr ")"
//! ```
//!
//! Rationals are integer or decimal literals and are kept exact. A divisor
//! must be a nonzero single-term scalar; coordinates may only appear with
//! non-negative integer powers.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, GradedOrder, Scalar, Symbol};
use crate::weyl::{GaugeFieldSpec, Region, WeylExpr};

const COORDS: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str, line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = parse_decimal(&text).ok_or_else(|| Error::Parse {
                line,
                column,
                message: format!("malformed number `{text}`"),
            })?;
            out.push(Spanned { tok: Tok::Num(value), line, column });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                column,
            });
        } else {
            return Err(Error::Parse {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Spanned { tok: Tok::End, line, column: chars.len() + 1 });
    Ok(out)
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    dim: usize,
    order: &'a GradedOrder,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(at: &Spanned, message: impl Into<String>) -> Error {
        Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<WeylExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylExpr> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs, self.order)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeylExpr> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(-&self.factor()?);
        }
        let start = self.peek().clone();
        let mut acc = self.atom()?;
        loop {
            match self.peek().tok {
                Tok::Caret => {
                    self.next();
                    acc = self.power(acc, &start)?;
                }
                Tok::Slash => {
                    self.next();
                    let d = self.divisor()?;
                    acc = acc.scale(&d);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self, base: WeylExpr, start: &Spanned) -> Result<WeylExpr> {
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let at = self.next();
        let k: u32 = match &at.tok {
            Tok::Num(v) if v.is_integer() => v
                .to_integer()
                .try_into()
                .map_err(|_| Self::error(&at, "exponent too large"))?,
            _ => return Err(Self::error(&at, "expected an integer exponent")),
        };
        if !negative {
            return Ok(base.pow(k, self.order));
        }
        let s = base.as_scalar().ok_or(Error::NonPolynomialCoordinateUse {
            line: start.line,
            column: start.column,
        })?;
        let inv = s
            .inv_single()
            .ok_or_else(|| Self::error(start, format!("cannot invert `{s}`")))?;
        Ok(WeylExpr::scalar(self.dim, inv.pow(k)))
    }

    /// Returns the reciprocal of the divisor.
    fn divisor(&mut self) -> Result<Scalar> {
        let at = self.peek().clone();
        let value = match &at.tok {
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect_rparen()?;
                e
            }
            Tok::Num(_) | Tok::Ident(_) => self.atom()?,
            _ => return Err(Self::error(&at, "expected a divisor")),
        };
        let s = value.as_scalar().ok_or(Error::NonPolynomialCoordinateUse {
            line: at.line,
            column: at.column,
        })?;
        if s.is_zero() {
            return Err(Self::error(&at, "division by zero"));
        }
        s.inv_single()
            .ok_or_else(|| Self::error(&at, format!("divisor `{s}` is not a single term")))
    }

    fn expect_rparen(&mut self) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::RParen {
            Ok(())
        } else {
            Err(Self::error(&t, "expected `)`"))
        }
    }

    fn atom(&mut self) -> Result<WeylExpr> {
        let t = self.next();
        match &t.tok {
            Tok::Num(v) => Ok(WeylExpr::scalar(
                self.dim,
                Scalar::constant(GaussianRational::real(v.clone())),
            )),
            Tok::Ident(name) => self.identifier(name, &t),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::End => Err(Self::error(&t, "unexpected end of input")),
            _ => Err(Self::error(&t, "expected a number, symbol, coordinate or `(`")),
        }
    }

    fn identifier(&self, name: &str, at: &Spanned) -> Result<WeylExpr> {
        if let Some(alpha) = COORDS.iter().position(|c| *c == name) {
            if alpha >= self.dim {
                return Err(Self::error(
                    at,
                    format!("coordinate `{name}` is not available in dimension {}", self.dim),
                ));
            }
            return Ok(WeylExpr::coord(self.dim, alpha));
        }
        let sym: Symbol = name.parse().map_err(|_| Error::UnknownSymbol {
            name: name.to_string(),
            line: at.line,
            column: at.column,
        })?;
        Ok(WeylExpr::scalar(self.dim, Scalar::sym(sym)))
    }
}

/// Parses one component as a coordinate polynomial in `dim` coordinates.
/// `line` is reported in errors.
pub fn parse_component(src: &str, dim: usize, line: usize) -> Result<WeylExpr> {
    let order = GradedOrder::unbounded();
    let mut p = Parser {
        toks: lex(src, line)?,
        pos: 0,
        dim,
        order: &order,
    };
    let e = p.expr()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        return Err(Parser::error(&rest, "unexpected trailing input"));
    }
    debug_assert!(e.terms().all(|(pw, _)| pw.d_degree() == 0));
    Ok(e)
}

/// Parses one component per entry; entry `k` is reported as line `k + 1`.
pub fn parse_field(components: &[&str], region: Region) -> Result<GaugeFieldSpec> {
    let dim = components.len();
    if !(2..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let parsed = components
        .iter()
        .enumerate()
        .map(|(k, src)| parse_component(src, dim, k + 1))
        .collect::<Result<Vec<_>>>()?;
    GaugeFieldSpec::new(parsed, region)
}

/// Same as [`parse_field`] with one component per non-empty line.
pub fn parse_field_text(text: &str, region: Region) -> Result<GaugeFieldSpec> {
    let lines: Vec<&str> = text.lines().collect();
    let dim = lines.iter().filter(|l| !l.trim().is_empty()).count();
    if !(2..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut parsed = Vec::with_capacity(dim);
    for (k, src) in lines.iter().enumerate() {
        if !src.trim().is_empty() {
            parsed.push(parse_component(src, dim, k + 1)?);
        }
    }
    GaugeFieldSpec::new(parsed, region)
}
