//! Text syntax for polynomials in one main variable over `K = Q(t)`,
//! elements of `L` and places of `K`.
//!
//! Expressions use integers, the variable `t`, one main variable (`x` for
//! the model, `A` for elements of `L`), `+ - * / ^` and parentheses.
//! Juxtaposition multiplies, so `2t` and `x(x - 1)` are accepted. Division
//! is allowed by expressions free of the main variable; exponents are
//! integer literals, negative only for elements of `K`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::ratfunc::{kring, KPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::places::Place;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

/// Where a fragment starts in its source, for error positions.
#[derive(Clone, Copy, Debug)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl Default for Span {
    fn default() -> Self {
        Span { line: 1, column: 1 }
    }
}

impl Span {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column + offset,
            message: message.into(),
        }
    }
}

fn lex(src: &str, span: Span) -> Result<(Vec<Token>, usize)> {
    let chars: Vec<char> = src.chars().collect();
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
            if chars.get(i) == Some(&'.') {
                return Err(span.err(i, "floating-point literals are not accepted; write p/q"));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(digits.parse().expect("ascii digits")),
                col: start,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col: start,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                col: i,
            });
            i += 1;
        } else if c == '.' {
            return Err(span.err(i, "floating-point literals are not accepted; write p/q"));
        } else {
            return Err(span.err(i, format!("unexpected character '{c}'")));
        }
    }
    Ok((out, chars.len()))
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    span: Span,
    main: Option<&'a str>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.span.err(self.col(), message)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<KPoly> {
        let ring = kring();
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = ring.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = ring.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<KPoly> {
        let ring = kring();
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = ring.mul(&acc, &self.unary()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                let inv = as_k(&d).and_then(|c| c.inv()).ok_or_else(|| {
                    self.span.err(
                        col,
                        match self.main {
                            Some(v) => {
                                format!("can only divide by nonzero expressions free of {v}")
                            }
                            None => "division by zero".to_string(),
                        },
                    )
                })?;
                acc = ring.scale(&acc, &inv);
            } else if self.starts_factor() {
                acc = ring.mul(&acc, &self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<KPoly> {
        if self.eat('-') {
            return Ok(kring().neg(&self.unary()?));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<KPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let col = self.col();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(self.err("expected an integer exponent"));
        };
        self.pos += 1;
        let e: i64 = i64::try_from(&n).map_err(|_| self.span.err(col, "exponent too large"))?;
        let e = if neg { -e } else { e };
        if e >= 0 {
            return Ok(kring().pow(&base, e as u64));
        }
        match as_k(&base).filter(|c| !c.is_zero()) {
            Some(c) => Ok(kring().constant(c.powi(e))),
            None => Err(self.span.err(
                col,
                "negative exponents need a nonzero base free of the main variable",
            )),
        }
    }

    fn atom(&mut self) -> Result<KPoly> {
        let ring = kring();
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ring.constant(RationalFunction::constant(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "t" {
                    Ok(ring.constant(RationalFunction::t()))
                } else if Some(name.as_str()) == self.main {
                    Ok(ring.x())
                } else {
                    Err(self.span.err(col, format!("unknown variable '{name}'")))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(self.span.err(col, format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// The constant coefficient of a polynomial of degree at most zero.
fn as_k(p: &KPoly) -> Option<RationalFunction> {
    match p.degree() {
        None => Some(RationalFunction::zero()),
        Some(0) => Some(p.coeffs()[0].clone()),
        _ => None,
    }
}

fn parse_with(src: &str, main: Option<&str>, span: Span) -> Result<KPoly> {
    let (toks, end) = lex(src, span)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        span,
        main,
    };
    if p.toks.is_empty() {
        return Err(span.err(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// A polynomial in `var` with coefficients in `Q(t)`.
pub fn parse_kpoly(src: &str, var: &str) -> Result<KPoly> {
    parse_kpoly_at(src, var, Span::default())
}

pub fn parse_kpoly_at(src: &str, var: &str, span: Span) -> Result<KPoly> {
    parse_with(src, Some(var), span)
}

/// An element of `Q(t)`.
pub fn parse_rational_function(src: &str) -> Result<RationalFunction> {
    parse_rational_function_at(src, Span::default())
}

pub fn parse_rational_function_at(src: &str, span: Span) -> Result<RationalFunction> {
    Ok(as_k(&parse_with(src, None, span)?).expect("no main variable"))
}

/// `inf` or an irreducible polynomial in `t`, optionally parenthesized.
pub fn parse_place_at(src: &str, span: Span) -> Result<Place> {
    let trimmed = src.trim();
    if matches!(trimmed, "inf" | "infinity" | "Infinity" | "oo") {
        return Ok(Place::Infinity);
    }
    let r = parse_rational_function_at(src, span)?;
    let lead = src.len() - src.trim_start().len();
    if !r.is_polynomial() || r.is_constant() {
        return Err(span.err(
            lead,
            format!("{r} is not a place: expected inf or an irreducible polynomial in t"),
        ));
    }
    Place::finite(r.numer()).map_err(|e| span.err(lead, e.to_string()))
}

pub fn parse_place(src: &str) -> Result<Place> {
    parse_place_at(src, Span::default())
}

/// Split at top-level occurrences of `sep`, with the offset of each piece.
fn split_top(src: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &src[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &src[start..]));
    out
}

/// Comma-separated places; an empty string gives no places.
pub fn parse_places_at(src: &str, span: Span) -> Result<Vec<Place>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(src, ',')
        .into_iter()
        .map(|(off, piece)| {
            parse_place_at(
                piece,
                Span {
                    line: span.line,
                    column: span.column + off,
                },
            )
        })
        .collect()
}

/// `c0 + c1*A + ...` (reduced modulo `f`) or a split tuple `(d1; d2; d3; d4)`.
pub fn parse_element(src: &str, alg: &EtaleAlgebra) -> Result<EtaleElement> {
    parse_element_at(src, alg, Span::default())
}

pub fn parse_element_at(src: &str, alg: &EtaleAlgebra, span: Span) -> Result<EtaleElement> {
    let lead = src.len() - src.trim_start().len();
    let body = src.trim();
    if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        let parts = split_top(inner, ';');
        if parts.len() > 1 {
            if parts.len() != 4 {
                return Err(span.err(
                    lead,
                    format!("split elements have 4 coordinates, found {}", parts.len()),
                ));
            }
            if !alg.is_split() {
                return Err(span.err(
                    lead,
                    "split coordinates given but f does not split over Q(t)",
                ));
            }
            let mut d: [RationalFunction; 4] = Default::default();
            for (slot, (off, piece)) in d.iter_mut().zip(parts) {
                let sub = Span {
                    line: span.line,
                    column: span.column + lead + 1 + off,
                };
                *slot = parse_rational_function_at(piece, sub)?;
            }
            return Ok(EtaleElement::split(d));
        }
    }
    let p = parse_kpoly_at(src, "A", span)?;
    let r = kring().rem(&p, alg.f());
    EtaleElement::general(r.coeffs())
}
