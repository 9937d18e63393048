//! Text syntax for series and maps.
//!
//! ```text
//! expr    := ["+"|"-"] term (("+"|"-") term)*
//! term    := factor ("*" factor)*
//! factor  := number ["/" number] | "(" complex ")" | var ["^" number]
//! complex := ["+"|"-"] part (("+"|"-") part)*
//! part    := number ["/" number] ["i"] | "i"
//! ```
//!
//! Surfaces use the variables `z`, `zb`, `u`; maps use `z`, `w`. The imaginary
//! unit is only recognized inside parentheses.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{CrError, ParseError, Result};
use crate::holo::{HoloMapPair, HoloSeries};
use crate::scalar::{GaussianRational, Rational};
use crate::series::{MultiIndex, WeightedSeries};

pub const SURFACE_VARS: [&str; 3] = ["z", "zb", "u"];
pub const MAP_VARS: [&str; 2] = ["z", "w"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned {
                tok: Tok::Num(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_alphanumeric() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
        } else if "+-*/^()".contains(c) {
            chars.next();
            column += 1;
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
        } else {
            return Err(ParseError {
                line: l0,
                column: c0,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [&'a str],
    end: (usize, usize),
}

type Monomial = (Vec<u32>, GaussianRational);

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [&'a str]) -> std::result::Result<Self, ParseError> {
        let toks = tokenize(text)?;
        let last_line = text.lines().count().max(1);
        let last_col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Ok(Self {
            toks,
            pos: 0,
            vars,
            end: (last_line, last_col),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column));
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> std::result::Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn fraction(&mut self) -> std::result::Result<Rational, ParseError> {
        let num = self.number()?;
        if self.eat('/') {
            let den = self.number()?;
            if den.is_zero() {
                self.pos -= 1;
                return Err(self.err("division by zero"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn exponent(&mut self) -> std::result::Result<u32, ParseError> {
        let n = self.number()?;
        u32::try_from(n).map_err(|_| {
            self.pos -= 1;
            self.err("exponent too large")
        })
    }

    fn is_imag_unit(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "i")
    }

    fn complex(&mut self) -> std::result::Result<GaussianRational, ParseError> {
        let mut acc = GaussianRational::zero();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let part = if self.is_imag_unit() {
                self.pos += 1;
                GaussianRational::i()
            } else {
                let r = self.fraction()?;
                if self.is_imag_unit() {
                    self.pos += 1;
                    GaussianRational::new(Rational::zero(), r)
                } else {
                    GaussianRational::real(r)
                }
            };
            acc = if neg { &acc - &part } else { &acc + &part };
        }
        Ok(acc)
    }

    fn factor(&mut self, mono: &mut Monomial) -> std::result::Result<(), ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(_)) => {
                let r = self.fraction()?;
                mono.1 = mono.1.scale(&r);
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let c = self.complex()?;
                self.expect(')')?;
                mono.1 = &mono.1 * &c;
            }
            Some(Tok::Ident(name)) => {
                let Some(v) = self.vars.iter().position(|x| *x == name) else {
                    return Err(self.err(format!(
                        "unknown variable '{name}' (expected one of {})",
                        self.vars.join(", ")
                    )));
                };
                self.pos += 1;
                let e = if self.eat('^') { self.exponent()? } else { 1 };
                mono.0[v] += e;
            }
            _ => return Err(self.err("expected a coefficient, '(' or a variable")),
        }
        Ok(())
    }

    fn term(&mut self) -> std::result::Result<Monomial, ParseError> {
        let mut mono = (vec![0; self.vars.len()], GaussianRational::one());
        self.factor(&mut mono)?;
        while self.eat('*') {
            self.factor(&mut mono)?;
        }
        Ok(mono)
    }

    fn expr(&mut self) -> std::result::Result<Vec<Monomial>, ParseError> {
        if self.toks.is_empty() {
            return Err(self.err("empty expression"));
        }
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else if self.pos == self.toks.len() {
                break;
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            first = false;
            let (e, c) = self.term()?;
            out.push((e, if neg { -c } else { c }));
        }
        Ok(out)
    }
}

/// Parses a polynomial in `vars`, returning exponent vectors with summed
/// coefficients (zeros pruned).
pub fn parse_polynomial(
    text: &str,
    vars: &[&str],
) -> std::result::Result<BTreeMap<Vec<u32>, GaussianRational>, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let terms = p.expr()?;
    let mut out: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
    for (e, c) in terms {
        *out.entry(e).or_default() += &c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Parses a parenthesis-free complex literal such as `1+1/4i`, `-i` or `3/2`.
pub fn parse_complex_literal(text: &str) -> std::result::Result<GaussianRational, ParseError> {
    let mut p = Parser::new(text, &[])?;
    if p.toks.is_empty() {
        return Err(p.err("empty literal"));
    }
    let c = p.complex()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after literal"));
    }
    Ok(c)
}

/// Smallest total degree of a mixed `z^a zb^b` term with no `u`.
pub fn detect_k(terms: &BTreeMap<Vec<u32>, GaussianRational>) -> Option<u32> {
    terms
        .keys()
        .filter(|e| e[0] > 0 && e[1] > 0 && e[2] == 0)
        .map(|e| e[0] + e[1])
        .min()
}

/// Parses a real series in `z`, `zb`, `u` with the given grading.
pub fn parse_series(text: &str, k: u32, trunc: u32) -> Result<WeightedSeries> {
    let terms = parse_polynomial(text, &SURFACE_VARS)?;
    series_from_terms(&terms, k, trunc)
}

fn series_from_terms(
    terms: &BTreeMap<Vec<u32>, GaussianRational>,
    k: u32,
    trunc: u32,
) -> Result<WeightedSeries> {
    let s = WeightedSeries::from_terms(
        terms
            .iter()
            .map(|(e, c)| ([e[0] as i64, e[1] as i64, e[2] as i64], c.clone())),
        k,
        trunc,
    )?;
    let bad = s.reality_violations();
    if !bad.is_empty() {
        return Err(CrError::RealityViolation(bad));
    }
    Ok(s)
}

/// Input description of a surface as given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub expression: String,
    pub truncation: u32,
    pub declared_k: Option<u32>,
}

/// Parses a defining function, inferring `k` when not declared and defaulting
/// the truncation weight to `4k`.
pub fn parse_surface(
    text: &str,
    truncation: Option<u32>,
    declared_k: Option<u32>,
) -> Result<(SurfaceSpec, WeightedSeries)> {
    let terms = parse_polynomial(text, &SURFACE_VARS)?;
    let k = match declared_k.or_else(|| detect_k(&terms)) {
        Some(k) => k,
        None if terms
            .keys()
            .any(|e| e[2] == 0 && (e[0] == 0) != (e[1] == 0)) =>
        {
            return Err(CrError::NotPrepared(
                "leading part is purely harmonic; absorb harmonic terms first".into(),
            ))
        }
        None => return Err(CrError::NotFiniteType),
    };
    let trunc = truncation.unwrap_or(4 * k);
    let series = series_from_terms(&terms, k, trunc)?;
    let spec = SurfaceSpec {
        expression: text.to_string(),
        truncation: trunc,
        declared_k,
    };
    Ok((spec, series))
}

/// Parses `f` and `g` as polynomials in `z`, `w`.
pub fn parse_map(f_text: &str, g_text: &str, k: u32, trunc: u32) -> Result<HoloMapPair> {
    let conv = |text: &str, tr: u32| -> Result<HoloSeries> {
        let terms = parse_polynomial(text, &MAP_VARS)?;
        Ok(HoloSeries::from_terms(
            terms.into_iter().map(|(e, c)| ((e[0], e[1]), c)),
            k,
            tr,
        ))
    };
    let f = conv(f_text, trunc)?;
    let g = conv(g_text, trunc)?;
    HoloMapPair::new(f, g, k, trunc)
}

fn write_coeff(out: &mut String, c: &GaussianRational, has_vars: bool, first: bool) {
    let sep = |neg: bool| match (first, neg) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    if c.is_real() {
        let neg = c.re.is_negative();
        let a = c.re.abs();
        out.push_str(sep(neg));
        if !(a.is_one() && has_vars) {
            let _ = write!(out, "{a}");
            if has_vars {
                out.push('*');
            }
        }
    } else {
        out.push_str(sep(false));
        let _ = write!(out, "({c})");
        if has_vars {
            out.push('*');
        }
    }
}

fn write_monomial(out: &mut String, exps: &[u32], vars: &[&str]) {
    let mut first = true;
    for (e, v) in exps.iter().zip(vars) {
        if *e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(v);
        if *e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

fn format_terms<'a>(
    terms: impl Iterator<Item = (Vec<u32>, &'a GaussianRational)>,
    vars: &[&str],
) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        let has_vars = e.iter().any(|&x| x > 0);
        let first = out.is_empty();
        write_coeff(&mut out, c, has_vars, first);
        write_monomial(&mut out, &e, vars);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Prints a series in the input syntax, ordered by weight, then by `(gamma, beta, alpha)`.
pub fn format_series(s: &WeightedSeries) -> String {
    let k = s.k();
    let mut terms: Vec<(&MultiIndex, &GaussianRational)> = s.terms().collect();
    terms.sort_by_key(|(i, _)| (i.weight(k), i.inverse_lex_key()));
    format_terms(
        terms
            .into_iter()
            .map(|(i, c)| (vec![i.alpha, i.beta, i.gamma], c)),
        &SURFACE_VARS,
    )
}

/// Prints a holomorphic series in `z`, `w`, ordered by weight then `w`-power.
pub fn format_holo(h: &HoloSeries) -> String {
    let mut terms: Vec<(&(u32, u32), &GaussianRational)> = h.terms().collect();
    terms.sort_by_key(|((i, j), _)| (h.weight((*i, *j)), *j));
    format_terms(
        terms.into_iter().map(|((i, j), c)| (vec![*i, *j], c)),
        &MAP_VARS,
    )
}
