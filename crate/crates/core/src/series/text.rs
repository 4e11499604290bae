//! Text form of a series: a sum of terms, each an optional integer
//! coefficient followed by `*`-separated `var` or `var^k` factors.
//!
//! ```text
//! 5 + 2*xi^2*eta - xi*eta^3
//! ```
//!
//! A term `O(k)` caps the validity at `k`, so `1 + xi + O(2)` knows nothing
//! about degree two and above.
//!
//! Output is canonical: graded-lex order, coefficients in the symmetric
//! residue range, every non-constant term written as `c*monomial`, and a
//! trailing `O(v)` when the validity `v` is below `D`.

use std::fmt;

use super::{Chart, Monomial, Series};
use crate::coeff::Params;
use crate::error::{Error, Result};

/// Which charts a parsed series may land in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartHint {
    Exact(Chart),
    /// The ring `R`.
    R,
    /// Either chart of `S`; chart A when the variables do not decide.
    S,
    Any,
}

impl ChartHint {
    fn candidates(self) -> Vec<Chart> {
        match self {
            ChartHint::Exact(c) => vec![c],
            ChartHint::R => vec![Chart::R],
            ChartHint::S => vec![Chart::SA, Chart::SB],
            ChartHint::Any => Chart::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, column));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Token::Int(chars[start..i].iter().collect()), column));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), column));
        } else {
            return Err(Error::Parse { column, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct ParsedTerm {
    negative: bool,
    /// Set by an `O(k)` term.
    order: Option<u32>,
    coeffs: Vec<String>,
    vars: Vec<(String, u32, usize)>,
}

fn parse_terms(tokens: &[(Token, usize)], end_column: usize) -> Result<Vec<ParsedTerm>> {
    let mut terms = Vec::new();
    let mut pos = 0;
    let column = |pos: usize| tokens.get(pos).map_or(end_column, |t| t.1);
    if tokens.is_empty() {
        return Err(Error::Parse { column: end_column, message: "empty series".into() });
    }
    loop {
        let mut negative = false;
        match tokens.get(pos).map(|t| &t.0) {
            Some(Token::Plus) => pos += 1,
            Some(Token::Minus) => {
                negative = true;
                pos += 1;
            }
            _ if terms.is_empty() => {}
            _ => unreachable!(),
        }
        let mut term = ParsedTerm { negative, order: None, coeffs: Vec::new(), vars: Vec::new() };
        if let (Some((Token::Ident(o), _)), Some((Token::Open, _))) = (tokens.get(pos), tokens.get(pos + 1)) {
            if o == "O" {
                let (k, k_col) = match tokens.get(pos + 2) {
                    Some((Token::Int(k), col)) => (k, *col),
                    _ => return Err(Error::Parse { column: column(pos + 2), message: "expected a degree in `O(...)`".into() }),
                };
                term.order = Some(k.parse().map_err(|_| Error::Parse {
                    column: k_col,
                    message: format!("degree `{k}` out of range"),
                })?);
                if !matches!(tokens.get(pos + 3), Some((Token::Close, _))) {
                    return Err(Error::Parse { column: column(pos + 3), message: "expected `)`".into() });
                }
                pos += 4;
                terms.push(term);
                match tokens.get(pos) {
                    None => return Ok(terms),
                    Some((Token::Plus | Token::Minus, _)) => continue,
                    Some((_, col)) => {
                        return Err(Error::Parse { column: *col, message: "expected `+` or `-`".into() })
                    }
                }
            }
        }
        loop {
            match tokens.get(pos) {
                Some((Token::Int(n), _)) => {
                    term.coeffs.push(n.clone());
                    pos += 1;
                }
                Some((Token::Ident(name), col)) => {
                    pos += 1;
                    let mut exp = 1u32;
                    if let Some((Token::Caret, _)) = tokens.get(pos) {
                        pos += 1;
                        match tokens.get(pos) {
                            Some((Token::Int(n), col)) => {
                                exp = n.parse().map_err(|_| Error::Parse {
                                    column: *col,
                                    message: format!("exponent `{n}` out of range"),
                                })?;
                                pos += 1;
                            }
                            _ => {
                                return Err(Error::Parse {
                                    column: column(pos),
                                    message: "expected an exponent after `^`".into(),
                                })
                            }
                        }
                    }
                    term.vars.push((name.clone(), exp, *col));
                }
                _ => {
                    return Err(Error::Parse {
                        column: column(pos),
                        message: "expected a coefficient or variable".into(),
                    })
                }
            }
            match tokens.get(pos) {
                Some((Token::Star, _)) => pos += 1,
                _ => break,
            }
        }
        terms.push(term);
        match tokens.get(pos) {
            None => return Ok(terms),
            Some((Token::Plus | Token::Minus, _)) => {}
            Some((_, col)) => {
                return Err(Error::Parse { column: *col, message: "expected `+`, `-` or `*`".into() })
            }
        }
    }
}

impl Series {
    /// Parses the text form. Coefficients are reduced mod `p^N`; terms of total
    /// degree `>= D` are dropped. Validity is `D` unless an `O(k)` term
    /// lowers it.
    pub fn parse(text: &str, params: Params, hint: ChartHint) -> Result<Series> {
        let end_column = text.chars().count() + 1;
        let tokens = tokenize(text)?;
        let terms = parse_terms(&tokens, end_column)?;

        let mut charts = hint.candidates();
        for term in &terms {
            for (name, _, column) in &term.vars {
                if Chart::ALL.iter().all(|c| c.var_index(name).is_none()) {
                    return Err(Error::UnknownVariable { name: name.clone(), column: *column });
                }
                charts.retain(|c| c.var_index(name).is_some());
                if charts.is_empty() {
                    return Err(Error::MixedCharts { column: *column });
                }
            }
        }
        let chart = charts[0];

        let modulus = u128::from(params.coeff_modulus());
        let mut out = Series::zero(params, chart);
        for term in &terms {
            if let Some(k) = term.order {
                out = out.with_validity(k);
            }
        }
        for term in terms.into_iter().filter(|t| t.order.is_none()) {
            let mut c: u128 = 1;
            for digits in &term.coeffs {
                let value = digits
                    .bytes()
                    .fold(0u128, |acc, d| (acc * 10 + u128::from(d - b'0')) % modulus);
                c = c * value % modulus;
            }
            if term.negative {
                c = (modulus - c) % modulus;
            }
            let mut exps = [0u32; 4];
            for (name, exp, _) in &term.vars {
                let i = chart.var_index(name).expect("chart chosen to contain every variable");
                exps[i] = exps[i].saturating_add(*exp);
            }
            if exps.iter().sum::<u32>() >= params.maxdeg() {
                continue;
            }
            let m = Monomial(exps.map(|e| e as u8));
            out.add_term(m, c as u64);
        }
        Ok(out)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cap = (self.validity < self.params.maxdeg()).then_some(self.validity);
        if self.terms.is_empty() {
            return match cap {
                Some(v) => write!(f, "O({v})"),
                None => f.write_str("0"),
            };
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let c = c.symmetric();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}", c.unsigned_abs())?;
            for (name, &e) in self.chart.vars().iter().zip(m.exps().iter()) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        if let Some(v) = cap {
            write!(f, " + O({v})")?;
        }
        Ok(())
    }
}
