//! Text form of group elements: exponent tuples with series fields.
//!
//! ```text
//! (2, -1)                       x^2 y^-1
//! (2, -1, 1 + xi)               metabelian
//! (0, 0, xi, xi - xi^2)         centre-by-metabelian
//! ```

use std::fmt;

use crate::coeff::Params;
use crate::error::{Error, Result};
use crate::groupalg::{GroupElt, RElem};
use crate::groups::{CbmElem, MetabElem};
use crate::series::{ChartHint, Series};

/// Splits `(f1, f2, ...)` into trimmed fields with their 1-based columns.
fn fields(text: &str, arity: usize) -> Result<Vec<(usize, &str)>> {
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    let inner = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| Error::Parse { column: start + 1, message: "expected `( ... )`".into() })?;
    let mut out = Vec::new();
    let mut offset = start + 1;
    for field in inner.split(',') {
        let lead = field.len() - field.trim_start().len();
        out.push((offset + lead + 1, field.trim()));
        offset += field.len() + 1;
    }
    if out.len() != arity {
        return Err(Error::Parse {
            column: start + 1,
            message: format!("expected {arity} fields, found {}", out.len()),
        });
    }
    Ok(out)
}

fn shift(err: Error, column: usize) -> Error {
    match err {
        Error::Parse { column: c, message } => Error::Parse { column: c + column - 1, message },
        Error::UnknownVariable { name, column: c } => {
            Error::UnknownVariable { name, column: c + column - 1 }
        }
        Error::MixedCharts { column: c } => Error::MixedCharts { column: c + column - 1 },
        other => other,
    }
}

fn exponent((column, text): (usize, &str)) -> Result<i64> {
    text.parse()
        .map_err(|_| Error::Parse { column, message: format!("bad exponent `{text}`") })
}

fn r_field((column, text): (usize, &str), params: Params) -> Result<RElem> {
    let s = Series::parse(text, params, ChartHint::R).map_err(|e| shift(e, column))?;
    RElem::new(s)
}

impl GroupElt {
    pub fn parse(text: &str) -> Result<Self> {
        let f = fields(text, 2)?;
        Ok(Self::new(exponent(f[0])?, exponent(f[1])?))
    }
}

impl MetabElem {
    pub fn parse(text: &str, params: Params) -> Result<Self> {
        let f = fields(text, 3)?;
        Ok(Self::new(exponent(f[0])?, exponent(f[1])?, r_field(f[2], params)?))
    }
}

impl CbmElem {
    pub fn parse(text: &str, params: Params) -> Result<Self> {
        let f = fields(text, 4)?;
        let w = r_field(f[3], params)?;
        if !w.is_antisymmetric() {
            return Err(Error::Parse { column: f[3].0, message: "central part must be antisymmetric".into() });
        }
        Ok(Self::new(exponent(f[0])?, exponent(f[1])?, r_field(f[2], params)?, w))
    }
}

impl fmt::Display for MetabElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.r)
    }
}

impl fmt::Display for CbmElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.r, self.w)
    }
}
