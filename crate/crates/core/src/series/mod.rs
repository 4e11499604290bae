//! Sparse truncated multivariate power series over `Z/p^N`.
//!
//! A [`Series`] lives in one [`Chart`] (an ordered variable list) and carries
//! a validity degree `v`: coefficients of total degree `< v` are exact,
//! everything from degree `v` upward is unknown and not stored. Two series are
//! compared with [`Series::agrees_with`], which looks only below the smaller
//! validity.

pub(crate) mod subst;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{PadicInt, Params};
use crate::error::{Error, Result};

pub use text::ChartHint;

/// Coordinate systems for the rings `R` and `S`.
///
/// `SA` uses `xi1, eta1, xi2, eta2`; `SB` uses `xi1, eta1, zeta, tau` with
/// `1 + zeta = (1 + xi1)(1 + xi2)` and `1 + tau = (1 + eta1)(1 + eta2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    R,
    SA,
    SB,
}

impl Chart {
    pub const ALL: [Chart; 3] = [Chart::R, Chart::SA, Chart::SB];

    pub fn vars(self) -> &'static [&'static str] {
        match self {
            Chart::R => &["xi", "eta"],
            Chart::SA => &["xi1", "eta1", "xi2", "eta2"],
            Chart::SB => &["xi1", "eta1", "zeta", "tau"],
        }
    }

    pub fn nvars(self) -> usize {
        self.vars().len()
    }

    pub fn var_index(self, name: &str) -> Option<usize> {
        self.vars().iter().position(|v| *v == name)
    }

    /// True for the two charts of `S`.
    pub fn is_s(self) -> bool {
        matches!(self, Chart::SA | Chart::SB)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::R => "R",
            Chart::SA => "S-A",
            Chart::SB => "S-B",
        })
    }
}

/// Exponent vector; slots beyond the chart's arity stay zero.
///
/// Ordered graded-lexicographically: lower total degree first, then larger
/// exponents in earlier variables first (`xi^2 < xi*eta < eta^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u8; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(exps: &[u8]) -> Self {
        assert!(exps.len() <= 4);
        let mut e = [0u8; 4];
        e[..exps.len()].copy_from_slice(exps);
        Self(e)
    }

    /// The monomial consisting of variable `index` alone.
    pub fn var(index: usize) -> Self {
        let mut e = [0u8; 4];
        e[index] = 1;
        Self(e)
    }

    pub fn exps(&self) -> [u8; 4] {
        self.0
    }

    pub fn exp(&self, index: usize) -> u8 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0[index] > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn dense_index(&self, base: usize) -> usize {
        self.0.iter().rev().fold(0, |acc, &e| acc * base + usize::from(e))
    }

    fn from_dense(mut index: usize, base: usize, nvars: usize) -> Self {
        let mut e = [0u8; 4];
        for slot in e.iter_mut().take(nvars) {
            *slot = (index % base) as u8;
            index /= base;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `< bound` in `nvars` variables, graded-lex.
pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = [0u8; 4];
    fn rec(out: &mut Vec<Monomial>, e: &mut [u8; 4], i: usize, nvars: usize, left: u32) {
        if i == nvars {
            out.push(Monomial(*e));
            return;
        }
        for k in 0..left {
            e[i] = k as u8;
            rec(out, e, i + 1, nvars, left - k);
        }
        e[i] = 0;
    }
    if bound > 0 {
        rec(&mut out, &mut e, 0, nvars, bound);
    }
    out.sort();
    out
}

/// A truncated power series in one chart.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    params: Params,
    chart: Chart,
    validity: u32,
    terms: BTreeMap<Monomial, u64>,
}

impl Series {
    pub fn zero(params: Params, chart: Chart) -> Self {
        Self { params, chart, validity: params.maxdeg(), terms: BTreeMap::new() }
    }

    pub fn one(params: Params, chart: Chart) -> Self {
        Self::constant(params, chart, params.coeff(1))
    }

    pub fn constant(params: Params, chart: Chart, c: PadicInt) -> Self {
        Self::monomial(params, chart, Monomial::ONE, c)
    }

    pub fn monomial(params: Params, chart: Chart, m: Monomial, c: PadicInt) -> Self {
        let mut s = Self::zero(params, chart);
        let c = c.reduce(params.precision()).residue();
        if c != 0 && m.degree() < s.validity {
            s.terms.insert(m, c);
        }
        s
    }

    /// The chart variable with the given index.
    pub fn var(params: Params, chart: Chart, index: usize) -> Self {
        assert!(index < chart.nvars(), "variable index out of range");
        Self::monomial(params, chart, Monomial::var(index), params.coeff(1))
    }

    /// The chart variable with the given name.
    pub fn named(params: Params, chart: Chart, name: &str) -> Result<Self> {
        let index = chart
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), column: 0 })?;
        Ok(Self::var(params, chart, index))
    }

    /// Builds a series from integer coefficients; duplicates are summed.
    pub fn from_terms<I>(params: Params, chart: Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut s = Self::zero(params, chart);
        for (m, c) in terms {
            s.add_term(m, params.coeff(c).residue());
        }
        s
    }

    pub(crate) fn from_raw(
        params: Params,
        chart: Chart,
        validity: u32,
        terms: BTreeMap<Monomial, u64>,
    ) -> Self {
        let mut s = Self { params, chart, validity, terms };
        s.terms.retain(|m, c| *c != 0 && m.degree() < validity);
        s
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn validity(&self) -> u32 {
        self.validity
    }

    /// Lowers the validity (never raises it), discarding newly untrusted terms.
    pub fn with_validity(mut self, validity: u32) -> Self {
        if validity < self.validity {
            self.validity = validity;
            self.terms.retain(|m, _| m.degree() < validity);
        }
        self
    }

    pub fn coeff(&self, m: &Monomial) -> PadicInt {
        PadicInt::new(self.params.p(), self.params.precision(), self.terms.get(m).copied().unwrap_or(0))
    }

    pub fn constant_term(&self) -> PadicInt {
        self.coeff(&Monomial::ONE)
    }

    /// Stored terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, PadicInt)> + '_ {
        let (p, k) = (self.params.p(), self.params.precision());
        self.terms.iter().map(move |(m, &c)| (*m, PadicInt::new(p, k, c)))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Zero below validity.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a stored term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Whether some coefficient of the lowest-degree form is a unit mod `p`.
    pub fn has_unit_lowest_form(&self) -> bool {
        let Some(order) = self.order() else { return false };
        self.terms
            .iter()
            .take_while(|(m, _)| m.degree() == order)
            .any(|(_, &c)| c % self.params.p() != 0)
    }

    /// Equality of coefficients below the smaller of the two validities.
    pub fn agrees_with(&self, other: &Series) -> bool {
        if self.params != other.params || self.chart != other.chart {
            return false;
        }
        let v = self.validity.min(other.validity);
        let lhs = self.terms.iter().filter(|(m, _)| m.degree() < v);
        let rhs = other.terms.iter().filter(|(m, _)| m.degree() < v);
        lhs.eq(rhs)
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        if m.degree() >= self.validity || c == 0 {
            return;
        }
        let modulus = self.params.coeff_modulus();
        let entry = self.terms.entry(m).or_insert(0);
        *entry = ((u128::from(*entry) + u128::from(c)) % u128::from(modulus)) as u64;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch { left: self.chart, right: other.chart });
        }
        if self.params != other.params {
            return Err(Error::InvalidParams("operands use different parameters".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut out = self.clone().with_validity(other.validity);
        for (m, &c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.try_add(&other.neg_ref())
    }

    /// Product with validity `min(v_a, v_b)`.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let v = self.validity.min(other.validity);
        let mut out = Series { validity: v, terms: BTreeMap::new(), ..*self };
        if self.terms.is_empty() || other.terms.is_empty() {
            return out;
        }
        let base = self.params.maxdeg() as usize;
        let nvars = self.chart.nvars();
        let index = |s: &Series| -> Vec<(usize, u32, u128)> {
            s.terms
                .iter()
                .filter(|(m, _)| m.degree() < v)
                .map(|(m, &c)| (m.dense_index(base), m.degree(), u128::from(c)))
                .collect()
        };
        let lhs = index(self);
        let rhs = index(other);
        let mut buf = vec![0u128; base.pow(nvars as u32)];
        for &(ia, da, ca) in &lhs {
            // rhs is graded, so degrees are nondecreasing
            for &(ib, db, cb) in &rhs {
                if da + db >= v {
                    break;
                }
                buf[ia + ib] += ca * cb;
            }
        }
        let modulus = u128::from(self.params.coeff_modulus());
        for (i, acc) in buf.into_iter().enumerate() {
            let c = acc % modulus;
            if c != 0 {
                out.terms.insert(Monomial::from_dense(i, base, nvars), c as u64);
            }
        }
        out
    }

    pub fn scale(&self, c: &PadicInt) -> Series {
        let c = u128::from(c.reduce(self.params.precision()).residue());
        let modulus = u128::from(self.params.coeff_modulus());
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (*m, ((u128::from(x) * c) % modulus) as u64))
            .collect();
        Series::from_raw(self.params, self.chart, self.validity, terms)
    }

    pub fn scale_int(&self, c: i64) -> Series {
        self.scale(&self.params.coeff(c))
    }

    fn neg_ref(&self) -> Series {
        let modulus = self.params.coeff_modulus();
        let terms = self.terms.iter().map(|(m, &c)| (*m, modulus - c)).collect();
        Series { terms, ..*self }
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.params, self.chart).with_validity(self.validity);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Reinterprets exponents under a variable map into another chart.
    /// `map[i]` is the target index of source variable `i`.
    pub(crate) fn rename(&self, target: Chart, map: &[usize]) -> Series {
        debug_assert_eq!(map.len(), self.chart.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut e = [0u8; 4];
                for (i, &t) in map.iter().enumerate() {
                    e[t] += m.exp(i);
                }
                (Monomial(e), c)
            })
            .collect();
        Series { chart: target, terms, ..*self }
    }

    /// Keeps the terms accepted by `keep`.
    pub(crate) fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Series {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, &c)| (*m, c)).collect();
        Series { terms, ..*self }
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}, v={}]({})", self.chart, self.validity, self)
    }
}

// Operator forms panic on chart mismatch; `try_*` report it as an error.
impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.try_add(rhs).expect("series chart mismatch")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.try_sub(rhs).expect("series chart mismatch")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.try_mul(rhs).expect("series chart mismatch")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_ref()
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::new(3, 4, 6).unwrap()
    }

    fn r(text: &str) -> Series {
        Series::parse(text, params(), ChartHint::Exact(Chart::R)).unwrap()
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let ms = monomials_below(2, 3);
        let names: Vec<_> = ms.iter().map(|m| m.exps()[..2].to_vec()).collect();
        assert_eq!(
            names,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomials_below(4, 6).len(), 126);
    }

    #[test]
    fn arith_examples() {
        assert!((&r("xi") + &r("eta")).agrees_with(&r("xi + eta")));
        assert!((&r("xi") * &r("eta")).agrees_with(&r("xi*eta")));
        let a = r("1 + xi").with_validity(4);
        let b = r("eta").with_validity(3);
        assert_eq!((&a * &b).validity(), 3);
        assert_eq!((&a + &b).validity(), 3);
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let s = Series::var(params(), Chart::SA, 0);
        assert!(matches!(r("xi").try_add(&s), Err(Error::ChartMismatch { .. })));
        assert!(matches!(r("xi").try_mul(&s), Err(Error::ChartMismatch { .. })));
    }

    #[test]
    fn products_truncate_at_validity() {
        let x = r("1 + xi");
        let p = x.pow(7);
        // (1+xi)^7 below degree 6
        let expect = r("1 + 7*xi + 21*xi^2 + 35*xi^3 + 35*xi^4 + 21*xi^5");
        assert!(p.agrees_with(&expect));
        assert_eq!(p.term_count(), 6);
    }

    #[test]
    fn unit_lowest_form() {
        assert!(!r("3 + xi").has_unit_lowest_form());
        assert!(r("3*xi + eta").has_unit_lowest_form());
        assert!(!r("0").has_unit_lowest_form());
    }
}
