//! The completed group algebras `R = Z_p[[X]]` and `S = R ⊗ R` of the free
//! abelian group `X = <x, y>`, with their structure maps.
//!
//! `R` is power series in `xi = x - 1`, `eta = y - 1`. `S` has the copies
//! `x(1), y(1), x(2), y(2)` and the diagonal elements `zeta = x(1)x(2) - 1`,
//! `tau = y(1)y(2) - 1`; the swap `gamma` exchanges the two tensor factors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{binomial, Params};
use crate::error::{Error, Result};
use crate::series::subst::inverse_of_shift;
use crate::series::{Chart, Series};

/// A group element `x^a y^b` of `X`, with exact integer exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GroupElt {
    pub a: i64,
    pub b: i64,
}

impl GroupElt {
    pub const IDENTITY: GroupElt = GroupElt { a: 0, b: 0 };
    pub const X: GroupElt = GroupElt { a: 1, b: 0 };
    pub const Y: GroupElt = GroupElt { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn inverse(&self) -> Self {
        Self { a: -self.a, b: -self.b }
    }

    /// `x^a y^b` as the unit `(1 + xi)^a (1 + eta)^b` of `R`.
    pub fn series(&self, params: Params) -> RElem {
        group_series(params, self.a, self.b)
    }
}

impl Mul for GroupElt {
    type Output = GroupElt;
    fn mul(self, rhs: GroupElt) -> GroupElt {
        GroupElt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} y^{}", self.a, self.b)
    }
}

/// `(1 + v)^e = sum_j C(e, j) v^j` for `v` without constant term.
pub(crate) fn shift_power(v: &Series, e: i64) -> Series {
    let params = v.params();
    let exponent = params.exponent(e);
    let mut acc = Series::zero(params, v.chart()).with_validity(v.validity());
    let mut power = Series::one(params, v.chart()).with_validity(v.validity());
    for j in 0..params.maxdeg() {
        let c = binomial(&params, &exponent, j).expect("j < D is within the binomial range");
        acc = &acc + &power.scale(&c);
        power = &power * v;
    }
    acc
}

/// `x^a y^b` in `R`, truncated below `D`.
pub fn group_series(params: Params, a: i64, b: i64) -> RElem {
    let xi = Series::var(params, Chart::R, 0);
    let eta = Series::var(params, Chart::R, 1);
    RElem(&shift_power(&xi, a) * &shift_power(&eta, b))
}

/// Element of `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct RElem(Series);

impl RElem {
    pub fn new(series: Series) -> Result<Self> {
        if series.chart() != Chart::R {
            return Err(Error::ChartMismatch { left: series.chart(), right: Chart::R });
        }
        Ok(Self(series))
    }

    pub fn zero(params: Params) -> Self {
        Self(Series::zero(params, Chart::R))
    }

    pub fn one(params: Params) -> Self {
        Self(Series::one(params, Chart::R))
    }

    pub fn xi(params: Params) -> Self {
        Self(Series::var(params, Chart::R, 0))
    }

    pub fn eta(params: Params) -> Self {
        Self(Series::var(params, Chart::R, 1))
    }

    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn into_series(self) -> Series {
        self.0
    }

    pub fn params(&self) -> Params {
        self.0.params()
    }

    pub fn validity(&self) -> u32 {
        self.0.validity()
    }

    pub fn with_validity(self, validity: u32) -> Self {
        Self(self.0.with_validity(validity))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn agrees_with(&self, other: &RElem) -> bool {
        self.0.agrees_with(&other.0)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        Self(self.0.scale_int(c))
    }

    pub fn half(&self) -> Self {
        Self(self.0.scale(&self.params().half()))
    }

    /// Right action of `X`: multiplication by the group series of `g`.
    pub fn act(&self, g: GroupElt) -> Self {
        self * &g.series(self.params())
    }

    /// The involution induced by `g -> g^-1` on `X`.
    pub fn star(&self) -> Self {
        let params = self.params();
        let inv = |i| {
            let v = Series::var(params, Chart::R, i);
            &inverse_of_shift(&v) - &Series::one(params, Chart::R)
        };
        let out = self.0.substitute(Chart::R, &[inv(0), inv(1)]).expect("images have no constant term");
        Self(out)
    }

    /// `(r_plus, r_minus)` with `r_plus* = r_plus`, `r_minus* = -r_minus`.
    pub fn decompose_pm(&self) -> (RElem, RElem) {
        let star = self.star();
        ((self + &star).half(), (self - &star).half())
    }

    pub fn is_symmetric(&self) -> bool {
        self.star().agrees_with(self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.star().agrees_with(&-self)
    }

    pub fn embed(&self, which: Embedding) -> SElem {
        let (chart, map): (Chart, [usize; 2]) = match which {
            Embedding::One => (Chart::SA, [0, 1]),
            Embedding::Two => (Chart::SA, [2, 3]),
            Embedding::Hat => (Chart::SB, [2, 3]),
        };
        SElem(self.0.rename(chart, &map))
    }
}

/// The three ring embeddings `R -> S`: `r(1)`, `r(2)` and the diagonal `r^`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    One,
    Two,
    Hat,
}

/// Principal ideals of `S` used by the intersection lemmas; `Delta` is
/// `S zeta + S tau`, the kernel of the retraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ideal {
    Zeta,
    Tau,
    ZetaTau,
    Delta,
}

/// Element of `S`, held in either chart.
#[derive(Clone, PartialEq, Eq)]
pub struct SElem(Series);

impl SElem {
    pub fn new(series: Series) -> Result<Self> {
        if !series.chart().is_s() {
            return Err(Error::ChartMismatch { left: series.chart(), right: Chart::SA });
        }
        Ok(Self(series))
    }

    pub fn zero(params: Params) -> Self {
        Self(Series::zero(params, Chart::SA))
    }

    pub fn one(params: Params) -> Self {
        Self(Series::one(params, Chart::SA))
    }

    pub fn zeta(params: Params) -> Self {
        Self(Series::var(params, Chart::SB, 2))
    }

    pub fn tau(params: Params) -> Self {
        Self(Series::var(params, Chart::SB, 3))
    }

    /// The variable with the given name in whichever chart contains it
    /// (`xi1` and `eta1` resolve to chart A).
    pub fn named(params: Params, name: &str) -> Result<Self> {
        for chart in [Chart::SA, Chart::SB] {
            if chart.var_index(name).is_some() {
                return Ok(Self(Series::named(params, chart, name)?));
            }
        }
        Err(Error::UnknownVariable { name: name.to_string(), column: 0 })
    }

    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn into_series(self) -> Series {
        self.0
    }

    pub fn params(&self) -> Params {
        self.0.params()
    }

    pub fn chart(&self) -> Chart {
        self.0.chart()
    }

    pub fn validity(&self) -> u32 {
        self.0.validity()
    }

    pub fn with_validity(self, validity: u32) -> Self {
        Self(self.0.with_validity(validity))
    }

    pub fn in_chart(&self, chart: Chart) -> Self {
        Self(self.0.chart_change(chart).expect("both charts describe S"))
    }

    pub fn chart_a(&self) -> Self {
        self.in_chart(Chart::SA)
    }

    pub fn chart_b(&self) -> Self {
        self.in_chart(Chart::SB)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Equality below the smaller validity, after moving to a common chart.
    pub fn agrees_with(&self, other: &SElem) -> bool {
        self.0.agrees_with(&other.in_chart(self.chart()).0)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        Self(self.0.scale_int(c))
    }

    pub fn half(&self) -> Self {
        Self(self.0.scale(&self.params().half()))
    }

    /// Multiplication by the diagonal image of `g`.
    pub fn act(&self, g: GroupElt) -> Self {
        self * &g.series(self.params()).embed(Embedding::Hat)
    }

    /// The swap of tensor factors. Chart A exchanges the indices; chart B
    /// fixes `zeta`, `tau` and sends `x(1)` to `x(1)^-1 (1 + zeta)`.
    pub fn gamma(&self) -> Self {
        match self.chart() {
            Chart::SB => {
                let params = self.params();
                let v = |i| Series::var(params, Chart::SB, i);
                let one = Series::one(params, Chart::SB);
                let xi1 = &(&inverse_of_shift(&v(0)) * &(&one + &v(2))) - &one;
                let eta1 = &(&inverse_of_shift(&v(1)) * &(&one + &v(3))) - &one;
                let out = self.0.substitute(Chart::SB, &[xi1, eta1, v(2), v(3)]);
                Self(out.expect("images have no constant term"))
            }
            _ => Self(self.0.rename(Chart::SA, &[2, 3, 0, 1])),
        }
    }

    /// `s (1 - gamma)`.
    pub fn antisymmetrize(&self) -> Self {
        self - &self.gamma()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.gamma().agrees_with(&-self)
    }

    /// The retraction `S -> R`: `g(1) -> g`, `g(2) -> g^-1`.
    pub fn pi(&self) -> RElem {
        let params = self.params();
        let xi = RElem::xi(params);
        let eta = RElem::eta(params);
        let images = match self.chart() {
            Chart::SB => [xi, eta, RElem::zero(params), RElem::zero(params)],
            _ => {
                let (xs, es) = (xi.star(), eta.star());
                [xi, eta, xs, es]
            }
        };
        let images: Vec<Series> = images.into_iter().map(RElem::into_series).collect();
        RElem(self.0.substitute(Chart::R, &images).expect("images have no constant term"))
    }

    /// Membership below validity, decided on the chart B monomials.
    pub fn in_ideal(&self, ideal: Ideal) -> bool {
        let b = self.chart_b();
        let (zeta, tau) = (2, 3);
        let member = b.0.terms().all(|(m, _)| match ideal {
            Ideal::Zeta => m.contains(zeta),
            Ideal::Tau => m.contains(tau),
            Ideal::ZetaTau => m.contains(zeta) && m.contains(tau),
            Ideal::Delta => m.contains(zeta) || m.contains(tau),
        });
        member
    }

    /// Exact division by `zeta` (`Ideal::Zeta`) or `tau` (`Ideal::Tau`) in
    /// chart B; validity drops by one per variable.
    pub fn divide(&self, ideal: Ideal) -> Result<Self> {
        let b = self.chart_b().0;
        let out = match ideal {
            Ideal::Zeta => b.divide_var(2)?,
            Ideal::Tau => b.divide_var(3)?,
            Ideal::ZetaTau => b.divide_var(2)?.divide_var(3)?,
            Ideal::Delta => return Err(Error::Precondition("Delta is not principal".into())),
        };
        Ok(Self(out))
    }

    fn combine(&self, other: &SElem, op: impl Fn(&Series, &Series) -> Series) -> SElem {
        let rhs = other.in_chart(self.chart());
        SElem(op(&self.0, &rhs.0))
    }
}

/// `(r(1) s(2))(1 - gamma) = r(1)s(2) - s(1)r(2)`.
pub fn pairing(r: &RElem, s: &RElem) -> SElem {
    (&r.embed(Embedding::One) * &s.embed(Embedding::Two)).antisymmetrize()
}

/// `r s* - s r*`, the image of [`pairing`] under the retraction.
pub fn pairing_pi(r: &RElem, s: &RElem) -> RElem {
    &(r * &s.star()) - &(s * &r.star())
}

macro_rules! forward_ops {
    ($ty:ident, $combine:expr) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $combine(self, rhs, |a: &Series, b: &Series| a + b)
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $combine(self, rhs, |a: &Series, b: &Series| a - b)
            }
        }
        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $combine(self, rhs, |a: &Series, b: &Series| a * b)
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(-&self.0)
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(-self.0)
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(&self.0, f)
            }
        }
    };
}

forward_ops!(RElem, |a: &RElem, b: &RElem, op: fn(&Series, &Series) -> Series| RElem(op(&a.0, &b.0)));
forward_ops!(SElem, |a: &SElem, b: &SElem, op: fn(&Series, &Series) -> Series| a.combine(b, op));
