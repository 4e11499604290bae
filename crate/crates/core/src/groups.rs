//! Normal forms in the free metabelian group `F/D_2` and a model of the free
//! centre-by-metabelian group `F/Q` on `x, y`.
//!
//! Commutators are `[g, h] = g^-1 h^-1 g h` and `u = [y, x]`. The derived
//! group of `F/D_2` is the free cyclic `R`-module on `u`, so an element is
//! `x^a y^b u^r` with `r` in `R`, written `(a, b, r)`.
//!
//! In the centre-by-metabelian model an element is `(a, b, r, w)` with `w` in
//! `R_-` the central coordinate. The derived part `H = {(r, w)}` multiplies
//! with the alternating cocycle `beta(r, s) = (r s* - s r*) / 2`, `y` acts by
//! `(r, w) -> (r y, w)` and `x` by `(r, w) -> (r x, w + lambda(r))`, where
//! `lambda(t) = K(t) - K(t)*` and `K(t) = x y (t - t|_{eta=0}) / eta`. The
//! correction `lambda` is what makes the two actions compatible with
//! `y^x = y u`; the central coordinate therefore has validity `D - 1`.

use crate::coeff::{binomial, Params};
use crate::error::{Error, Result};
use crate::groupalg::{group_series, pairing_pi, GroupElt, RElem};
use crate::oracle::{augmentation_quotient_dim, injectivity_rank, intersection_dim, xy_sample};
use crate::series::{Chart, Monomial, Series};

/// `sum_{j >= 1} C(e, j + shift) v^(j-1)` in variable `var` of `R`.
fn binomial_tail(params: Params, var: usize, e: i64, shift: u32) -> RElem {
    let exponent = params.exponent(e);
    let terms = (1..=params.maxdeg()).map(|j| {
        let c = binomial(&params, &exponent, j + shift).expect("j + shift <= D + 1");
        let mut exps = [0u8; 2];
        exps[var] = (j - 1) as u8;
        (Monomial::new(&exps), c.symmetric())
    });
    RElem::new(Series::from_terms(params, Chart::R, terms)).expect("chart R")
}

/// `(x^a - 1) / (x - 1)`.
fn x_quotient(params: Params, a: i64) -> RElem {
    binomial_tail(params, 0, a, 0)
}

/// `((x^a - 1)/(x - 1)) ((y^b - 1)/(y - 1))`, the coordinate of `[y^b, x^a]`.
pub fn phi_series(params: Params, a: i64, b: i64) -> RElem {
    &x_quotient(params, a) * &binomial_tail(params, 1, b, 0)
}

/// Element `x^a y^b u^r` of the free metabelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetabElem {
    pub a: i64,
    pub b: i64,
    pub r: RElem,
}

impl MetabElem {
    pub fn new(a: i64, b: i64, r: RElem) -> Self {
        Self { a, b, r }
    }

    pub fn identity(params: Params) -> Self {
        Self::new(0, 0, RElem::zero(params))
    }

    pub fn x(params: Params) -> Self {
        Self::new(1, 0, RElem::zero(params))
    }

    pub fn y(params: Params) -> Self {
        Self::new(0, 1, RElem::zero(params))
    }

    /// `u^r`.
    pub fn lift(r: RElem) -> Self {
        Self::new(0, 0, r)
    }

    pub fn params(&self) -> Params {
        self.r.params()
    }

    pub fn agrees_with(&self, other: &MetabElem) -> bool {
        self.a == other.a && self.b == other.b && self.r.agrees_with(&other.r)
    }

    pub fn mul(&self, other: &MetabElem) -> MetabElem {
        let params = self.params();
        let shift = GroupElt::new(other.a, other.b);
        let collected = phi_series(params, other.a, self.b).act(GroupElt::new(0, other.b));
        let r = &(&self.r.act(shift) + &collected) + &other.r;
        MetabElem::new(self.a + other.a, self.b + other.b, r)
    }

    pub fn inv(&self) -> MetabElem {
        let params = self.params();
        let back = GroupElt::new(-self.a, -self.b);
        let collected = phi_series(params, -self.a, self.b).act(GroupElt::new(0, -self.b));
        let r = -(&self.r.act(back) + &collected);
        MetabElem::new(-self.a, -self.b, r)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn comm(&self, other: &MetabElem) -> MetabElem {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }
}

/// Coordinate of `[y^b, x^a]` for `a, b >= 1`, expanded with
/// `[g h, k] = [g, k]^h [h, k]` and `[k, g h] = [k, h] [k, g]^h`; conjugation
/// by `h` acts on coordinates as multiplication by `h`.
pub fn collected_commutator(params: Params, a: u32, b: u32) -> RElem {
    assert!(a >= 1 && b >= 1);
    let x = group_series(params, 1, 0);
    let y = group_series(params, 0, 1);
    // [y, x^a] = [y, x] [y, x^(a-1)]^x
    let mut single = RElem::one(params);
    for _ in 1..a {
        single = &RElem::one(params) + &(&single * &x);
    }
    // [y^b, x^a] = [y^(b-1), x^a]^y [y, x^a]
    let mut acc = single.clone();
    for _ in 1..b {
        acc = &(&acc * &y) + &single;
    }
    acc
}

/// `(r s* - s r*) / 2`.
pub fn beta(r: &RElem, s: &RElem) -> RElem {
    pairing_pi(r, s).half()
}

/// `K(t) - K(t)*` with `K(t) = x y (t - t|_{eta=0}) / eta`; validity drops by one.
pub fn lambda_x(t: &RElem) -> RElem {
    let params = t.params();
    let series = t.series();
    let eta_free = series.filter_terms(|m| !m.contains(1));
    let quotient = (series - &eta_free).divide_var(1).expect("every remaining term contains eta");
    let k = &RElem::new(quotient).expect("chart R") * &group_series(params, 1, 1);
    &k - &k.star()
}

/// Central coordinate of the lift of `[y^b, x^a]`.
fn delta(params: Params, b: i64, a: i64) -> RElem {
    let one = RElem::one(params);
    let x = group_series(params, 1, 0);
    let r_a = x_quotient(params, a);
    let sigma = binomial_tail(params, 0, a, 1);
    let w_a = &lambda_x(&sigma) + &beta(&one, &(&x * &sigma));
    let t = &binomial_tail(params, 1, b + 1, 1) - &one.scale_int(b);
    let cross = &(&r_a * &r_a.star()) * &(&t - &t.star());
    &w_a.scale_int(b) + &cross.half()
}

/// Element `x^a y^b u^r z^w` of the centre-by-metabelian model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbmElem {
    pub a: i64,
    pub b: i64,
    pub r: RElem,
    pub w: RElem,
}

impl CbmElem {
    pub fn new(a: i64, b: i64, r: RElem, w: RElem) -> Self {
        Self { a, b, r, w }
    }

    pub fn identity(params: Params) -> Self {
        Self::new(0, 0, RElem::zero(params), RElem::zero(params))
    }

    pub fn x(params: Params) -> Self {
        Self::new(1, 0, RElem::zero(params), RElem::zero(params))
    }

    pub fn y(params: Params) -> Self {
        Self::new(0, 1, RElem::zero(params), RElem::zero(params))
    }

    /// The lift `u^r` of an element of `D/D_2`.
    pub fn lift(r: RElem) -> Self {
        let params = r.params();
        Self::new(0, 0, r, RElem::zero(params))
    }

    /// The central element with coordinate `w`.
    pub fn central(w: RElem) -> Self {
        let params = w.params();
        Self::new(0, 0, RElem::zero(params), w)
    }

    /// `x^a y^b`.
    pub fn group(params: Params, g: GroupElt) -> Self {
        Self::new(g.a, g.b, RElem::zero(params), RElem::zero(params))
    }

    pub fn params(&self) -> Params {
        self.r.params()
    }

    pub fn in_derived(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_central_coordinate_only(&self) -> bool {
        self.in_derived() && self.r.is_zero()
    }

    pub fn agrees_with(&self, other: &CbmElem) -> bool {
        self.a == other.a
            && self.b == other.b
            && self.r.agrees_with(&other.r)
            && self.w.agrees_with(&other.w)
    }

    pub fn mul(&self, other: &CbmElem) -> CbmElem {
        let params = self.params();
        let y_shift = GroupElt::new(0, other.b);
        let collected = phi_series(params, other.a, self.b).act(y_shift);
        let moved = self.r.act(GroupElt::new(other.a, other.b));
        let derived = &collected + &moved;
        let r = &derived + &other.r;
        let w = [
            delta(params, self.b, other.a),
            self.w.clone(),
            lambda_x(&(&self.r * &x_quotient(params, other.a))),
            other.w.clone(),
            beta(&collected, &moved),
            beta(&derived, &other.r),
        ]
        .iter()
        .fold(RElem::zero(params), |acc, t| &acc + t);
        CbmElem::new(self.a + other.a, self.b + other.b, r, w)
    }

    pub fn inv(&self) -> CbmElem {
        let params = self.params();
        let y_shift = GroupElt::new(0, -self.b);
        let collected = phi_series(params, -self.a, self.b).act(y_shift);
        let moved = self.r.act(GroupElt::new(-self.a, -self.b));
        let r = -(&collected + &moved);
        let w = [
            delta(params, self.b, -self.a),
            self.w.clone(),
            lambda_x(&(&self.r * &x_quotient(params, -self.a))),
            beta(&collected, &moved),
        ]
        .iter()
        .fold(RElem::zero(params), |acc, t| &acc + t);
        CbmElem::new(-self.a, -self.b, r, -w)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn comm(&self, other: &CbmElem) -> CbmElem {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    /// `t^-1 self t`.
    pub fn conj(&self, t: GroupElt) -> CbmElem {
        let g = CbmElem::group(self.params(), t);
        g.inv().mul(self).mul(&g)
    }
}

/// Conjugate of a derived element by `x^a y^b`, in closed form:
/// `(r, w) -> (r x^a y^b, w + lambda(r (x^a - 1)/(x - 1)))`.
pub fn conj_derived(g: &CbmElem, t: GroupElt) -> Result<CbmElem> {
    if !g.in_derived() {
        return Err(Error::NotInDerived);
    }
    let params = g.params();
    let r = g.r.act(t);
    let w = &g.w + &lambda_x(&(&g.r * &x_quotient(params, t.a)));
    Ok(CbmElem::new(0, 0, r, w))
}

/// Position of a derived element relative to `C = u^{R_+}` and `N = u^{R_-}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnClass {
    C,
    N,
    Both,
    Neither,
}

/// Membership in `C`, the centralizer of `u`, and `N`, the centralizer of
/// `u^x u^{-x^-1}`, decided by commutators in the group.
pub fn membership_cn(g: &CbmElem) -> Result<CnClass> {
    if !g.in_derived() {
        return Err(Error::NotInDerived);
    }
    let params = g.params();
    let identity = CbmElem::identity(params);
    let u = CbmElem::lift(RElem::one(params));
    let n = u.conj(GroupElt::X).mul(&u.conj(GroupElt::X.inverse()).inv());
    let in_c = g.comm(&u).agrees_with(&identity);
    let in_n = g.comm(&n).agrees_with(&identity);
    Ok(match (in_c, in_n) {
        (true, true) => CnClass::Both,
        (true, false) => CnClass::C,
        (false, true) => CnClass::N,
        (false, false) => CnClass::Neither,
    })
}

/// Outcome of [`centralizer_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerReport {
    /// `r` lies in `R_+` (otherwise in `R_-`).
    pub symmetric: bool,
    /// `r s* - s r* = r (s* -+ s)`.
    pub identity_holds: bool,
    pub pairing_vanishes: bool,
    /// `s` is in the same class as `r`, checked below `v - ord(r)`.
    pub same_class: bool,
}

impl CentralizerReport {
    pub fn consistent(&self) -> bool {
        self.identity_holds && self.pairing_vanishes == self.same_class
    }
}

/// Checks that `u^s` commutes with `u^r` modulo the centre exactly when `s`
/// lies in the class (`R_+` or `R_-`) of `r`.
///
/// Requires a unit coefficient in the lowest form of `r`, which makes
/// multiplication by `r` injective from degree `< v - ord(r)` to `< v`.
pub fn centralizer_check(r: &RElem, s: &RElem) -> Result<CentralizerReport> {
    if !r.series().has_unit_lowest_form() {
        return Err(Error::Degenerate);
    }
    let symmetric = if r.is_symmetric() {
        true
    } else if r.is_antisymmetric() {
        false
    } else {
        return Err(Error::Precondition("r is in neither R_+ nor R_-".into()));
    };
    let pairing = pairing_pi(r, s);
    let defect = if symmetric { &s.star() - s } else { &s.star() + s };
    let identity_holds = pairing.agrees_with(&(r * &defect));
    let order = r.series().order().unwrap_or(0);
    let validity = pairing.validity().min(defect.validity());
    let same_class = defect.with_validity(validity.saturating_sub(order)).is_zero();
    Ok(CentralizerReport {
        symmetric,
        identity_holds,
        pairing_vanishes: pairing.is_zero(),
        same_class,
    })
}

/// The three hypotheses of the pro-`p` criterion, at degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfReport {
    /// Dimension of the antisymmetric part modulo `p` and `Delta(1 - gamma)`.
    pub quotient_dim: usize,
    /// Rank of the intersection over `{x y^j : 0 <= j <= d}`.
    pub intersection_dim: usize,
    /// Injectivity of `m -> m (g^ - 1)` for `g` in `x, y, x y`.
    pub injective: Vec<(GroupElt, bool)>,
}

impl ProfReport {
    pub fn hypotheses(&self) -> (bool, bool, bool) {
        (
            self.quotient_dim > 0,
            self.intersection_dim == 0,
            self.injective.iter().all(|(_, ok)| *ok),
        )
    }
}

pub fn prof_hypotheses_check(params: &Params, d: u32) -> Result<ProfReport> {
    if d + 1 > params.maxdeg() {
        return Err(Error::Precondition(format!("degree {d} must be at most D - 1")));
    }
    let p = params.p();
    let injective = [GroupElt::X, GroupElt::Y, GroupElt::new(1, 1)]
        .into_iter()
        .map(|g| injectivity_rank(p, g, d).map(|ok| (g, ok)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfReport {
        quotient_dim: augmentation_quotient_dim(p, d)?,
        intersection_dim: intersection_dim(&xy_sample(d), d)?,
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ChartHint;

    fn params() -> Params {
        Params::new(3, 4, 6).unwrap()
    }

    fn r(text: &str) -> RElem {
        RElem::new(Series::parse(text, params(), ChartHint::R).unwrap()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let p = params();
        assert!(phi_series(p, 1, 1).agrees_with(&RElem::one(p)));
        assert!(phi_series(p, 2, 1).agrees_with(&r("2 + xi")));
        assert!(phi_series(p, 5, 0).is_zero());
    }

    #[test]
    fn metab_examples() {
        let p = params();
        let xy = MetabElem::new(1, 1, RElem::zero(p));
        let got = xy.mul(&MetabElem::x(p));
        assert!(got.agrees_with(&MetabElem::new(2, 1, RElem::one(p))));
        let g = MetabElem::new(2, -3, r("1 + xi*eta - 4*eta^2"));
        assert!(g.mul(&MetabElem::identity(p)).agrees_with(&g));
        assert!(g.mul(&g.inv()).agrees_with(&MetabElem::identity(p)));
        assert!(g.inv().mul(&g).agrees_with(&MetabElem::identity(p)));
    }

    #[test]
    fn metab_commutators() {
        let p = params();
        let u = MetabElem::y(p).comm(&MetabElem::x(p));
        assert!(u.agrees_with(&MetabElem::lift(RElem::one(p))));
        let g = MetabElem::new(1, 2, r("xi - eta"));
        assert!(g.comm(&g).agrees_with(&MetabElem::identity(p)));
        for a in 1..=3 {
            for b in 1..=3 {
                let ya = MetabElem::new(0, i64::from(b), RElem::zero(p));
                let xa = MetabElem::new(i64::from(a), 0, RElem::zero(p));
                let c = ya.comm(&xa);
                let oracle = collected_commutator(p, a, b);
                assert!(c.agrees_with(&MetabElem::lift(oracle.clone())), "a={a} b={b}");
                assert!(phi_series(p, i64::from(a), i64::from(b)).agrees_with(&oracle));
            }
        }
    }

    type Derived = (RElem, RElem);

    fn h_mul(g: &Derived, h: &Derived) -> Derived {
        (&g.0 + &h.0, &(&g.1 + &h.1) + &beta(&g.0, &h.0))
    }

    /// Lift of `[y^b, x^a]` built only from the derived-group law and the two
    /// actions: `x^-i y x^i = y c_i` with `c_i` the ordered product of the
    /// `x`-translates of `u`, and `(y c)^b = y^b (c^(y^(b-1)) ... c^y c)`.
    fn commutator_lift_by_iteration(p: Params, b: u32, a: u32) -> Derived {
        let x = group_series(p, 1, 0);
        let y = group_series(p, 0, 1);
        let act_x = |h: &Derived| (&h.0 * &x, &h.1 + &lambda_x(&h.0));
        let mut translate: Derived = (RElem::one(p), RElem::zero(p));
        let mut c: Derived = (RElem::zero(p), RElem::zero(p));
        for _ in 0..a {
            c = h_mul(&c, &translate);
            translate = act_x(&translate);
        }
        let mut acc: Derived = (RElem::zero(p), RElem::zero(p));
        let mut shifted = c;
        for _ in 0..b {
            acc = h_mul(&shifted, &acc);
            shifted = (&shifted.0 * &y, shifted.1.clone());
        }
        acc
    }

    #[test]
    fn delta_matches_commutator_lifts() {
        let p = params();
        let yx = CbmElem::y(p).conj(GroupElt::X);
        assert!(yx.agrees_with(&CbmElem::new(0, 1, RElem::one(p), RElem::zero(p))));
        for a in 1..=4 {
            for b in 1..=4 {
                let (r, w) = commutator_lift_by_iteration(p, b, a);
                assert!(r.agrees_with(&phi_series(p, a.into(), b.into())), "a={a} b={b}");
                assert!(w.agrees_with(&delta(p, b.into(), a.into())), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn cbm_examples() {
        let p = params();
        let one = RElem::one(p);
        let xi = RElem::xi(p);
        let c = CbmElem::lift(one.clone()).comm(&CbmElem::lift(xi.clone()));
        let expect = &xi.star() - &xi;
        assert!(c.agrees_with(&CbmElem::central(expect)));
        let z = CbmElem::lift(r("1 + eta"));
        assert!(z.comm(&z).agrees_with(&CbmElem::identity(p)));
        let conj = CbmElem::lift(one).conj(GroupElt::X);
        assert!(conj.r.agrees_with(&group_series(p, 1, 0)));
        let g = CbmElem::new(2, -1, r("xi - 3*eta^2"), r("xi - eta").decompose_pm().1);
        assert!(g.mul(&g.inv()).agrees_with(&CbmElem::identity(p)));
        assert!(g.inv().mul(&g).agrees_with(&CbmElem::identity(p)));
    }

    #[test]
    fn cbm_conjugation_closed_form() {
        let g = CbmElem::new(0, 0, r("2 - xi*eta + eta^3"), r("eta - xi").decompose_pm().1);
        for t in [GroupElt::X, GroupElt::Y, GroupElt::new(-2, 3)] {
            assert!(g.conj(t).agrees_with(&conj_derived(&g, t).unwrap()));
        }
    }

    #[test]
    fn cn_examples() {
        let p = params();
        let u = CbmElem::lift(RElem::one(p));
        assert_eq!(membership_cn(&u).unwrap(), CnClass::C);
        let x = group_series(p, 1, 0);
        let n = CbmElem::lift(&x - &x.star());
        assert_eq!(membership_cn(&n).unwrap(), CnClass::N);
        let z = CbmElem::central(&RElem::xi(p) - &RElem::xi(p).star());
        assert_eq!(membership_cn(&z).unwrap(), CnClass::Both);
        assert_eq!(membership_cn(&CbmElem::lift(RElem::xi(p))).unwrap(), CnClass::Neither);
        assert_eq!(membership_cn(&CbmElem::x(p)), Err(Error::NotInDerived));
    }

    #[test]
    fn centralizer_examples() {
        let p = params();
        let one = RElem::one(p);
        let xi = RElem::xi(p);
        let sym = &xi + &xi.star();
        let rep = centralizer_check(&one, &sym).unwrap();
        assert!(rep.consistent() && rep.pairing_vanishes);
        let rep = centralizer_check(&one, &xi).unwrap();
        assert!(rep.consistent() && !rep.pairing_vanishes);
        let x = group_series(p, 1, 0);
        let anti = &x - &x.star();
        let s = &RElem::eta(p) - &RElem::eta(p).star();
        let rep = centralizer_check(&anti, &s).unwrap();
        assert!(rep.consistent() && rep.pairing_vanishes && !rep.symmetric);
        assert_eq!(centralizer_check(&one.scale_int(3), &xi), Err(Error::Degenerate));
    }

    #[test]
    fn prof_hypotheses() {
        let p = Params::new(3, 4, 6).unwrap();
        let report = prof_hypotheses_check(&p, 4).unwrap();
        assert_eq!(report.hypotheses(), (true, true, true));
        assert!(prof_hypotheses_check(&p, 6).is_err());
    }
}
