//! Division operators on `S` and witnesses for the intersection identities.
//!
//! For `i = 1, 2` let `pi_i` be the retraction of `S` onto the subring that
//! forgets the other `x`-copy by setting `zeta = 0`: `pi_1` sends `x(2)` to
//! `x(1)^-1`, `pi_2` sends `x(1)` to `x(2)^-1`. Then `s - s pi_i` lies in
//! `S zeta` and `psi_i(s) = (s - s pi_i) / zeta`. The average
//! `psi = (psi_1 + psi_2) / 2` commutes with the swap. The same construction
//! with the `y`-copies and `tau` gives the `tau`-axis operators.

use crate::error::{Error, Result};
use crate::groupalg::{Ideal, SElem};
use crate::series::{Chart, Series};
use crate::series::subst::inverse_of_shift;

/// Which retraction a division operator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiIndex {
    One,
    Two,
    Avg,
}

/// The diagonal variable divided out: `zeta` (the `x` pair) or `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Zeta,
    Tau,
}

impl Axis {
    fn ideal(self) -> Ideal {
        match self {
            Axis::Zeta => Ideal::Zeta,
            Axis::Tau => Ideal::Tau,
        }
    }
}

/// An element `m` of `S` with `gamma(m) = -m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymElem(SElem);

impl AntisymElem {
    pub fn new(m: SElem) -> Result<Self> {
        if !m.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(Self(m))
    }

    /// `s (1 - gamma)`.
    pub fn from_difference(s: &SElem) -> Self {
        Self(s.antisymmetrize())
    }

    /// `(s - gamma(s)) / 2`, the antisymmetric part.
    pub fn project(s: &SElem) -> Self {
        Self(s.antisymmetrize().half())
    }

    pub fn elem(&self) -> &SElem {
        &self.0
    }

    pub fn into_elem(self) -> SElem {
        self.0
    }
}

/// `s pi_i` along `axis`, computed in chart A.
fn retract(s: &SElem, axis: Axis, which: usize) -> SElem {
    let a = s.chart_a();
    let params = a.params();
    let v = |i| Series::var(params, Chart::SA, i);
    let one = Series::one(params, Chart::SA);
    let (first, second) = match axis {
        Axis::Zeta => (0, 2),
        Axis::Tau => (1, 3),
    };
    let (kept, replaced) = if which == 1 { (first, second) } else { (second, first) };
    let mut images: Vec<Series> = (0..4).map(v).collect();
    images[replaced] = &inverse_of_shift(&v(kept)) - &one;
    let out = a.series().substitute(Chart::SA, &images).expect("images have no constant term");
    SElem::new(out).expect("chart A is a chart of S")
}

fn psi_single(s: &SElem, axis: Axis, which: usize) -> Result<SElem> {
    let diff = s - &retract(s, axis, which);
    diff.divide(axis.ideal())
}

/// `psi` along the given axis; validity drops by one.
pub fn psi_axis(s: &SElem, axis: Axis, which: PsiIndex) -> Result<SElem> {
    if s.validity() < 2 {
        return Err(Error::ValidityUnderflow { validity: s.validity(), needed: 2 });
    }
    match which {
        PsiIndex::One => psi_single(s, axis, 1),
        PsiIndex::Two => psi_single(s, axis, 2),
        PsiIndex::Avg => {
            let sum = &psi_single(s, axis, 1)? + &psi_single(s, axis, 2)?;
            Ok(sum.half())
        }
    }
}

/// `psi` along `zeta`.
pub fn psi(s: &SElem, which: PsiIndex) -> Result<SElem> {
    psi_axis(s, Axis::Zeta, which)
}

/// Given `a` with `a(1 - gamma)` in `S zeta`, returns the antisymmetric
/// `b = psi(a)(1 - gamma)` with `b zeta = a(1 - gamma)`, at validity `v - 1`.
pub fn solve_s_zeta(a: &SElem) -> Result<AntisymElem> {
    solve_axis(a, Axis::Zeta)
}

fn solve_axis(a: &SElem, axis: Axis) -> Result<AntisymElem> {
    if !a.antisymmetrize().in_ideal(axis.ideal()) {
        let name = match axis {
            Axis::Zeta => "S zeta",
            Axis::Tau => "S tau",
        };
        return Err(Error::Precondition(format!("a(1 - gamma) is not in {name}")));
    }
    Ok(AntisymElem::from_difference(&psi_axis(a, axis, PsiIndex::Avg)?))
}

/// Coefficients `(c_zeta, c_tau)` of a witness for `S(1 - gamma) ∩ Delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaWitness {
    pub zeta_coeff: SElem,
    pub tau_coeff: SElem,
}

impl DeltaWitness {
    /// `(c_zeta zeta + c_tau tau)(1 - gamma)`.
    pub fn image(&self) -> SElem {
        let params = self.zeta_coeff.params();
        let sum = &(&self.zeta_coeff * &SElem::zeta(params)) + &(&self.tau_coeff * &SElem::tau(params));
        sum.antisymmetrize()
    }
}

/// Given `r` with `r(1 - gamma)` in `Delta`, returns `(c_zeta, c_tau)` with
/// `r(1 - gamma) = (c_zeta zeta + c_tau tau)(1 - gamma)` at validity `v - 2`.
///
/// `c_zeta = psi(r)` removes the `zeta` part; what is left has its
/// antisymmetrization in `S tau` and is handled by the `tau`-axis operator.
/// Both coefficients are returned antisymmetric.
pub fn solve_s_delta(r: &SElem) -> Result<DeltaWitness> {
    if !r.antisymmetrize().in_ideal(Ideal::Delta) {
        return Err(Error::Precondition("r(1 - gamma) is not in Delta".into()));
    }
    let params = r.params();
    let zeta_coeff = psi(r, PsiIndex::Avg)?;
    let rest = r - &(&zeta_coeff * &SElem::zeta(params));
    let tau_coeff = psi_axis(&rest, Axis::Tau, PsiIndex::Avg)?;
    let zeta_coeff = zeta_coeff.with_validity(tau_coeff.validity());
    // c and c(1 - gamma)/2 have the same image since gamma fixes zeta and tau
    Ok(DeltaWitness {
        zeta_coeff: AntisymElem::project(&zeta_coeff).into_elem(),
        tau_coeff: AntisymElem::project(&tau_coeff).into_elem(),
    })
}

/// Given antisymmetric `a`, `b` with `a zeta = b tau`, returns the
/// antisymmetric `c` with `a = c tau` and `b = c zeta`, at validity `v - 2`.
pub fn cross_witness(a: &AntisymElem, b: &AntisymElem) -> Result<AntisymElem> {
    let params = a.elem().params();
    let lhs = a.elem() * &SElem::zeta(params);
    let rhs = b.elem() * &SElem::tau(params);
    if !lhs.agrees_with(&rhs) {
        return Err(Error::Precondition("a zeta differs from b tau".into()));
    }
    if !rhs.in_ideal(Ideal::ZetaTau) {
        return Err(Error::Precondition("b tau is not in S zeta tau".into()));
    }
    let quotient = rhs.divide(Ideal::ZetaTau)?;
    Ok(AntisymElem::project(&quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Params;
    use crate::series::ChartHint;

    fn params() -> Params {
        Params::new(3, 4, 6).unwrap()
    }

    fn s(text: &str) -> SElem {
        SElem::new(Series::parse(text, params(), ChartHint::S).unwrap()).unwrap()
    }

    #[test]
    fn psi_examples() {
        let p = params();
        assert!(psi(&SElem::zeta(p), PsiIndex::Avg).unwrap().agrees_with(&SElem::one(p)));
        assert!(psi(&s("xi1*zeta"), PsiIndex::Avg).unwrap().agrees_with(&s("xi1")));
        let xi2 = s("xi2");
        let one = SElem::one(p);
        let expect = crate::series::subst::inverse_of_shift(xi2.series());
        let expect = SElem::new(expect).unwrap().half();
        let got = psi(&s("xi1"), PsiIndex::Avg).unwrap();
        assert!(got.agrees_with(&expect));
        assert_eq!(got.validity(), 5);
        assert!(psi(&s("xi1"), PsiIndex::One).unwrap().is_zero());
        assert!(psi(&one.with_validity(1), PsiIndex::Avg).is_err());
    }

    #[test]
    fn solve_s_zeta_examples() {
        let p = params();
        let b = solve_s_zeta(&s("xi1*zeta")).unwrap();
        assert!(b.elem().agrees_with(&s("xi1 - xi2")));
        let lhs = b.elem() * &SElem::zeta(p);
        assert!(lhs.agrees_with(&s("xi1*zeta").antisymmetrize()));
        assert!(solve_s_zeta(&SElem::zeta(p)).unwrap().elem().is_zero());
        assert!(matches!(solve_s_zeta(&s("xi1")), Err(Error::Precondition(_))));
    }

    #[test]
    fn solve_s_delta_examples() {
        let p = params();
        let r = s("xi1*zeta + eta1*tau");
        let w = solve_s_delta(&r).unwrap();
        assert!(w.image().agrees_with(&r.antisymmetrize()));
        assert_eq!(w.image().validity(), 4);
        let w = solve_s_delta(&SElem::zeta(p)).unwrap();
        assert!(w.zeta_coeff.is_zero() && w.tau_coeff.is_zero());
        assert!(matches!(solve_s_delta(&s("xi1 + eta1")), Err(Error::Precondition(_))));
    }

    #[test]
    fn cross_witness_examples() {
        let p = params();
        let m = s("xi1 - xi2");
        let a = AntisymElem::new(&m * &SElem::tau(p)).unwrap();
        let b = AntisymElem::new(&m * &SElem::zeta(p)).unwrap();
        let c = cross_witness(&a, &b).unwrap();
        assert!(c.elem().agrees_with(&m));
        let zero = AntisymElem::new(SElem::zero(p)).unwrap();
        assert!(cross_witness(&zero, &zero).unwrap().elem().is_zero());
        let bad = AntisymElem::new(m).unwrap();
        assert!(matches!(cross_witness(&bad, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn antisym_rejects_symmetric() {
        assert_eq!(AntisymElem::new(s("xi1 + xi2")), Err(Error::NotAntisymmetric));
    }
}
