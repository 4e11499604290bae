//! The ring `(R, *)` read off inside the centre-by-metabelian group.
//!
//! A derived element `v = u^r z^w` has coordinate `f(v) = r`; `f` is constant
//! on cosets of the centre. Each relation below is evaluated twice, once on
//! coordinates and once on the group side, so every call also tests the
//! equivalence between the two.

use crate::coeff::Params;
use crate::error::{Error, Result};
use crate::groupalg::{GroupElt, RElem};
use crate::groups::{membership_cn, CbmElem, CnClass};
use crate::oracle;

/// The coordinate of a derived element.
pub fn f_map(v: &CbmElem) -> Result<RElem> {
    if !v.in_derived() {
        return Err(Error::NotInDerived);
    }
    Ok(v.r.clone())
}

/// Both sides of a definable relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelOutcome {
    pub coordinate: bool,
    pub group: bool,
}

impl RelOutcome {
    pub fn consistent(&self) -> bool {
        self.coordinate == self.group
    }
}

/// `f(v) + f(w) = f(z)` against `z^-1 v w` having trivial coordinate.
pub fn rel_add_check(v: &CbmElem, w: &CbmElem, z: &CbmElem) -> Result<RelOutcome> {
    let (fv, fw, fz) = (f_map(v)?, f_map(w)?, f_map(z)?);
    let coordinate = (&fv + &fw).agrees_with(&fz);
    let group = z.inv().mul(v).mul(w).r.is_zero();
    Ok(RelOutcome { coordinate, group })
}

/// `f(w) = f(z)*` against `w z` in `C` and `w z^-1` in `N`.
pub fn rel_star_check(w: &CbmElem, z: &CbmElem) -> Result<RelOutcome> {
    let (fw, fz) = (f_map(w)?, f_map(z)?);
    let coordinate = fw.agrees_with(&fz.star());
    let in_c = matches!(membership_cn(&w.mul(z))?, CnClass::C | CnClass::Both);
    let in_n = matches!(membership_cn(&w.mul(&z.inv()))?, CnClass::N | CnClass::Both);
    Ok(RelOutcome { coordinate, group: in_c && in_n })
}

/// Outcome of [`rel_product_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductOutcome {
    /// `f(z) = f(v) f(w)*`.
    pub coordinate: bool,
    /// `[v, w^g] = [z, u^g]` for every sampled `g`.
    pub group: bool,
    /// Dimension of the sample's pairing kernel below degree `D - 2`.
    pub kernel_dim: usize,
    /// When the group side holds and the kernel is zero, `f(z)` and
    /// `f(v) f(w)*` agree below degree `D - 2`.
    pub converse: bool,
}

impl ProductOutcome {
    pub fn forward(&self) -> bool {
        !self.coordinate || self.group
    }

    pub fn consistent(&self) -> bool {
        self.forward() && self.converse
    }
}

/// The product relation `f(v) f(w)* = f(z)`, characterized on the group side
/// by `[v, w^g] = [z, u^g]` for all `g`; the quantifier runs over `sample`
/// and is certified by [`pairing_kernel`].
pub fn rel_product_check(
    v: &CbmElem,
    w: &CbmElem,
    z: &CbmElem,
    sample: &[GroupElt],
) -> Result<ProductOutcome> {
    let (fv, fw, fz) = (f_map(v)?, f_map(w)?, f_map(z)?);
    let params = fv.params();
    let target = &fv * &fw.star();
    let coordinate = fz.agrees_with(&target);
    let u = CbmElem::lift(RElem::one(params));
    let group = sample
        .iter()
        .all(|g| v.comm(&w.conj(*g)).agrees_with(&z.comm(&u.conj(*g))));
    let d = params.maxdeg() - 2;
    let kernel_dim = pairing_kernel(&params, sample, d)?;
    let converse = !(group && kernel_dim == 0) || (&fz - &target).with_validity(d).is_zero();
    Ok(ProductOutcome { coordinate, group, kernel_dim, converse })
}

/// Dimension modulo `p` of the degree `< d` part of the common kernel of
/// `t -> t g* - g t*` (taken below degree `d + 1`) over the sample.
pub fn pairing_kernel(params: &Params, sample: &[GroupElt], d: u32) -> Result<usize> {
    if d > params.maxdeg() {
        return Err(Error::Precondition(format!("degree {d} exceeds D = {}", params.maxdeg())));
    }
    oracle::pairing_kernel(params.p(), sample, d)
}

/// A triple of derived elements with the sample used for `for all g`.
#[derive(Debug, Clone)]
pub struct InterpInstance {
    pub v: CbmElem,
    pub w: CbmElem,
    pub z: CbmElem,
    pub sample: Vec<GroupElt>,
}

impl InterpInstance {
    /// Requires derived elements and a sample containing `1`, `x` and `y`.
    pub fn new(v: CbmElem, w: CbmElem, z: CbmElem, sample: Vec<GroupElt>) -> Result<Self> {
        if ![&v, &w, &z].iter().all(|e| e.in_derived()) {
            return Err(Error::NotInDerived);
        }
        for g in [GroupElt::IDENTITY, GroupElt::X, GroupElt::Y] {
            if !sample.contains(&g) {
                return Err(Error::Precondition(format!("sample lacks {g}")));
            }
        }
        Ok(Self { v, w, z, sample })
    }

    pub fn add(&self) -> Result<RelOutcome> {
        rel_add_check(&self.v, &self.w, &self.z)
    }

    pub fn star(&self) -> Result<RelOutcome> {
        rel_star_check(&self.w, &self.z)
    }

    pub fn product(&self) -> Result<ProductOutcome> {
        rel_product_check(&self.v, &self.w, &self.z, &self.sample)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::group_series;
    use crate::oracle::spanning_sample;
    use crate::series::{ChartHint, Series};

    fn params() -> Params {
        Params::new(3, 4, 6).unwrap()
    }

    fn r(text: &str) -> RElem {
        RElem::new(Series::parse(text, params(), ChartHint::R).unwrap()).unwrap()
    }

    fn lift(text: &str) -> CbmElem {
        CbmElem::lift(r(text))
    }

    #[test]
    fn f_map_examples() {
        let p = params();
        assert!(f_map(&lift("1")).unwrap().agrees_with(&RElem::one(p)));
        let w = r("xi - eta").decompose_pm().1;
        let v = lift("xi").mul(&CbmElem::central(w));
        assert!(f_map(&v).unwrap().agrees_with(&RElem::xi(p)));
        assert_eq!(f_map(&CbmElem::x(p)), Err(Error::NotInDerived));
    }

    #[test]
    fn add_examples() {
        let p = params();
        let out = rel_add_check(&lift("xi"), &lift("eta"), &lift("xi + eta")).unwrap();
        assert!(out.coordinate && out.group);
        let e = CbmElem::identity(p);
        let out = rel_add_check(&e, &e, &e).unwrap();
        assert!(out.coordinate && out.group);
        let out = rel_add_check(&lift("xi"), &lift("xi"), &lift("xi")).unwrap();
        assert!(!out.coordinate && !out.group);
    }

    #[test]
    fn star_examples() {
        let p = params();
        let x = group_series(p, 1, 0);
        let out = rel_star_check(&CbmElem::lift(x.star()), &CbmElem::lift(x.clone())).unwrap();
        assert!(out.coordinate && out.group);
        let sym = (&x + &x.star()).half();
        let out = rel_star_check(&CbmElem::lift(sym.clone()), &CbmElem::lift(sym)).unwrap();
        assert!(out.coordinate && out.group);
        let out = rel_star_check(&lift("xi"), &lift("xi")).unwrap();
        assert!(!out.coordinate && !out.group);
    }

    #[test]
    fn product_examples() {
        let p = params();
        let sample = spanning_sample(7);
        let u = lift("1");
        let out = rel_product_check(&u, &u, &u, &sample).unwrap();
        assert!(out.coordinate && out.group && out.consistent());
        assert_eq!(out.kernel_dim, 0);

        let x = group_series(p, 1, 0);
        let y = group_series(p, 0, 1);
        let z = &x * &group_series(p, 0, -1);
        let out = rel_product_check(&CbmElem::lift(x), &CbmElem::lift(y), &CbmElem::lift(z), &sample)
            .unwrap();
        assert!(out.coordinate && out.group);

        let out = rel_product_check(&u, &u, &CbmElem::identity(p), &sample).unwrap();
        assert!(!out.coordinate && !out.group && out.consistent());
    }

    #[test]
    fn instance_validation() {
        let p = params();
        let e = CbmElem::identity(p);
        assert!(InterpInstance::new(e.clone(), e.clone(), e.clone(), vec![GroupElt::X]).is_err());
        let inst = InterpInstance::new(e.clone(), e.clone(), e, spanning_sample(4)).unwrap();
        assert!(inst.add().unwrap().consistent());
    }
}
