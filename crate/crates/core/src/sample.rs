//! Seeded random instances.
//!
//! Coefficients are uniform modulo `p^N`; each monomial of degree `< D`
//! appears with probability [`DENSITY`]; group exponents are uniform in
//! `[-p^2, p^2]`.

use rand::Rng;

use crate::coeff::Params;
use crate::groupalg::{GroupElt, RElem, SElem};
use crate::groups::{CbmElem, MetabElem};
use crate::series::{monomials_below, Chart, Series};

pub const DENSITY: f64 = 0.5;

/// Instance generator over a caller-supplied RNG.
pub struct Sampler<'a, G: Rng> {
    params: Params,
    rng: &'a mut G,
}

impl<'a, G: Rng> Sampler<'a, G> {
    pub fn new(params: Params, rng: &'a mut G) -> Self {
        Self { params, rng }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn coeff(&mut self) -> i64 {
        self.rng.random_range(0..self.params.coeff_modulus()) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn exponent(&mut self) -> i64 {
        let bound = (self.params.p() * self.params.p()) as i64;
        self.rng.random_range(-bound..=bound)
    }

    pub fn group_elt(&mut self) -> GroupElt {
        GroupElt::new(self.exponent(), self.exponent())
    }

    pub fn series(&mut self, chart: Chart) -> Series {
        let mut terms = Vec::new();
        for m in monomials_below(chart.nvars(), self.params.maxdeg()) {
            if self.rng.random_bool(DENSITY) {
                terms.push((m, self.coeff()));
            }
        }
        Series::from_terms(self.params, chart, terms)
    }

    pub fn r_elem(&mut self) -> RElem {
        RElem::new(self.series(Chart::R)).expect("chart R")
    }

    /// An element of `S` written in chart A.
    pub fn s_elem(&mut self) -> SElem {
        SElem::new(self.series(Chart::SA)).expect("chart A")
    }

    /// An element of `R` whose lowest form has a unit coefficient.
    pub fn r_unit_lead(&mut self) -> RElem {
        loop {
            let r = self.r_elem();
            if r.series().has_unit_lowest_form() {
                return r;
            }
        }
    }

    pub fn metab(&mut self) -> MetabElem {
        MetabElem::new(self.exponent(), self.exponent(), self.r_elem())
    }

    pub fn cbm(&mut self) -> CbmElem {
        let w = self.r_elem().decompose_pm().1;
        CbmElem::new(self.exponent(), self.exponent(), self.r_elem(), w)
    }

    pub fn cbm_derived(&mut self) -> CbmElem {
        let w = self.r_elem().decompose_pm().1;
        CbmElem::new(0, 0, self.r_elem(), w)
    }
}
