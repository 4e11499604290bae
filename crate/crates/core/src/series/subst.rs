use std::collections::BTreeMap;

use super::{Chart, Monomial, Series};
use crate::error::{Error, Result};

impl Series {
    /// Ring morphism sending chart variable `i` to `images[i]`.
    ///
    /// Every image must have zero constant term and live in `target`. The
    /// result is truncated at `D` with validity the minimum over all inputs.
    pub fn substitute(&self, target: Chart, images: &[Series]) -> Result<Series> {
        assert_eq!(images.len(), self.chart.nvars(), "one image per variable");
        for (i, img) in images.iter().enumerate() {
            if img.chart != target {
                return Err(Error::ChartMismatch { left: img.chart, right: target });
            }
            if !img.constant_term().is_zero() {
                return Err(Error::ConstantTerm { var: self.chart.vars()[i] });
            }
        }
        let validity = images.iter().map(Series::validity).fold(self.validity, u32::min);
        let max_exp: Vec<u8> = (0..images.len())
            .map(|i| self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Series>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &top)| {
                let img = img.clone().with_validity(validity);
                let mut pw = vec![Series::one(self.params, target).with_validity(validity)];
                for k in 1..=usize::from(top) {
                    let next = pw[k - 1].mul_unchecked(&img);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let terms: Vec<(Monomial, u64)> = self.terms.iter().map(|(m, &c)| (*m, c)).collect();
        let out = horner(&terms, 0, &powers, self, target, validity);
        Ok(out.with_validity(validity))
    }

    /// Exact division by a chart variable; validity drops by one.
    pub fn divide_var(&self, index: usize) -> Result<Series> {
        let var = self.chart.vars()[index];
        if self.validity == 0 {
            return Err(Error::ValidityUnderflow { validity: 0, needed: 1 });
        }
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            if !m.contains(index) {
                return Err(Error::NotDivisible { var });
            }
            let mut e = m.exps();
            e[index] -= 1;
            terms.insert(Monomial(e), c);
        }
        Ok(Series::from_raw(self.params, self.chart, self.validity - 1, terms))
    }

    pub fn divide_named(&self, name: &str) -> Result<Series> {
        let index = self.chart.var_index(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            column: 0,
        })?;
        self.divide_var(index)
    }

    /// Rewrites an element of `S` between charts A and B.
    pub fn chart_change(&self, target: Chart) -> Result<Series> {
        if self.chart == target {
            return Ok(self.clone());
        }
        let (params, chart) = (self.params, target);
        let var = |i| Series::var(params, chart, i);
        let one = Series::one(params, chart);
        match (self.chart, target) {
            (Chart::SA, Chart::SB) => {
                // x(2) = x(1)^-1 z, y(2) = y(1)^-1 t
                let xi2 = &(&inverse_of_shift(&var(0)) * &(&one + &var(2))) - &one;
                let eta2 = &(&inverse_of_shift(&var(1)) * &(&one + &var(3))) - &one;
                self.substitute(target, &[var(0), var(1), xi2, eta2])
            }
            (Chart::SB, Chart::SA) => {
                let zeta = &(&var(0) + &var(2)) + &(&var(0) * &var(2));
                let tau = &(&var(1) + &var(3)) + &(&var(1) * &var(3));
                self.substitute(target, &[var(0), var(1), zeta, tau])
            }
            (from, to) => Err(Error::UnsupportedChart { from, to }),
        }
    }
}

/// `(1 + v)^-1` for a series `v` with zero constant term, as a geometric sum.
pub(crate) fn inverse_of_shift(v: &Series) -> Series {
    let d = v.params.maxdeg();
    let mut acc = Series::one(v.params, v.chart);
    let mut power = Series::one(v.params, v.chart);
    let minus = -v;
    for _ in 1..d {
        power = power.mul_unchecked(&minus);
        acc = &acc + &power;
    }
    acc.with_validity(v.validity)
}

fn horner(
    terms: &[(Monomial, u64)],
    var: usize,
    powers: &[Vec<Series>],
    source: &Series,
    target: Chart,
    validity: u32,
) -> Series {
    if var == powers.len() {
        let modulus = u128::from(source.params.coeff_modulus());
        let c = terms.iter().fold(0u128, |acc, &(_, c)| (acc + u128::from(c)) % modulus);
        let mut s = Series::zero(source.params, target).with_validity(validity);
        s.add_term(Monomial::ONE, c as u64);
        return s;
    }
    let mut groups: BTreeMap<u8, Vec<(Monomial, u64)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.exp(var)).or_default().push((m, c));
    }
    let mut acc = Series::zero(source.params, target).with_validity(validity);
    for (k, group) in groups {
        let inner = horner(&group, var + 1, powers, source, target, validity);
        let term = if k == 0 { inner } else { powers[var][usize::from(k)].mul_unchecked(&inner) };
        acc = &acc + &term;
    }
    acc
}
