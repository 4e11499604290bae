//! Residue arithmetic in `Z/p^k` with explicit precision tags.
//!
//! Two precisions are in play: series coefficients live at `p^N`, group
//! exponents at `p^(N+G)`. The guard digits `G` absorb the `p`-adic loss of
//! dividing by `k!` when a binomial coefficient with a `p`-adic upper argument
//! is reduced back to precision `N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported degree bound. Monomial exponents are stored as `u8` and
/// dense product buffers have `D^4` slots.
pub const MAX_DEGREE: u32 = 16;

const MAX_COEFF_MODULUS: u128 = 1 << 40;
const MAX_EXP_MODULUS: u128 = 1 << 62;

/// Truncation parameters shared by every value of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    p: u64,
    precision: u32,
    maxdeg: u32,
    guard: u32,
}

impl Params {
    /// Parameters with the minimal guard `floor((D-1)/(p-1)) + 1`.
    pub fn new(p: u64, precision: u32, maxdeg: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} must be an odd prime")));
        }
        let guard = min_guard(p, maxdeg.max(2));
        Self::with_guard(p, precision, maxdeg, guard)
    }

    pub fn with_guard(p: u64, precision: u32, maxdeg: u32, guard: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} must be an odd prime")));
        }
        if precision < 1 {
            return Err(Error::InvalidParams("precision N must be at least 1".into()));
        }
        if !(2..=MAX_DEGREE).contains(&maxdeg) {
            return Err(Error::InvalidParams(format!(
                "maxdeg D = {maxdeg} must lie in 2..={MAX_DEGREE}"
            )));
        }
        let needed = min_guard(p, maxdeg);
        if guard < needed {
            return Err(Error::InvalidParams(format!(
                "guard G = {guard} below the minimum {needed}"
            )));
        }
        let coeff = checked_pow(p, precision).filter(|&m| m <= MAX_COEFF_MODULUS);
        let exp = checked_pow(p, precision + guard).filter(|&m| m <= MAX_EXP_MODULUS);
        let (Some(coeff), Some(_)) = (coeff, exp) else {
            return Err(Error::InvalidParams(format!(
                "p^N or p^(N+G) too large for p = {p}, N = {precision}, G = {guard}"
            )));
        };
        let fact: u128 = (1..=u128::from(maxdeg) + 1).product();
        if fact * coeff >= 1 << 63 {
            return Err(Error::InvalidParams(format!(
                "(D+1)! * p^N too large for D = {maxdeg}"
            )));
        }
        Ok(Self { p, precision, maxdeg, guard })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficient precision `N`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Total-degree truncation bound `D`.
    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// `p^N`.
    pub fn coeff_modulus(&self) -> u64 {
        self.p.pow(self.precision)
    }

    /// `p^(N+G)`.
    pub fn exp_modulus(&self) -> u64 {
        self.p.pow(self.precision + self.guard)
    }

    /// Coefficient-precision residue of an integer.
    pub fn coeff(&self, value: i64) -> PadicInt {
        PadicInt::from_i64(self.p, self.precision, value)
    }

    /// Guard-precision residue of an integer, suitable as a group exponent.
    pub fn exponent(&self, value: i64) -> PadicInt {
        PadicInt::from_i64(self.p, self.precision + self.guard, value)
    }

    /// Residue of `1/2` at coefficient precision.
    pub fn half(&self) -> PadicInt {
        self.coeff(2).invert_unit().expect("p is odd")
    }

    /// Largest `k` accepted by [`binomial`]: `D + 1`, since `v_p((D+1)!) <= G`.
    pub fn max_binomial(&self) -> u32 {
        self.maxdeg + 1
    }
}

fn min_guard(p: u64, maxdeg: u32) -> u32 {
    ((u64::from(maxdeg) - 1) / (p - 1)) as u32 + 1
}

fn checked_pow(p: u64, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(u128::from(p))?;
    }
    Some(acc)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Z/p^k` for an odd prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    k: u32,
    modulus: u64,
    residue: u64,
}

impl PadicInt {
    pub fn new(p: u64, k: u32, residue: u64) -> Self {
        let modulus = p.pow(k);
        Self { p, k, modulus, residue: residue % modulus }
    }

    pub fn from_i64(p: u64, k: u32, value: i64) -> Self {
        let modulus = p.pow(k);
        let residue = i128::from(value).rem_euclid(i128::from(modulus)) as u64;
        Self { p, k, modulus, residue }
    }

    pub fn zero(p: u64, k: u32) -> Self {
        Self::new(p, k, 0)
    }

    pub fn one(p: u64, k: u32) -> Self {
        Self::new(p, k, 1)
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    /// Representative in `(-p^k/2, p^k/2]`.
    pub fn symmetric(&self) -> i64 {
        if self.residue > self.modulus / 2 {
            self.residue as i64 - self.modulus as i64
        } else {
            self.residue as i64
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Precision exponent `k`.
    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.residue.is_multiple_of(self.p)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.k != other.k {
            return Err(Error::PrecisionMismatch { left: self.k, right: other.k });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let s = (u128::from(self.residue) + u128::from(other.residue)) % u128::from(self.modulus);
        Ok(Self { residue: s as u64, ..*self })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let s = (u128::from(self.residue) * u128::from(other.residue)) % u128::from(self.modulus);
        Ok(Self { residue: s as u64, ..*self })
    }

    /// Multiplicative inverse; fails when `p` divides the residue.
    pub fn invert_unit(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.residue));
        }
        let m = i128::from(self.modulus);
        let (mut old_r, mut r) = (i128::from(self.residue), m);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(Self { residue: old_s.rem_euclid(m) as u64, ..*self })
    }

    /// `p`-adic valuation, `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        if self.residue == 0 {
            return None;
        }
        let mut v = 0;
        let mut r = self.residue;
        while r.is_multiple_of(self.p) {
            r /= self.p;
            v += 1;
        }
        Some(v)
    }

    /// Reduce to a lower precision.
    pub fn reduce(&self, k: u32) -> Self {
        assert!(k <= self.k, "cannot raise precision by reduction");
        Self::new(self.p, k, self.residue)
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.k)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

// Operator forms panic on a precision mismatch; use the `checked_*` methods
// when the operands come from unvalidated input.
impl Add for PadicInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("PadicInt precision mismatch")
    }
}

impl Sub for PadicInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("PadicInt precision mismatch")
    }
}

impl Mul for PadicInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("PadicInt precision mismatch")
    }
}

impl Neg for PadicInt {
    type Output = Self;
    fn neg(self) -> Self {
        let residue = if self.residue == 0 { 0 } else { self.modulus - self.residue };
        Self { residue, ..self }
    }
}

/// `C(a, k)` for a guard-precision upper argument, returned at precision `N`.
///
/// The falling factorial is reduced modulo `k! * p^N` and then divided exactly
/// by `k!`; no modular inverse of a non-unit is ever taken.
pub fn binomial(params: &Params, a: &PadicInt, k: u32) -> Result<PadicInt> {
    let exp_prec = params.precision() + params.guard();
    if a.prime() != params.p() || a.precision() != exp_prec {
        return Err(Error::PrecisionMismatch { left: a.precision(), right: exp_prec });
    }
    if k > params.max_binomial() {
        return Err(Error::BinomialDegree { k, max: params.max_binomial() });
    }
    Ok(binomial_residue(params, a.residue(), k))
}

pub(crate) fn binomial_residue(params: &Params, a: u64, k: u32) -> PadicInt {
    let fact: u128 = (1..=u128::from(k)).product();
    let coeff_mod = u128::from(params.coeff_modulus());
    let m = fact * coeff_mod;
    let a = u128::from(a) % m;
    let mut acc: u128 = 1 % m;
    for i in 0..u128::from(k) {
        let term = (a + m - (i % m)) % m;
        acc = acc * term % m;
    }
    debug_assert_eq!(acc % fact, 0);
    PadicInt::new(params.p(), params.precision(), ((acc / fact) % coeff_mod) as u64)
}
