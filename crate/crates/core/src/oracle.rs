//! Finite-dimensional linear algebra on graded pieces of `R` and `S`.
//!
//! Everything here uses its own exact integer polynomial arithmetic (chart A
//! of `S`, exact binomials, no `p`-adic truncation) so that it can serve as an
//! oracle for the series code. Ranks are taken over a [`Field`]: the prime
//! field `F_p`, or `Q` when a statement is about the `Z_p`-lattice itself.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::MAX_DEGREE;
use crate::error::{Error, Result};
use crate::groupalg::GroupElt;

pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn embed_int(&self, n: &BigInt) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "prime out of range");
        Self { p }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn embed_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((n % &m) + &m) % &m;
        r.try_into().expect("residue fits")
    }
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

/// `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn embed_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

type Exps = [u8; 4];

/// Integer polynomial in up to four variables, truncated below `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly {
    bound: u32,
    terms: BTreeMap<Exps, BigInt>,
}

fn degree(e: &Exps) -> u32 {
    e.iter().map(|&x| u32::from(x)).sum()
}

fn exact_binomial(a: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..i64::from(k) {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

impl IntPoly {
    fn zero(bound: u32) -> Self {
        Self { bound, terms: BTreeMap::new() }
    }

    fn monomial(bound: u32, e: Exps, c: BigInt) -> Self {
        let mut out = Self::zero(bound);
        out.add_term(e, c);
        out
    }

    fn one(bound: u32) -> Self {
        Self::monomial(bound, [0; 4], BigInt::one())
    }

    fn var(bound: u32, i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(bound, e, BigInt::one())
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if degree(&e) >= self.bound || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn scale(&self, k: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.bound);
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero(self.bound);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// `(1 + self)^a`, for `self` without constant term.
    fn shift_power(&self, a: i64) -> IntPoly {
        let mut acc = IntPoly::zero(self.bound);
        let mut power = IntPoly::one(self.bound);
        for j in 0..self.bound {
            acc = acc.add(&power.scale(&exact_binomial(a, j)));
            power = power.mul(self);
        }
        acc
    }

    fn substitute(&self, images: &[IntPoly]) -> IntPoly {
        let mut out = IntPoly::zero(self.bound);
        for (e, c) in &self.terms {
            let mut term = IntPoly::monomial(self.bound, [0; 4], c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..e[i] {
                    term = term.mul(img);
                }
            }
            out = out.add(&term);
        }
        out
    }

    fn permute(&self, perm: [usize; 4]) -> IntPoly {
        let mut out = IntPoly::zero(self.bound);
        for (e, c) in &self.terms {
            let mut f = [0; 4];
            for i in 0..4 {
                f[perm[i]] = e[i];
            }
            out.add_term(f, c.clone());
        }
        out
    }
}

/// All exponent vectors in `nvars` variables of total degree `< bound`,
/// graded, then lexicographically decreasing.
fn exponents_below(nvars: usize, bound: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    for deg in 0..bound {
        let mut e = [0u8; 4];
        fill(&mut out, &mut e, 0, nvars, deg);
    }
    fn fill(out: &mut Vec<Exps>, e: &mut Exps, i: usize, nvars: usize, left: u32) {
        if i + 1 == nvars {
            e[i] = left as u8;
            out.push(*e);
            e[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            e[i] = k as u8;
            fill(out, e, i + 1, nvars, left - k);
        }
        e[i] = 0;
    }
    out
}

/// A matrix over `F` whose columns are labelled by monomials.
#[derive(Debug, Clone)]
pub struct GradedMatrix<F: Field> {
    field: F,
    columns: Vec<Exps>,
    index: BTreeMap<Exps, usize>,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field + Clone> GradedMatrix<F> {
    fn new(field: F, columns: Vec<Exps>) -> Self {
        let index = columns.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Self { field, columns, index, rows: Vec::new() }
    }

    fn push_poly(&mut self, poly: &IntPoly) {
        let mut row = vec![self.field.zero(); self.columns.len()];
        for (e, c) in &poly.terms {
            let col = *self.index.get(e).expect("monomial outside the column range");
            row[col] = self.field.embed_int(c);
        }
        self.rows.push(row);
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Column labels as exponent vectors.
    pub fn columns(&self) -> &[[u8; 4]] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        echelon(&self.field, self.rows.clone()).len()
    }

    /// A basis of the intersection of the two row spaces (Zassenhaus).
    pub fn intersect(&self, other: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(self.columns, other.columns, "column labels differ");
        let n = self.ncols();
        let zero = self.field.zero();
        let mut rows = Vec::with_capacity(self.nrows() + other.nrows());
        for r in &self.rows {
            rows.push(r.iter().chain(r.iter()).cloned().collect::<Vec<_>>());
        }
        for r in &other.rows {
            rows.push(r.iter().cloned().chain(std::iter::repeat_n(zero.clone(), n)).collect());
        }
        let reduced = echelon(&self.field, rows);
        let mut out = GradedMatrix::new(self.field.clone(), self.columns.clone());
        for row in reduced {
            if row[..n].iter().all(|x| self.field.is_zero(x)) {
                out.rows.push(row[n..].to_vec());
            }
        }
        out
    }
}

/// Nonzero rows of a row echelon form of `rows`.
fn echelon<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut top = 0;
    for col in 0..ncols {
        let Some(pivot) = (top..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(top, pivot);
        let inv = field.inv(&rows[top][col]);
        let pivot_row: Vec<F::Elem> = rows[top].iter().map(|x| field.mul(x, &inv)).collect();
        for row in rows.iter_mut().skip(top + 1) {
            if field.is_zero(&row[col]) {
                continue;
            }
            let k = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = field.sub(x, &field.mul(&k, y));
            }
        }
        rows[top] = pivot_row;
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    rows
}

fn check_degree(d: u32) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::InvalidParams(format!("oracle degree {d} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

/// `g^ - 1 = x(1)^a x(2)^a y(1)^b y(2)^b - 1` in chart A.
fn diagonal_minus_one(g: GroupElt, bound: u32) -> IntPoly {
    let v = |i| IntPoly::var(bound, i);
    let mut out = IntPoly::one(bound);
    for (i, e) in [(0, g.a), (2, g.a), (1, g.b), (3, g.b)] {
        out = out.mul(&v(i).shift_power(e));
    }
    out.sub(&IntPoly::one(bound))
}

const SWAP: [usize; 4] = [2, 3, 0, 1];

/// `m - gamma(m)` for one representative `m` of each non-fixed swap orbit of
/// chart A monomials of degree `< bound`.
fn antisymmetric_basis(bound: u32) -> Vec<IntPoly> {
    exponents_below(4, bound)
        .into_iter()
        .filter(|e| [e[0], e[1]] > [e[2], e[3]])
        .map(|e| {
            let m = IntPoly::monomial(bound, e, BigInt::one());
            m.sub(&m.permute(SWAP))
        })
        .collect()
}

/// Rows spanning `{ m (g^ - 1) : m antisymmetric }` truncated below `d`.
fn image_of_diagonal<F: Field + Clone>(field: &F, g: GroupElt, d: u32) -> GradedMatrix<F> {
    let mut mat = GradedMatrix::new(field.clone(), exponents_below(4, d));
    let h = diagonal_minus_one(g, d);
    for m in antisymmetric_basis(d) {
        mat.push_poly(&m.mul(&h));
    }
    mat
}

/// Dimension over `field` of the intersection over the sample of the
/// truncated images `M (g^ - 1)`, inside antisymmetric elements of degree `< d`.
pub fn intersection_dim_over<F: Field + Clone>(field: &F, sample: &[GroupElt], d: u32) -> Result<usize> {
    check_degree(d)?;
    let Some((first, rest)) = sample.split_first() else {
        return Err(Error::Precondition("sample must be nonempty".into()));
    };
    let mut acc = image_of_diagonal(field, *first, d);
    for g in rest {
        acc = acc.intersect(&image_of_diagonal(field, *g, d));
    }
    Ok(acc.rank())
}

/// [`intersection_dim_over`] with rational ranks: the rank of the
/// intersection of the `Z_p`-lattices.
pub fn intersection_dim(sample: &[GroupElt], d: u32) -> Result<usize> {
    intersection_dim_over(&Rationals, sample, d)
}

/// [`intersection_dim_over`] modulo `p`.
pub fn intersection_dim_mod_p(p: u64, sample: &[GroupElt], d: u32) -> Result<usize> {
    intersection_dim_over(&PrimeField::new(p), sample, d)
}

/// `{x y^j : 0 <= j <= n}`.
pub fn xy_sample(n: u32) -> Vec<GroupElt> {
    (0..=i64::from(n)).map(|j| GroupElt::new(1, j)).collect()
}

/// `{1, x, y, xy, xy^2, ...}` with `size` elements.
pub fn spanning_sample(size: usize) -> Vec<GroupElt> {
    let mut out = vec![GroupElt::IDENTITY, GroupElt::X, GroupElt::Y];
    let mut j = 1;
    while out.len() < size {
        out.push(GroupElt::new(1, j));
        j += 1;
    }
    out.truncate(size);
    out
}

/// Whether `m -> m (g^ - 1)` from antisymmetric elements of degree `< d` to
/// degree `< d + 1` is injective modulo `p`.
pub fn injectivity_rank(p: u64, g: GroupElt, d: u32) -> Result<bool> {
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    check_degree(d + 1)?;
    let field = PrimeField::new(p);
    let mut mat = GradedMatrix::new(field, exponents_below(4, d + 1));
    let h = diagonal_minus_one(g, d + 1);
    let basis: Vec<IntPoly> = antisymmetric_basis(d)
        .into_iter()
        .map(|m| IntPoly { bound: d + 1, terms: m.terms })
        .collect();
    for m in &basis {
        mat.push_poly(&m.mul(&h));
    }
    Ok(mat.rank() == basis.len())
}

/// Dimension modulo `p` of antisymmetric elements of degree `< d` modulo the
/// truncated `Delta(1 - gamma) = { (zeta s)(1 - gamma), (tau s)(1 - gamma) }`.
pub fn augmentation_quotient_dim(p: u64, d: u32) -> Result<usize> {
    check_degree(d)?;
    let field = PrimeField::new(p);
    let columns = exponents_below(4, d);
    let mut whole = GradedMatrix::new(field, columns.clone());
    for m in antisymmetric_basis(d) {
        whole.push_poly(&m);
    }
    let diag = [
        diagonal_minus_one(GroupElt::X, d),
        diagonal_minus_one(GroupElt::Y, d),
    ];
    let mut sub = GradedMatrix::new(field, columns);
    for e in exponents_below(4, d) {
        let m = IntPoly::monomial(d, e, BigInt::one());
        for h in &diag {
            let s = m.mul(h);
            sub.push_poly(&s.sub(&s.permute(SWAP)));
        }
    }
    Ok(whole.rank() - sub.rank())
}

/// `r s* - s r*` on integer polynomials in two variables.
fn star2(t: &IntPoly) -> IntPoly {
    let inv = |i| IntPoly::var(t.bound, i).shift_power(-1).sub(&IntPoly::one(t.bound));
    t.substitute(&[inv(0), inv(1)])
}

fn group2(g: GroupElt, bound: u32) -> IntPoly {
    IntPoly::var(bound, 0).shift_power(g.a).mul(&IntPoly::var(bound, 1).shift_power(g.b))
}

/// Dimension modulo `p` of the degree `< d` part of
/// `{ t : t g* - g t* = 0 below degree d + 1 for every g in the sample }`.
///
/// Zero means: whenever `t g* - g t*` vanishes below `d + 1` for the whole
/// sample, `t` vanishes below `d`.
pub fn pairing_kernel(p: u64, sample: &[GroupElt], d: u32) -> Result<usize> {
    check_degree(d + 1)?;
    let field = PrimeField::new(p);
    let bound = d + 1;
    let domain = exponents_below(2, bound);
    let n = domain.len();
    let images: Vec<(IntPoly, IntPoly)> = sample
        .iter()
        .map(|g| (group2(*g, bound), group2(g.inverse(), bound)))
        .collect();
    // rows: [ L(e_i) | e_i ]
    let width = n * sample.len();
    let mut rows = Vec::with_capacity(n);
    for (i, e) in domain.iter().enumerate() {
        let t = IntPoly::monomial(bound, *e, BigInt::one());
        let ts = star2(&t);
        let mut row = vec![0u64; width + n];
        for (k, (g, gs)) in images.iter().enumerate() {
            let value = t.mul(gs).sub(&g.mul(&ts));
            for (f, c) in &value.terms {
                let col = domain.iter().position(|x| x == f).expect("in range");
                row[k * n + col] = field.embed_int(c);
            }
        }
        row[width + i] = 1;
        rows.push(row);
    }
    let reduced = echelon(&field, rows);
    let low: Vec<usize> = (0..n).filter(|&i| degree(&domain[i]) < d).collect();
    let shadow: Vec<Vec<u64>> = reduced
        .into_iter()
        .filter(|row| row[..width].iter().all(|&x| x == 0))
        .map(|row| low.iter().map(|&i| row[width + i]).collect())
        .collect();
    if low.is_empty() {
        return Ok(0);
    }
    Ok(echelon(&field, shadow).len())
}

/// Exact binomial coefficient with integer upper argument, for cross-checks.
pub fn integer_binomial(a: i64, k: u32) -> BigInt {
    exact_binomial(a, k)
}
