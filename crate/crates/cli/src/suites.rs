//! Verification suites. Each suite draws its instances from a ChaCha8
//! stream seeded with `seed ^ fnv1a(suite id)`, so a suite's report does
//! not depend on which other suites run alongside it.

use std::fmt::Display;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use profree_core::groups::{collected_commutator, conj_derived};
use profree_core::interp::InterpInstance;
use profree_core::oracle::{
    injectivity_rank, intersection_dim, spanning_sample, xy_sample,
};
use profree_core::sample::Sampler;
use profree_core::{
    binomial, centralizer_check, cross_witness, membership_cn, pairing, pairing_pi, phi_series,
    prof_hypotheses_check, psi, solve_s_delta, solve_s_zeta, AntisymElem, CbmElem, Chart,
    ChartHint, CnClass, Embedding, GroupElt, Ideal, MetabElem, Params, PsiIndex, RElem,
    SElem, Series,
};

use crate::report::{Failure, Report};

/// Size of the sample standing in for "all g" in the product relation.
pub const INTERP_SAMPLE: usize = 6;

struct Mismatch {
    inputs: String,
    expected: String,
    got: String,
}

impl From<profree_core::Error> for Mismatch {
    fn from(err: profree_core::Error) -> Self {
        Mismatch { inputs: String::new(), expected: "no error".into(), got: err.to_string() }
    }
}

type Outcome = Result<(), Mismatch>;
type Rng = ChaCha8Rng;

fn agree<T: Display>(ok: bool, inputs: impl FnOnce() -> String, expected: &T, got: &T) -> Outcome {
    if ok {
        return Ok(());
    }
    Err(Mismatch { inputs: inputs(), expected: expected.to_string(), got: got.to_string() })
}

fn holds(ok: bool, inputs: impl FnOnce() -> String, claim: &str) -> Outcome {
    if ok {
        return Ok(());
    }
    Err(Mismatch { inputs: inputs(), expected: claim.to_string(), got: "violated".into() })
}

enum Kind {
    /// Runs once per trial on fresh random instances.
    Random(fn(&mut Sampler<Rng>) -> Outcome),
    /// A fixed list of cases independent of the seed.
    Fixed(fn(Params) -> Vec<Outcome>),
}

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    kind: Kind,
}

macro_rules! suite {
    ($id:literal, $summary:literal, random $f:expr) => {
        Suite { id: $id, summary: $summary, kind: Kind::Random($f) }
    };
    ($id:literal, $summary:literal, fixed $f:expr) => {
        Suite { id: $id, summary: $summary, kind: Kind::Fixed($f) }
    };
}

pub static SUITES: &[Suite] = &[
    suite!("coeff-ring", "ring axioms, unit inverses and Pascal's rule mod p^N", random coeff_ring),
    suite!("series-ring", "ring axioms, variable division, chart change and group units", random series_ring),
    suite!("series-text", "text serialization round trip", random series_text),
    suite!("involution", "* is an involutive ring morphism preserving augmentation", random involution),
    suite!("pi-morphism", "pi is a ring morphism with pi(r(1) s(2)) = r s*", random pi_morphism),
    suite!("pairing-equivariance", "pairing(rg, sg) = pairing(r, s) g^ with antisymmetric image", random pairing_equivariance),
    suite!("psi-equivariance", "psi commutes with the swap", random psi_equivariance),
    suite!("psi-zeta", "psi inverts multiplication by zeta", random psi_zeta),
    suite!("pm-split", "R = R+ + R- with unique parts", random pm_split),
    suite!("ideal-gamma", "S zeta and S tau are swap invariant", random ideal_gamma),
    suite!("sasmodule-ii", "S zeta meets S tau in S zeta tau", random sasmodule_ii),
    suite!("ssandszeta", "solve_s_zeta residual vanishes", random ssandszeta),
    suite!("keylem", "M meets S zeta in M zeta", random keylem),
    suite!("rsmeetdelta", "solve_s_delta residual vanishes", random rsmeetdelta),
    suite!("mxm", "cross_witness gives a = c tau and b = c zeta", random mxm),
    suite!("p1-iv", "intersection of M(g - 1) over x y^j vanishes", fixed p1_iv),
    suite!("p1-ii", "m -> m(g - 1) is injective for g = x, y, xy", fixed p1_ii),
    suite!("prof", "the three pro-p hypotheses hold", fixed prof),
    suite!("zd-d2", "the pairing kernel of the spanning sample vanishes", fixed zd_d2),
    suite!("metab-assoc", "metabelian product is associative with inverses", random metab_assoc),
    suite!("metab-phi", "[y^b, x^a] has coordinate phi(a, b)", fixed metab_phi),
    suite!("cbm-dq-assoc", "D/Q part is associative and conjugation is an automorphism", random cbm_dq_assoc),
    suite!("cbm-assoc", "centre-by-metabelian product is associative with inverses", random cbm_assoc),
    suite!("cbm-bracket", "[u^r, u^s] = z^(r s* - s r*)", random cbm_bracket),
    suite!("cbm-centre", "central elements commute; unit-lead lifts are not central", random cbm_centre),
    suite!("cn-membership", "u is in C, u^x u^(-x^-1) is in N", random cn_membership),
    suite!("centralizer", "pairing vanishes exactly on the class of r", random centralizer),
    suite!("interp-f", "f is onto and constant on central cosets", random interp_f),
    suite!("interp-add", "addition is definable", random interp_add),
    suite!("interp-star", "the involution is definable", random interp_star),
    suite!("prodformula", "[v, w^g] = [z, u^g] for all g exactly when f(z) = f(v) f(w)*", random prodformula),
];

pub fn find(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

impl Suite {
    pub fn run(&self, params: Params, seed: u64, trials: usize, timing: bool) -> Report {
        let start = Instant::now();
        let outcomes: Vec<Outcome> = match self.kind {
            Kind::Random(trial) => {
                let mut rng = Rng::seed_from_u64(seed ^ fnv1a(self.id));
                let mut sampler = Sampler::new(params, &mut rng);
                (0..trials).map(|_| trial(&mut sampler)).collect()
            }
            Kind::Fixed(cases) => cases(params),
        };
        let trials = outcomes.len();
        let failures: Vec<Failure> = outcomes
            .into_iter()
            .enumerate()
            .filter_map(|(case, out)| out.err().map(|m| (case, m)))
            .map(|(case, m)| Failure { case, inputs: m.inputs, expected: m.expected, got: m.got })
            .collect();
        let elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
        Report {
            suite: self.id.to_string(),
            p: params.p(),
            precision: params.precision(),
            maxdeg: params.maxdeg(),
            seed,
            trials,
            pass: failures.is_empty(),
            failures,
            elapsed_ms,
        }
    }
}

fn coeff_ring(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let c = |v: i64| params.coeff(v);
    let (a, b, d) = (c(s.coeff()), c(s.coeff()), c(s.coeff()));
    let inputs = || format!("a = {a}, b = {b}, c = {d}");
    agree((a + b) + d == a + (b + d), inputs, &(a + (b + d)), &((a + b) + d))?;
    agree(a * b == b * a, inputs, &(b * a), &(a * b))?;
    agree((a * b) * d == a * (b * d), inputs, &(a * (b * d)), &((a * b) * d))?;
    agree(a * (b + d) == a * b + a * d, inputs, &(a * b + a * d), &(a * (b + d)))?;
    agree(a + (-a) == c(0), inputs, &c(0), &(a + (-a)))?;
    if a.is_unit() {
        let inv = a.invert_unit()?;
        agree(a * inv == c(1), inputs, &c(1), &(a * inv))?;
    }
    let e = params.exponent(s.exponent());
    let one = params.exponent(1);
    for k in 1..params.maxdeg() {
        let lhs = binomial(&params, &e, k)?;
        let rhs = binomial(&params, &(e - one), k)? + binomial(&params, &(e - one), k - 1)?;
        agree(lhs == rhs, || format!("a = {e}, k = {k}"), &rhs, &lhs)?;
    }
    Ok(())
}

fn series_ring(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    for chart in [Chart::R, Chart::SA] {
        let (a, b, c) = (s.series(chart), s.series(chart), s.series(chart));
        let inputs = || format!("a = {a}; b = {b}; c = {c}");
        let (lhs, rhs) = (&(&a * &b) * &c, &a * &(&b * &c));
        agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
        let (lhs, rhs) = (&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
        let (lhs, rhs) = (&a * &b, &b * &a);
        agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
        for var in 0..chart.nvars() {
            let back = (&a * &Series::var(params, chart, var)).divide_var(var)?;
            agree(back.agrees_with(&a) && back.validity() + 1 == a.validity(), inputs, &a, &back)?;
        }
    }
    let (a, b) = (s.series(Chart::SA), s.series(Chart::SA));
    let lhs = (&a * &b).chart_change(Chart::SB)?;
    let rhs = &a.chart_change(Chart::SB)? * &b.chart_change(Chart::SB)?;
    agree(lhs.agrees_with(&rhs), || format!("a = {a}; b = {b}"), &rhs, &lhs)?;
    let (g, h) = (s.group_elt(), s.group_elt());
    let lhs = (g * h).series(params);
    let rhs = &g.series(params) * &h.series(params);
    agree(lhs.agrees_with(&rhs), || format!("g = {g}; h = {h}"), &rhs, &lhs)
}

fn series_text(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    for chart in [Chart::R, Chart::SA, Chart::SB] {
        let a = s.series(chart);
        let back = Series::parse(&a.to_string(), params, ChartHint::Exact(chart))?;
        agree(back == a, || a.to_string(), &a, &back)?;
    }
    Ok(())
}

fn involution(s: &mut Sampler<Rng>) -> Outcome {
    let (a, b) = (s.r_elem(), s.r_elem());
    let inputs = || format!("r = {a}; s = {b}");
    agree(a.star().star().agrees_with(&a), inputs, &a, &a.star().star())?;
    let (lhs, rhs) = ((&a * &b).star(), &a.star() * &b.star());
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let (lhs, rhs) = ((&a + &b).star(), &a.star() + &b.star());
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let (c, c_star) = (a.series().constant_term(), a.star().series().constant_term());
    agree(c == c_star, inputs, &c, &c_star)
}

fn pi_morphism(s: &mut Sampler<Rng>) -> Outcome {
    let (a, b) = (s.s_elem(), s.s_elem());
    let inputs = || format!("a = {a}; b = {b}");
    let (lhs, rhs) = ((&a * &b).pi(), &a.pi() * &b.pi());
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let (lhs, rhs) = ((&a + &b).pi(), &a.pi() + &b.pi());
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let (r, t) = (s.r_elem(), s.r_elem());
    let inputs = || format!("r = {r}; s = {t}");
    let one = r.embed(Embedding::One).pi();
    agree(one.agrees_with(&r), inputs, &r, &one)?;
    let two = r.embed(Embedding::Two).pi();
    agree(two.agrees_with(&r.star()), inputs, &r.star(), &two)?;
    let lhs = (&r.embed(Embedding::One) * &t.embed(Embedding::Two)).pi();
    let rhs = &r * &t.star();
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)
}

fn pairing_equivariance(s: &mut Sampler<Rng>) -> Outcome {
    let (r, t, g) = (s.r_elem(), s.r_elem(), s.group_elt());
    let inputs = || format!("r = {r}; s = {t}; g = {g}");
    let lhs = pairing(&r.act(g), &t.act(g));
    let rhs = pairing(&r, &t).act(g);
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    holds(pairing(&r, &t).is_antisymmetric(), inputs, "pairing(r, s) is antisymmetric")?;
    let (lhs, rhs) = (pairing(&r, &t).pi(), pairing_pi(&r, &t));
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)
}

fn psi_equivariance(s: &mut Sampler<Rng>) -> Outcome {
    let a = s.s_elem();
    let lhs = psi(&a.gamma(), PsiIndex::Avg)?;
    let rhs = psi(&a, PsiIndex::Avg)?.gamma();
    let ok = lhs.agrees_with(&rhs) && lhs.validity() + 1 == a.validity();
    agree(ok, || a.to_string(), &rhs, &lhs)
}

fn psi_zeta(s: &mut Sampler<Rng>) -> Outcome {
    let a = s.s_elem();
    let shifted = &a * &SElem::zeta(a.params());
    for which in [PsiIndex::One, PsiIndex::Two, PsiIndex::Avg] {
        let back = psi(&shifted, which)?;
        let ok = back.agrees_with(&a) && back.validity() + 1 == a.validity();
        agree(ok, || format!("{which:?}: {a}"), &a, &back)?;
    }
    Ok(())
}

fn pm_split(s: &mut Sampler<Rng>) -> Outcome {
    let r = s.r_elem();
    let (plus, minus) = r.decompose_pm();
    let inputs = || r.to_string();
    holds(plus.is_symmetric() && minus.is_antisymmetric(), inputs, "parts lie in R+ and R-")?;
    agree((&plus + &minus).agrees_with(&r), inputs, &r, &(&plus + &minus))?;
    let (again_plus, again_minus) = (&plus + &minus).decompose_pm();
    holds(again_plus == plus && again_minus == minus, inputs, "decomposing r+ + r- returns the parts")?;
    let d = s.r_elem().decompose_pm().0;
    holds(!d.is_antisymmetric() || d.is_zero(), || d.to_string(), "R+ meets R- in 0")
}

fn ideal_gamma(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let a = s.s_elem();
    for candidate in [a.clone(), &a * &SElem::zeta(params), &a * &SElem::tau(params)] {
        for ideal in [Ideal::Zeta, Ideal::Tau] {
            let ok = candidate.in_ideal(ideal) == candidate.gamma().in_ideal(ideal);
            holds(ok, || format!("{ideal:?}: {candidate}"), "membership is swap invariant")?;
        }
    }
    Ok(())
}

fn sasmodule_ii(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let (zeta, tau) = (SElem::zeta(params), SElem::tau(params));
    let a = s.s_elem();
    let product = &(&a * &zeta) * &tau;
    let inputs = || a.to_string();
    holds(product.in_ideal(Ideal::Zeta) && product.in_ideal(Ideal::Tau), inputs, "a zeta tau in both ideals")?;
    let back = product.divide(Ideal::ZetaTau)?;
    agree(back.agrees_with(&a), inputs, &a, &back)?;
    for candidate in [a.clone(), &a * &zeta, &a * &tau, product] {
        let both = candidate.in_ideal(Ideal::Zeta) && candidate.in_ideal(Ideal::Tau);
        let ok = both == candidate.in_ideal(Ideal::ZetaTau);
        holds(ok, || candidate.to_string(), "S zeta meets S tau in S zeta tau")?;
    }
    Ok(())
}

fn ssandszeta(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let (m, q) = (s.s_elem(), s.s_elem());
    let a = &(&m * &SElem::zeta(params)) + &(&q + &q.gamma());
    let b = solve_s_zeta(&a)?;
    let lhs = b.elem() * &SElem::zeta(params);
    let rhs = a.antisymmetrize();
    let ok = lhs.agrees_with(&rhs) && lhs.validity() + 1 >= params.maxdeg();
    agree(ok, || a.to_string(), &rhs, &lhs)
}

fn keylem(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let m = AntisymElem::project(&s.s_elem());
    let shifted = m.elem() * &SElem::zeta(params);
    let inputs = || m.elem().to_string();
    holds(shifted.in_ideal(Ideal::Zeta), inputs, "m zeta in S zeta")?;
    let b = solve_s_zeta(&shifted)?;
    holds(b.elem().is_antisymmetric(), inputs, "preimage is antisymmetric")?;
    let lhs = b.elem() * &SElem::zeta(params);
    let rhs = shifted.antisymmetrize();
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)
}

fn rsmeetdelta(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let (c1, c2, q) = (s.s_elem(), s.s_elem(), s.s_elem());
    let delta = &(&c1 * &SElem::zeta(params)) + &(&c2 * &SElem::tau(params));
    let r = &delta + &(&q + &q.gamma());
    let w = solve_s_delta(&r)?;
    let (lhs, rhs) = (w.image(), r.antisymmetrize());
    let ok = lhs.agrees_with(&rhs) && lhs.validity() + 2 >= params.maxdeg();
    agree(ok, || r.to_string(), &rhs, &lhs)
}

fn mxm(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let m = AntisymElem::project(&s.s_elem());
    let a = AntisymElem::new(m.elem() * &SElem::tau(params))?;
    let b = AntisymElem::new(m.elem() * &SElem::zeta(params))?;
    let c = cross_witness(&a, &b)?;
    let inputs = || format!("a = {}; b = {}", a.elem(), b.elem());
    let lhs = c.elem() * &SElem::tau(params);
    agree(lhs.agrees_with(a.elem()), inputs, a.elem(), &lhs)?;
    let lhs = c.elem() * &SElem::zeta(params);
    agree(lhs.agrees_with(b.elem()), inputs, b.elem(), &lhs)?;
    holds(c.elem().validity() + 2 >= params.maxdeg(), inputs, "validity at least D - 2")
}

/// Largest oracle degree the parameters support.
fn oracle_degree(params: Params) -> u32 {
    params.maxdeg() - 1
}

fn p1_iv(params: Params) -> Vec<Outcome> {
    let d = oracle_degree(params);
    let mut out = Vec::new();
    let mut previous = usize::MAX;
    for n in 0..=d {
        let sample = xy_sample(n);
        let case = intersection_dim(&sample, d).map_err(Mismatch::from).and_then(|dim| {
            let ok = dim <= previous;
            previous = dim;
            agree(ok, || format!("n = {n}, d = {d}"), &"non-increasing".to_string(), &dim.to_string())
        });
        out.push(case);
    }
    out.push(intersection_dim(&xy_sample(d), d).map_err(Mismatch::from).and_then(|dim| {
        agree(dim == 0, || format!("x y^j, j <= {d}; d = {d}"), &0, &dim)
    }));
    out
}

fn p1_ii(params: Params) -> Vec<Outcome> {
    let d = oracle_degree(params);
    [GroupElt::X, GroupElt::Y, GroupElt::new(1, 1)]
        .into_iter()
        .map(|g| {
            let ok = injectivity_rank(params.p(), g, d)?;
            holds(ok, || format!("g = {g}, d = {d}"), "injective")
        })
        .collect()
}

fn prof(params: Params) -> Vec<Outcome> {
    let d = oracle_degree(params);
    let case = prof_hypotheses_check(&params, d).map_err(Mismatch::from).and_then(|report| {
        let got = format!("{:?}", report.hypotheses());
        agree(report.hypotheses() == (true, true, true), || format!("d = {d}"), &"(true, true, true)".to_string(), &got)
    });
    vec![case]
}

fn zd_d2(params: Params) -> Vec<Outcome> {
    let d = params.maxdeg() - 2;
    let mut out = Vec::new();
    let mut previous = usize::MAX;
    for size in 1..=INTERP_SAMPLE {
        let case = profree_core::pairing_kernel(&params, &spanning_sample(size), d)
            .map_err(Mismatch::from)
            .and_then(|dim| {
                let ok = dim <= previous;
                previous = dim;
                agree(ok, || format!("size {size}, d = {d}"), &"non-increasing".to_string(), &dim.to_string())
            });
        out.push(case);
    }
    out.push(
        profree_core::pairing_kernel(&params, &spanning_sample(INTERP_SAMPLE), d)
            .map_err(Mismatch::from)
            .and_then(|dim| agree(dim == 0, || format!("spanning sample, d = {d}"), &0, &dim)),
    );
    out
}

fn metab_assoc(s: &mut Sampler<Rng>) -> Outcome {
    let (a, b, c) = (s.metab(), s.metab(), s.metab());
    let inputs = || format!("{a}; {b}; {c}");
    let (lhs, rhs) = (a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let e = MetabElem::identity(a.params());
    agree(a.mul(&a.inv()).agrees_with(&e), inputs, &e, &a.mul(&a.inv()))
}

fn metab_phi(params: Params) -> Vec<Outcome> {
    let mut out = Vec::new();
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            let comm = MetabElem::new(0, i64::from(b), RElem::zero(params))
                .comm(&MetabElem::new(i64::from(a), 0, RElem::zero(params)));
            let phi = phi_series(params, i64::from(a), i64::from(b));
            let oracle = collected_commutator(params, a, b);
            let inputs = || format!("a = {a}, b = {b}");
            let case = agree(comm.r.agrees_with(&oracle) && comm.a == 0 && comm.b == 0, inputs, &oracle, &comm.r)
                .and_then(|_| agree(phi.agrees_with(&oracle), inputs, &oracle, &phi));
            out.push(case);
        }
    }
    out
}

fn cbm_dq_assoc(s: &mut Sampler<Rng>) -> Outcome {
    let (a, b, c) = (s.cbm_derived(), s.cbm_derived(), s.cbm_derived());
    let inputs = || format!("{a}; {b}; {c}");
    let (lhs, rhs) = (a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let t = s.group_elt();
    let lhs = a.mul(&b).conj(t);
    let rhs = a.conj(t).mul(&b.conj(t));
    agree(lhs.agrees_with(&rhs), || format!("{a}; {b}; t = {t}"), &rhs, &lhs)?;
    let closed = conj_derived(&a, t)?;
    agree(closed.agrees_with(&a.conj(t)), || format!("{a}; t = {t}"), &a.conj(t), &closed)
}

fn cbm_assoc(s: &mut Sampler<Rng>) -> Outcome {
    let (a, b, c) = (s.cbm(), s.cbm(), s.cbm());
    let inputs = || format!("{a}; {b}; {c}");
    let (lhs, rhs) = (a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    agree(lhs.agrees_with(&rhs), inputs, &rhs, &lhs)?;
    let e = CbmElem::identity(a.params());
    agree(a.mul(&a.inv()).agrees_with(&e), inputs, &e, &a.mul(&a.inv()))?;
    agree(a.inv().mul(&a).agrees_with(&e), inputs, &e, &a.inv().mul(&a))
}

fn cbm_bracket(s: &mut Sampler<Rng>) -> Outcome {
    let (r, t) = (s.r_elem(), s.r_elem());
    let got = CbmElem::lift(r.clone()).comm(&CbmElem::lift(t.clone()));
    let expect = CbmElem::central(pairing_pi(&r, &t));
    agree(got.agrees_with(&expect), || format!("r = {r}; s = {t}"), &expect, &got)
}

fn cbm_centre(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let z = CbmElem::central(s.r_elem().decompose_pm().1);
    let g = s.cbm();
    agree(z.mul(&g).agrees_with(&g.mul(&z)), || format!("z = {z}; g = {g}"), &g.mul(&z), &z.mul(&g))?;
    let r = loop {
        let r = s.r_unit_lead();
        if r.series().order().is_some_and(|o| o + 1 < params.maxdeg()) {
            break r;
        }
    };
    let lift = CbmElem::lift(r.clone());
    let e = CbmElem::identity(params);
    let central = [CbmElem::x(params), CbmElem::y(params)].iter().all(|h| lift.comm(h).agrees_with(&e));
    holds(!central, || r.to_string(), "u^r is not central")
}

fn cn_membership(s: &mut Sampler<Rng>) -> Outcome {
    let params = s.params();
    let u = CbmElem::lift(RElem::one(params));
    let n = u.conj(GroupElt::X).mul(&u.conj(GroupElt::X.inverse()).inv());
    let class = membership_cn(&u)?;
    agree(class == CnClass::C, || "u".into(), &"C".to_string(), &format!("{class:?}"))?;
    let class = membership_cn(&n)?;
    agree(class == CnClass::N, || "u^x u^(-x^-1)".into(), &"N".to_string(), &format!("{class:?}"))?;
    let z = CbmElem::central(s.r_elem().decompose_pm().1);
    let class = membership_cn(&z)?;
    agree(class == CnClass::Both, || z.to_string(), &"Both".to_string(), &format!("{class:?}"))?;
    let (plus, minus) = s.r_elem().decompose_pm();
    let class = membership_cn(&CbmElem::lift(plus.clone()))?;
    let ok = matches!(class, CnClass::C | CnClass::Both);
    agree(ok, || plus.to_string(), &"C".to_string(), &format!("{class:?}"))?;
    let class = membership_cn(&CbmElem::lift(minus.clone()))?;
    let ok = matches!(class, CnClass::N | CnClass::Both);
    agree(ok, || minus.to_string(), &"N".to_string(), &format!("{class:?}"))
}

/// A guarded representative in `R+` or `R-`.
fn guarded(s: &mut Sampler<Rng>, symmetric: bool) -> RElem {
    loop {
        let (plus, minus) = s.r_unit_lead().decompose_pm();
        let r = if symmetric { plus } else { minus };
        if r.series().has_unit_lowest_form() {
            return r;
        }
    }
}

fn centralizer(s: &mut Sampler<Rng>) -> Outcome {
    let symmetric = s.coin();
    let r = guarded(s, symmetric);
    let (plus, minus) = s.r_elem().decompose_pm();
    let candidates = [s.r_elem(), if symmetric { plus } else { minus }];
    for t in candidates {
        let report = centralizer_check(&r, &t)?;
        let got = format!("{report:?}");
        agree(report.consistent(), || format!("r = {r}; s = {t}"), &"consistent".to_string(), &got)?;
    }
    Ok(())
}

fn interp_f(s: &mut Sampler<Rng>) -> Outcome {
    let r = s.r_elem();
    let z = CbmElem::central(s.r_elem().decompose_pm().1);
    let v = CbmElem::lift(r.clone());
    let f = profree_core::f_map(&v)?;
    agree(f.agrees_with(&r), || r.to_string(), &r, &f)?;
    let f = profree_core::f_map(&v.mul(&z))?;
    agree(f.agrees_with(&r), || format!("{v}; {z}"), &r, &f)
}

/// Half the time a `z` satisfying the relation, otherwise a random derived element.
fn related(s: &mut Sampler<Rng>, coordinate: RElem) -> CbmElem {
    if s.coin() {
        CbmElem::lift(coordinate).mul(&CbmElem::central(s.r_elem().decompose_pm().1))
    } else {
        s.cbm_derived()
    }
}

fn interp_add(s: &mut Sampler<Rng>) -> Outcome {
    let (v, w) = (s.cbm_derived(), s.cbm_derived());
    let z = related(s, &v.r + &w.r);
    let out = profree_core::rel_add_check(&v, &w, &z)?;
    agree(out.consistent(), || format!("v = {v}; w = {w}; z = {z}"), &"consistent".to_string(), &format!("{out:?}"))
}

fn interp_star(s: &mut Sampler<Rng>) -> Outcome {
    let w = s.cbm_derived();
    let z = related(s, w.r.star());
    let out = profree_core::rel_star_check(&w, &z)?;
    agree(out.consistent(), || format!("w = {w}; z = {z}"), &"consistent".to_string(), &format!("{out:?}"))
}

fn prodformula(s: &mut Sampler<Rng>) -> Outcome {
    let (v, w) = (s.cbm_derived(), s.cbm_derived());
    let z = related(s, &v.r * &w.r.star());
    let instance = InterpInstance::new(v, w, z, spanning_sample(INTERP_SAMPLE))?;
    let out = instance.product()?;
    let inputs = || format!("v = {}; w = {}; z = {}", instance.v, instance.w, instance.z);
    agree(out.consistent() && out.kernel_dim == 0, inputs, &"consistent".to_string(), &format!("{out:?}"))?;
    let (r, t, g) = (s.r_elem(), s.r_elem(), s.group_elt());
    let lhs = pairing_pi(&r, &t.act(g));
    let rhs = pairing_pi(&(&r * &t.star()), &g.series(s.params()));
    agree(lhs.agrees_with(&rhs), || format!("r = {r}; s = {t}; g = {g}"), &rhs, &lhs)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = SUITES.iter().map(|s| s.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), SUITES.len());
        assert!(find("bogus").is_none());
    }

    #[test]
    fn single_trial_report() {
        let params = Params::new(3, 4, 6).unwrap();
        let report = find("ssandszeta").unwrap().run(params, 0, 1, false);
        assert_eq!(report.trials, 1);
        assert!(report.pass);
    }

    #[test]
    fn deterministic() {
        let params = Params::new(5, 3, 5).unwrap();
        let suite = find("cbm-assoc").unwrap();
        assert_eq!(suite.run(params, 3, 5, false), suite.run(params, 3, 5, false));
    }
}
