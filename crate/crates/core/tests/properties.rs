use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use profree_core::groups::CbmElem;
use profree_core::sample::Sampler;
use profree_core::series::{Chart, ChartHint, Series};
use profree_core::{
    cross_witness, pairing, psi, solve_s_delta, solve_s_zeta, AntisymElem, Embedding, GroupElt,
    PadicInt, Params, PsiIndex, RElem, SElem,
};

fn params_strategy() -> impl Strategy<Value = Params> {
    prop_oneof![
        Just(Params::new(3, 4, 6).unwrap()),
        Just(Params::new(5, 3, 5).unwrap()),
        Just(Params::new(7, 2, 4).unwrap()),
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn padic_ring_axioms(p in prop::sample::select(vec![3u64, 5, 7]), a: i64, b: i64, c: i64) {
        let k = 3;
        let (a, b, c) = (
            PadicInt::from_i64(p, k, a % 1000),
            PadicInt::from_i64(p, k, b % 1000),
            PadicInt::from_i64(p, k, c % 1000),
        );
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, PadicInt::zero(p, k));
        if a.is_unit() {
            prop_assert_eq!(a * a.invert_unit().unwrap(), PadicInt::one(p, k));
        }
    }

    #[test]
    fn series_ring_axioms(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        for chart in [Chart::R, Chart::SA] {
            let (a, b, c) = (s.series(chart), s.series(chart), s.series(chart));
            prop_assert!((&(&a * &b) * &c).agrees_with(&(&a * &(&b * &c))));
            prop_assert!((&a * &b).agrees_with(&(&b * &a)));
            prop_assert!((&a * &(&b + &c)).agrees_with(&(&(&a * &b) + &(&a * &c))));
            prop_assert!((&a - &a).is_zero());
        }
    }

    #[test]
    fn text_round_trip(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        for chart in [Chart::R, Chart::SA] {
            let a = s.series(chart);
            let back = Series::parse(&a.to_string(), params, ChartHint::Exact(chart)).unwrap();
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn chart_change_round_trip(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let a = Sampler::new(params, &mut g).s_elem();
        let b = a.chart_b();
        prop_assert_eq!(b.chart(), Chart::SB);
        prop_assert!(b.chart_a().agrees_with(&a));
        prop_assert_eq!(b.chart_a().validity(), params.maxdeg());
    }

    #[test]
    fn star_is_involutive_ring_morphism(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (a, b) = (s.r_elem(), s.r_elem());
        prop_assert!(a.star().star().agrees_with(&a));
        prop_assert!((&a * &b).star().agrees_with(&(&a.star() * &b.star())));
        prop_assert!((&a + &b).star().agrees_with(&(&a.star() + &b.star())));
        let e = s.group_elt();
        prop_assert!(e.series(params).star().agrees_with(&e.inverse().series(params)));
    }

    #[test]
    fn pi_is_ring_morphism(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (a, b) = (s.s_elem(), s.s_elem());
        prop_assert!((&a * &b).pi().agrees_with(&(&a.pi() * &b.pi())));
        prop_assert!(a.chart_b().pi().agrees_with(&a.pi()));
        let (r, t) = (s.r_elem(), s.r_elem());
        let tensor = &r.embed(Embedding::One) * &t.embed(Embedding::Two);
        prop_assert!(tensor.pi().agrees_with(&(&r * &t.star())));
        let augmentation = RElem::one(params).scale_int(r.series().constant_term().symmetric());
        prop_assert!(r.embed(Embedding::Hat).pi().agrees_with(&augmentation));
    }

    #[test]
    fn pairing_is_equivariant_and_alternating(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (r, t, e) = (s.r_elem(), s.r_elem(), s.group_elt());
        let lhs = pairing(&r.act(e), &t.act(e));
        prop_assert!(lhs.agrees_with(&pairing(&r, &t).act(e)));
        prop_assert!(pairing(&r, &t).agrees_with(&-&pairing(&t, &r)));
        prop_assert!(pairing(&r, &r).is_zero());
    }

    #[test]
    fn psi_commutes_with_swap(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let a = Sampler::new(params, &mut g).s_elem();
        let lhs = psi(&a.gamma(), PsiIndex::Avg).unwrap();
        let rhs = psi(&a, PsiIndex::Avg).unwrap().gamma();
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert_eq!(lhs.validity(), params.maxdeg() - 1);
    }

    #[test]
    fn psi_inverts_zeta(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let a = Sampler::new(params, &mut g).s_elem();
        let shifted = &a * &SElem::zeta(params);
        for which in [PsiIndex::One, PsiIndex::Two, PsiIndex::Avg] {
            let back = psi(&shifted, which).unwrap();
            prop_assert!(back.agrees_with(&a));
            prop_assert_eq!(back.validity(), params.maxdeg() - 1);
        }
    }

    #[test]
    fn plus_minus_split(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let r = Sampler::new(params, &mut g).r_elem();
        let (plus, minus) = r.decompose_pm();
        prop_assert!(plus.is_symmetric() && minus.is_antisymmetric());
        prop_assert!((&plus + &minus).agrees_with(&r));
        let (again_plus, again_minus) = (&plus + &minus).decompose_pm();
        prop_assert_eq!(again_plus, plus);
        prop_assert_eq!(again_minus, minus);
    }

    #[test]
    fn solve_s_zeta_residual(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (m, q) = (s.s_elem(), s.s_elem());
        let a = &(&m * &SElem::zeta(params)) + &(&q + &q.gamma());
        let b = solve_s_zeta(&a).unwrap();
        let lhs = b.elem() * &SElem::zeta(params);
        prop_assert!(lhs.agrees_with(&a.antisymmetrize()));
        prop_assert!(lhs.validity() >= params.maxdeg() - 1);
    }

    #[test]
    fn solve_s_delta_residual(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (c1, c2, q) = (s.s_elem(), s.s_elem(), s.s_elem());
        let r = &(&(&c1 * &SElem::zeta(params)) + &(&c2 * &SElem::tau(params))) + &(&q + &q.gamma());
        let w = solve_s_delta(&r).unwrap();
        prop_assert!(w.image().agrees_with(&r.antisymmetrize()));
        prop_assert!(w.image().validity() >= params.maxdeg() - 2);
    }

    #[test]
    fn cross_witness_residual(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let m = AntisymElem::project(&Sampler::new(params, &mut g).s_elem());
        let a = AntisymElem::new(m.elem() * &SElem::tau(params)).unwrap();
        let b = AntisymElem::new(m.elem() * &SElem::zeta(params)).unwrap();
        let c = cross_witness(&a, &b).unwrap();
        prop_assert!((c.elem() * &SElem::tau(params)).agrees_with(a.elem()));
        prop_assert!((c.elem() * &SElem::zeta(params)).agrees_with(b.elem()));
        prop_assert!(c.elem().validity() >= params.maxdeg() - 2);
    }

    #[test]
    fn metab_associative(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (a, b, c) = (s.metab(), s.metab(), s.metab());
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&a.inv()).agrees_with(&profree_core::MetabElem::identity(params)));
    }

    #[test]
    fn cbm_group_laws(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (a, b, c) = (s.cbm(), s.cbm(), s.cbm());
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&a.inv()).agrees_with(&CbmElem::identity(params)));
        let z = CbmElem::central(s.r_elem().decompose_pm().1);
        prop_assert!(z.mul(&a).agrees_with(&a.mul(&z)));
    }

    #[test]
    fn commutator_of_lifts(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (r, t) = (s.r_elem(), s.r_elem());
        let got = CbmElem::lift(r.clone()).comm(&CbmElem::lift(t.clone()));
        let expect = CbmElem::central(profree_core::pairing_pi(&r, &t));
        prop_assert!(got.agrees_with(&expect));
    }

    #[test]
    fn group_action_matches_series(params in params_strategy(), seed: u64) {
        let mut g = rng(seed);
        let mut s = Sampler::new(params, &mut g);
        let (e, f) = (s.group_elt(), s.group_elt());
        let prod = (e * f).series(params);
        prop_assert!(prod.agrees_with(&(&e.series(params) * &f.series(params))));
        prop_assert!(GroupElt::IDENTITY.series(params).agrees_with(&RElem::one(params)));
    }
}
