use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use profree_core::oracle::{intersection_dim, xy_sample};
use profree_core::sample::Sampler;
use profree_core::{
    cross_witness, pairing, prof_hypotheses_check, psi, solve_s_delta, solve_s_zeta, AntisymElem,
    Params, PsiIndex, SElem,
};

fn params() -> Params {
    Params::new(3, 4, 6).unwrap()
}

fn series(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut s = Sampler::new(params(), &mut rng);
    let (r1, r2) = (s.r_elem(), s.r_elem());
    let (s1, s2) = (s.s_elem(), s.s_elem());

    c.bench_function("r_mul", |b| b.iter(|| black_box(&r1) * black_box(&r2)));
    c.bench_function("s_mul", |b| b.iter(|| black_box(&s1) * black_box(&s2)));
    c.bench_function("star", |b| b.iter(|| black_box(&r1).star()));
    c.bench_function("gamma", |b| b.iter(|| black_box(&s1).gamma()));
    c.bench_function("pi", |b| b.iter(|| black_box(&s1).pi()));
    c.bench_function("pairing", |b| b.iter(|| pairing(black_box(&r1), black_box(&r2))));
    c.bench_function("psi", |b| b.iter(|| psi(black_box(&s1), PsiIndex::One)));
}

fn operators(c: &mut Criterion) {
    let p = params();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut s = Sampler::new(p, &mut rng);
    let (zeta, tau) = (SElem::zeta(p), SElem::tau(p));
    let (m, q) = (s.s_elem(), s.s_elem());
    let a = &(&m * &zeta) + &(&q + &q.gamma());
    let delta = &(&s.s_elem() * &zeta) + &(&s.s_elem() * &tau);
    let m = AntisymElem::project(&s.s_elem());
    let at = AntisymElem::new(m.elem() * &tau).unwrap();
    let bz = AntisymElem::new(m.elem() * &zeta).unwrap();

    c.bench_function("solve_s_zeta", |b| b.iter(|| solve_s_zeta(black_box(&a))));
    c.bench_function("solve_s_delta", |b| b.iter(|| solve_s_delta(black_box(&delta))));
    c.bench_function("cross_witness", |b| b.iter(|| cross_witness(black_box(&at), black_box(&bz))));
}

fn groups(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut s = Sampler::new(params(), &mut rng);
    let (g, h) = (s.cbm(), s.cbm());
    let (x, y) = (s.metab(), s.metab());

    c.bench_function("metab_mul", |b| b.iter(|| black_box(&x).mul(black_box(&y))));
    c.bench_function("cbm_mul", |b| b.iter(|| black_box(&g).mul(black_box(&h))));
    c.bench_function("cbm_comm", |b| b.iter(|| black_box(&g).comm(black_box(&h))));
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    group.bench_function("intersection_dim_d5", |b| {
        b.iter(|| intersection_dim(&xy_sample(5), black_box(5)))
    });
    group.bench_function("prof_hypotheses_d5", |b| {
        b.iter(|| prof_hypotheses_check(&params(), black_box(5)))
    });
    group.finish();
}

criterion_group!(benches, series, operators, groups, oracles);
criterion_main!(benches);
