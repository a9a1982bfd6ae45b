use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use cubicwa_core::form::fermat_cubic;
use cubicwa_core::sample::random_smooth_dp4;
use cubicwa_core::wa::diagonal_model;
use cubicwa_core::*;

const BUDGET: u64 = 1 << 32;

fn field_ops(c: &mut Criterion) {
    for (p, m) in [(13, 1), (5, 3)] {
        let k = make_field(p, m).unwrap();
        let elems: Vec<Fe> = k.elements().collect();
        c.bench_function(&format!("field mul+inv GF({})", k.order()), |b| {
            b.iter(|| {
                let mut acc = k.one();
                for &a in &elems[1..] {
                    acc = k.mul(acc, k.inv(a));
                }
                black_box(acc)
            })
        });
    }
}

fn hyperplane_census(c: &mut Criterion) {
    let k = make_field(7, 1).unwrap();
    let s = random_smooth_dp4(&k, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    let x = s.smooth_points(BUDGET).unwrap()[0].clone();
    c.bench_function("dp4 hyperplane census GF(7)", |b| b.iter(|| s.hyperplane_census(black_box(&x), BUDGET).unwrap()));
}

fn conjugate_pair_line(c: &mut Criterion) {
    let k = make_field(11, 1).unwrap();
    let x = CubicHypersurface::new(fermat_cubic(&k, 4)).unwrap();
    let pts = x.points(&k, BUDGET).unwrap();
    c.bench_function("conjugate pair line Fermat GF(11)", |b| {
        b.iter(|| {
            for p in &pts[..8] {
                black_box(x.find_conjugate_pair_line(p, BUDGET).ok());
            }
        })
    });
}

fn section_search(c: &mut Criterion) {
    let k = make_field(11, 1).unwrap();
    let limits = Limits::default();
    let model = diagonal_model(&k, 4, 1, &limits).unwrap();
    let s = Section::from_i64(&k, &[&[3, -1], &[8, -1], &[0, 7], &[10]]).unwrap();
    let jd = JData::from_section(&model, &s, 1, vec![Place::linear(&k, k.from_i64(2))], &limits).unwrap();
    let mut g = c.benchmark_group("section search");
    g.sample_size(10);
    g.bench_function("degree 1 at one place GF(11)", |b| b.iter(|| search_section(&model, &jd, 1, &limits).unwrap()));
    g.finish();
}

criterion_group!(benches, field_ops, hyperplane_census, conjugate_pair_line, section_search);
criterion_main!(benches);
