use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use monodromy::equiv::{bfs_hurwitz_equiv, rewrite_theorem_main};
use monodromy::instances::{gen_instances, Profile};
use monodromy::semigroup::delta_tilde_squared;
use monodromy::sym::{hurwitz_element, marked_orbit_size};
use monodromy::{BraidWord, SearchLimits};

fn orbits(c: &mut Criterion) {
    let h = hurwitz_element(3, 2).unwrap().with_marks(&[2, 2, 0, 0, 0, 0, 0, 0]).unwrap();
    c.bench_function("marked orbit m3 g2", |b| b.iter(|| marked_orbit_size(black_box(&h), 1 << 24).unwrap()));
}

fn searches(c: &mut Criterion) {
    let d = delta_tilde_squared(3).unwrap();
    let s = d.simultaneous_conjugate(&BraidWord::new(3, vec![1, -2, 1]).unwrap()).unwrap();
    let limits = SearchLimits::default();
    c.bench_function("hurwitz search d2 m3", |b| b.iter(|| bfs_hurwitz_equiv(black_box(&s), &d, &limits).unwrap()));

    let pairs = gen_instances(3, 4, Profile::Shuffle, 1).unwrap();
    let mut group = c.benchmark_group("rewrite main m3");
    group.sample_size(10);
    for p in &pairs {
        group.bench_function(&p.name, |b| b.iter(|| rewrite_theorem_main(black_box(&p.s1), &p.s2, &limits).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, orbits, searches);
criterion_main!(benches);
