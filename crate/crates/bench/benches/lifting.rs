use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tamelift::crystalline_lift::lift_inertia;
use tamelift::hodge_tate::regular_lift;
use tamelift::tame_reps::{brute_force_parabolic_oracle, is_g_irreducible, OracleGuard, ParabolicCatalog};
use tamelift::Preset;
use tamelift_bench::sample_pairs;

fn lifts(c: &mut Criterion) {
    let (d, pairs) = sample_pairs(Preset::GL(4), 5, 3, 4, 1);
    c.bench_function("lift_inertia GL4 q=5 f=3", |b| {
        b.iter(|| pairs.iter().map(|p| lift_inertia(&d, black_box(p)).unwrap()).collect::<Vec<_>>())
    });
    c.bench_function("regular_lift GL4 q=5 f=3", |b| {
        b.iter(|| pairs.iter().map(|p| regular_lift(&d, black_box(p)).unwrap()).collect::<Vec<_>>())
    });
}

fn irreducibility(c: &mut Criterion) {
    let (d, pairs) = sample_pairs(Preset::G2, 4, 2, 4, 2);
    c.bench_function("is_g_irreducible G2 q=4 f=2", |b| {
        b.iter(|| pairs.iter().filter(|p| is_g_irreducible(&d, black_box(p)).unwrap().irreducible).count())
    });
    let (d4, pairs4) = sample_pairs(Preset::Sp(4), 3, 2, 1, 3);
    c.bench_function("parabolic catalog Sp4", |b| b.iter(|| ParabolicCatalog::new(&d4, OracleGuard::default())));
    c.bench_function("brute_force_parabolic_oracle Sp4", |b| {
        b.iter(|| brute_force_parabolic_oracle(&d4, black_box(&pairs4[0]), OracleGuard::default()).unwrap())
    });
}

criterion_group!(benches, lifts, irreducibility);
criterion_main!(benches);
