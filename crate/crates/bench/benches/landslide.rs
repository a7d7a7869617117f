use criterion::{black_box, criterion_group, criterion_main, Criterion};
use landslide::holonomy::{fn_to_rep, length_spectrum, FNCoords, SurfaceGroupRep};
use landslide::mesh::{build_octagon_surface, minimal_lagrangian, SolverConfig};
use landslide::tensor::landslide_point;
use landslide::tensor::sampling::random_pair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pointwise(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs: Vec<_> = (0..64).map(|_| random_pair(&mut rng, 4.0)).collect();
    c.bench_function("landslide_point x64", |bench| {
        bench.iter(|| {
            for (h, b) in &pairs {
                black_box(landslide_point(h, b, black_box(1.3)).unwrap());
            }
        })
    });
}

fn holonomy(c: &mut Criterion) {
    let coords = FNCoords::new([1.2, 0.9, 1.7], [0.3, -0.2, 0.5]).unwrap();
    c.bench_function("fn_to_rep", |bench| bench.iter(|| fn_to_rep(black_box(&coords)).unwrap()));
    let rep = fn_to_rep(&coords).unwrap();
    c.bench_function("length_spectrum word<=4", |bench| bench.iter(|| length_spectrum(black_box(&rep), 4).unwrap()));
}

fn mesh(c: &mut Criterion) {
    let (surface, _) = build_octagon_surface(1).unwrap();
    let rep = SurfaceGroupRep::octagon();
    let cfg = SolverConfig::default();
    let mut g = c.benchmark_group("mesh");
    g.sample_size(10);
    g.bench_function("minimal_lagrangian level 1", |bench| {
        bench.iter(|| minimal_lagrangian(&surface, &rep, &rep, &cfg).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pointwise, holonomy, mesh);
criterion_main!(benches);
