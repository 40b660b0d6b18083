use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qdiff_core::braiding::{AntisymBuild, AntisymLayout};
use qdiff_core::hecke::{central_idempotent, HeckeElt};
use qdiff_core::invariants::biinvariant_dim;
use qdiff_core::scalars::rank_detailed;
use qdiff_core::{Partition, RankMode, Tau};

fn antisym_rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("antisym_rank");
    g.sample_size(10);
    for (n, k, mode) in [
        (2, 3, RankMode::Exact),
        (2, 4, RankMode::Exact),
        (3, 2, RankMode::Exact),
        (3, 3, RankMode::modular_default(1)),
    ] {
        let label = format!("N{n}_k{k}_{}", if mode.is_exact() { "exact" } else { "modular" });
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            let build = AntisymBuild { k, n, tau: Tau::Plus, layout: AntisymLayout::Interleaved };
            b.iter(|| rank_detailed(&build, &mode).unwrap().rank)
        });
    }
    g.finish();
}

fn biinvariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("biinvariant_dim");
    g.sample_size(10);
    for k in 1..=3 {
        g.bench_function(BenchmarkId::new("N2_exact", k), |b| {
            b.iter(|| biinvariant_dim(k, 2, Tau::Minus, &RankMode::Exact).unwrap().value)
        });
    }
    g.finish();
}

fn hecke_products(c: &mut Criterion) {
    let mut g = c.benchmark_group("hecke");
    for k in 2..=4 {
        let lam = Partition::new(&[k - 1, 1]).unwrap();
        g.bench_function(BenchmarkId::new("z_lambda_square", k), |b| {
            let z: HeckeElt = central_idempotent(&lam).unwrap();
            b.iter(|| z.mul(&z).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, antisym_rank, biinvariants, hecke_products);
criterion_main!(benches);
