use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use fmb_bench::{field, group};
use fmb_core::algebra::radical_filtration;
use fmb_core::constructions::construct_named;
use fmb_core::obstruction::obstruct;
use fmb_core::pgroup::{catalog_lookup, group_from_spec, CatalogParams};
use fmb_core::verify::verify_fm_basis;

fn collection(c: &mut Criterion) {
    let spec = catalog_lookup("G_49", &CatalogParams::none()).unwrap();
    c.bench_function("collect G_49 table", |b| {
        b.iter(|| group_from_spec(black_box(&spec)).unwrap())
    });
    let spec = catalog_lookup("H_1[p=5]", &CatalogParams::none()).unwrap();
    c.bench_function("collect H_1(5) table", |b| {
        b.iter(|| group_from_spec(black_box(&spec)).unwrap())
    });
}

fn filtration(c: &mut Criterion) {
    let g = group("G_49");
    let f2 = field(2, 1);
    c.bench_function("radical filtration G_49 / GF(2)", |b| {
        b.iter(|| radical_filtration(&g, &f2).unwrap())
    });
    let g = group("Q_8 x C_4");
    let f4 = field(2, 2);
    c.bench_function("radical filtration Q_8 x C_4 / GF(4)", |b| {
        b.iter(|| radical_filtration(&g, &f4).unwrap())
    });
    let g = group("H_2[p=3]");
    let f3 = field(3, 1);
    c.bench_function("radical filtration H_2(3) / GF(3)", |b| {
        b.iter(|| radical_filtration(&g, &f3).unwrap())
    });
}

fn verify(c: &mut Criterion) {
    let f = field(2, 1);
    let (g, cand) = construct_named("D_8 x C_4", &f, 1_000_000).unwrap();
    let filt = radical_filtration(&g, &f).unwrap();
    c.bench_function("verify D_8 x C_4 basis", |b| {
        b.iter(|| verify_fm_basis(&g, &f, &filt, black_box(&cand)).unwrap())
    });
}

fn engine(c: &mut Criterion) {
    let f = field(2, 1);
    let g = group("G_27");
    c.bench_function("obstruct G_27 m=4", |b| {
        b.iter(|| obstruct(&g, &f, 4, 10_000_000).unwrap())
    });
    let g = group("G_50");
    c.bench_function("obstruct G_50 m=3", |b| {
        b.iter(|| obstruct(&g, &f, 3, 10_000_000).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = collection, filtration, verify, engine
}
criterion_main!(kernels);
