use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jdlength::algebra::{family_length_report, Family};
use jdlength::hereditary::verify_jd_theorem;
use jdlength::lattice::{downset_lattice, FinPoset, LengthReport};
use jdlength::linalg::FieldKind;
use jdlength::toric::{cohomology, toric_length_report, Preset};
use jdlength_bench::{dynkin_category, fans_with_divisors};

fn lattices(c: &mut Criterion) {
    let mut g = c.benchmark_group("downset_lattice");
    for n in [4usize, 6, 8] {
        let p = FinPoset::antichain(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| LengthReport::of_lattice(&downset_lattice(black_box(p), 12).unwrap()))
        });
    }
    g.finish();
}

fn quivers(c: &mut Criterion) {
    let mut g = c.benchmark_group("jd_theorem");
    g.sample_size(10);
    for name in ["A2", "A3", "A4"] {
        g.bench_function(name, |b| b.iter(|| verify_jd_theorem(&dynkin_category(black_box(name))).unwrap()));
    }
    g.finish();
}

fn algebras(c: &mut Criterion) {
    let mut g = c.benchmark_group("family_report");
    g.sample_size(10);
    for fam in ["lambda:2,3,0", "kronecker:3", "gradedkronecker:2,1"] {
        let f: Family = fam.parse().unwrap();
        g.bench_function(fam, |b| b.iter(|| family_length_report(black_box(f), FieldKind::Rational).unwrap()));
    }
    g.finish();
}

fn toric(c: &mut Criterion) {
    let cases = fans_with_divisors(16, 3);
    c.bench_function("toric_cohomology_16", |b| {
        b.iter(|| {
            for (f, d) in &cases {
                black_box(cohomology(f, d).unwrap());
            }
        })
    });
    let f2 = Preset::Hirzebruch(2).fan();
    c.bench_function("toric_report_f2", |b| b.iter(|| toric_length_report(black_box(&f2), FieldKind::Rational).unwrap()));
}

criterion_group!(benches, lattices, quivers, algebras, toric);
criterion_main!(benches);
