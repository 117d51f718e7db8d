use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use jetlab::scalar::qc;
use jetlab::wronskian::wronskian_numerator;
use jetlab::{
    build_wronskian, fmt_defect, parse_poly, proof_integral_convergence, threshold_vs_stated_bound,
    default_eps_grid, HyperplaneArrangement, Hypersurface, JetSpace, ProjectiveCurve,
    TrapezoidOptions,
};
use num_rational::BigRational;

fn moment_arrangement(n: usize, q: usize) -> HyperplaneArrangement {
    let forms = (1..=q as i64)
        .map(|t| (0..=n as u32).map(|e| BigRational::from_integer(t.pow(e).into())).collect())
        .collect();
    HyperplaneArrangement::new(n, forms).unwrap()
}

fn jet_algebra(c: &mut Criterion) {
    c.bench_function("faa_di_bruno_log j=6", |b| {
        b.iter(|| JetSpace::new(6).faa_di_bruno_log(1, black_box(6)).unwrap())
    });
    c.bench_function("wronskian_numerator n=4", |b| b.iter(|| wronskian_numerator(black_box(4))));
}

fn wronskian(c: &mut Criterion) {
    let a = moment_arrangement(3, 18);
    c.bench_function("build_wronskian n=3 q=18", |b| b.iter(|| build_wronskian(black_box(&a), None).unwrap()));
}

fn nevanlinna(c: &mut Criterion) {
    let f = ProjectiveCurve::new(vec![parse_poly("2 + z").unwrap(), parse_poly("z^3 - 1/8").unwrap()], 0.99)
        .unwrap();
    let d = Hypersurface::linear(vec![qc(1, 0), qc(2, 0)]).unwrap();
    let grid = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95];
    let o = TrapezoidOptions::default();
    c.bench_function("fmt_defect six radii", |b| b.iter(|| fmt_defect(&f, &d, black_box(&grid), &o).unwrap()));
}

fn analysis(c: &mut Criterion) {
    let eps = default_eps_grid();
    c.bench_function("proof_integral ratio=0.5", |b| {
        b.iter(|| proof_integral_convergence(black_box(0.5), &eps).unwrap())
    });
    c.bench_function("threshold n=12", |b| b.iter(|| threshold_vs_stated_bound(black_box(12)).unwrap()));
}

criterion_group!(benches, jet_algebra, wronskian, nevanlinna, analysis);
criterion_main!(benches);
