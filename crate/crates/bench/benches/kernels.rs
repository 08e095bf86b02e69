use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sibling_core::algebra::{isolate_all_real_roots, DensePoly, SturmSequence};
use sibling_core::traintrack::{characteristic_polynomial, lambda_polynomial};
use sibling_core::volume::{solve_filled, SolveOptions};
use sibling_core::{dilatation, CohomologyClass, GradedSubstitution};

fn det(c: &mut Criterion) {
    let track = GradedSubstitution::whitehead_sibling();
    let (p, _) = track.build_matrices();
    c.bench_function("det/transition_matrix", |b| b.iter(|| characteristic_polynomial(black_box(&p))));
    c.bench_function("det/teichmuller", |b| b.iter(|| black_box(&track).teichmuller_polynomial().unwrap()));
}

fn sturm(c: &mut Criterion) {
    let mut group = c.benchmark_group("sturm");
    for a in [9, 31, 61] {
        let p = lambda_polynomial(a, 2);
        group.bench_with_input(BenchmarkId::new("sequence", a), &p, |b, p| {
            b.iter(|| SturmSequence::new(&DensePoly::from_laurent(p).square_free()))
        });
        group.bench_with_input(BenchmarkId::new("isolate", a), &p, |b, p| b.iter(|| isolate_all_real_roots(p).unwrap()));
    }
    group.finish();
}

fn dilatation_sweep(c: &mut Criterion) {
    let classes: Vec<CohomologyClass> =
        (2..40).flat_map(|a| (0..a).filter_map(move |b| CohomologyClass::new(a, b).ok())).collect();
    c.bench_function("dilatation/sweep_a_lt_40", |b| {
        b.iter(|| classes.iter().filter(|p| p.is_hyperbolic()).map(|p| dilatation(p).unwrap().lambda).sum::<f64>())
    });
}

fn filled_solve(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let mut group = c.benchmark_group("filled_solve");
    for (a, b) in [(9, 2), (28, 3), (101, 1)] {
        let phi = CohomologyClass::new(a, b).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{a}_{b}")), &phi, |bn, phi| {
            bn.iter(|| solve_filled(phi, &opts).unwrap().volume())
        });
    }
    group.finish();
}

criterion_group!(benches, det, sturm, dilatation_sweep, filled_solve);
criterion_main!(benches);
