use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use theta_graded::coords::{example_sl_2n1, extract_coordinates_with};
use theta_graded::frak::verify_structure_with;
use theta_graded::graded::{assemble, check_jacobi_with, JacobiMode};
use theta_graded::par::Exec;
use theta_graded::tensor::verify_tables_with;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn jacobi(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobi_full");
    g.sample_size(10);
    for n in [3, 4] {
        let x = extract_coordinates_with(&example_sl_2n1(n).unwrap(), Exec::Parallel).unwrap();
        let l = assemble(&x.data).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("sl{}", 2 * n + 1)), &l, |b, l| {
                b.iter(|| check_jacobi_with(l, JacobiMode::Full, exec))
            });
        }
    }
    g.finish();
}

fn extraction(c: &mut Criterion) {
    let mut g = c.benchmark_group("extract_coordinates");
    g.sample_size(10);
    let e = example_sl_2n1(3).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "sl7"), |b| {
            b.iter(|| extract_coordinates_with(&e, exec).unwrap())
        });
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure_checks");
    g.sample_size(10);
    let x = extract_coordinates_with(&example_sl_2n1(4).unwrap(), Exec::Parallel).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "sl9"), |b| {
            b.iter(|| verify_structure_with(&x.data, exec).unwrap())
        });
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_tables");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "n4"), |b| {
            b.iter(|| verify_tables_with(4, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, jacobi, extraction, structure, tables);
criterion_main!(benches);
