use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use qshare::access::{ShareScheme, DEFAULT_MAX_N};
use qshare::distance::min_distance_brute_with;
use qshare::oracle::{cross_check, SWEEP_MAX_N};
use qshare::tables::{parse_table, scan_with};
use qshare::{builtin, parse_code, Eq5Mode, Exec, StabilizerCode};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

/// `[[n,1,1]]` repetition code, cheap to build at any size.
fn repetition(n: usize) -> StabilizerCode {
    let mut text = format!("name: rep{n}\nn: {n}\nk: 1\n");
    for i in 0..n - 1 {
        let row: String = (0..n).map(|j| if j == i || j == i + 1 { 'Z' } else { 'I' }).collect();
        text.push_str(&format!("stabilizer: {row}\n"));
    }
    text.push_str(&format!("logical_z: Z{}\n", "I".repeat(n - 1)));
    text.push_str(&format!("logical_x: {}\n", "X".repeat(n)));
    parse_code(&text).unwrap()
}

fn access(c: &mut Criterion) {
    let mut group = c.benchmark_group("access_summary");
    group.sample_size(10);
    for code in [builtin("steane").unwrap(), repetition(16)] {
        let scheme = ShareScheme::new(&code).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, code.name()), &scheme, |b, s| {
                b.iter(|| black_box(s.summary(DEFAULT_MAX_N, exec).unwrap()))
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("thresholds");
    group.sample_size(10);
    let scheme = ShareScheme::new(&repetition(18)).unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| b.iter(|| black_box(scheme.thresholds(DEFAULT_MAX_N, exec).unwrap())));
    }
    group.finish();
}

fn distance(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_distance");
    group.sample_size(10);
    let code = builtin("steane").unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| black_box(min_distance_brute_with(&code, code.n(), exec).unwrap()))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_cross_check");
    group.sample_size(10);
    let code = builtin("steane").unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| b.iter(|| black_box(cross_check(&code, SWEEP_MAX_N, exec).unwrap())));
    }
    group.finish();
}

fn table_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_scan");
    let mut text = String::new();
    for n in 5..400u64 {
        for d in 1..=n.min(40) {
            text.push_str(&format!("{n},{},{d}\n", 1 + n % 5));
        }
    }
    let entries = parse_table(&text).unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| black_box(scan_with(&entries, 2, Eq5Mode::Corrected, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, access, distance, oracle, table_scan);
criterion_main!(benches);
