use std::path::PathBuf;

use lsdc::bounds::{region_report, write_region_csv};

fn snapshot(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/snapshots").join(name)
}

/// Compares against the stored file; `LSDC_BLESS=1` rewrites it.
fn check(name: &str, rows: &[(u32, usize, usize, u64)]) {
    let reports: Vec<_> = rows.iter().map(|&(q, k, n, l)| region_report(q, k, n, l).unwrap()).collect();
    let mut buf = Vec::new();
    write_region_csv(&reports, &mut buf).unwrap();
    let path = snapshot(name);
    if std::env::var_os("LSDC_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &buf).unwrap();
    }
    let stored = std::fs::read_to_string(&path).expect("snapshot exists");
    let fresh = String::from_utf8(buf).unwrap();
    for (i, (a, b)) in stored.lines().zip(fresh.lines()).enumerate() {
        assert_eq!(a, b, "{name} line {}", i + 1);
    }
    assert_eq!(stored.lines().count(), fresh.lines().count());
}

#[test]
fn binary_half_rate_curve() {
    let rows: Vec<_> = (4..=32).step_by(2).map(|n| (2, n / 2, n, 1)).collect();
    check("region_q2.csv", &rows);
}

#[test]
fn ternary_curve_with_long_files() {
    let rows: Vec<_> = (3..=24).step_by(3).map(|n| (3, n / 3, n, 4)).collect();
    check("region_q3.csv", &rows);
}
