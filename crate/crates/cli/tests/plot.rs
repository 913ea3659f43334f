use std::fs;

use sgf_cli::plot::{delta_points, plot_delta};
use sgf_core::SemigroupPresentation;

#[test]
fn mcnugget_points() {
    let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.svg");
    let points = plot_delta(&s, 200, &out).unwrap();
    assert!(points.contains(&(60, 1)) && points.contains(&(60, 4)));
    assert!(points.iter().all(|&(n, _)| n != 29));
    let csv = fs::read_to_string(dir.path().join("delta.csv")).unwrap();
    assert!(csv.starts_with("n,d\n"));
    assert!(csv.lines().any(|l| l == "60,4"));
    assert_eq!(csv.lines().count(), points.len() + 1);
    assert!(fs::read_to_string(&out).unwrap().starts_with("<svg"));
}

#[test]
fn horizon_zero_is_empty() {
    let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
    assert!(delta_points(&s, 0).unwrap().is_empty());
}

#[test]
fn four_generator_gap_six() {
    let s = SemigroupPresentation::numerical(&[17, 33, 53, 71]).unwrap();
    let sixes: Vec<u64> = delta_points(&s, 400).unwrap().into_iter().filter(|p| p.1 == 6).map(|p| p.0).collect();
    assert_eq!(sixes, vec![266, 283, 300]);
}

#[test]
fn affine_is_rejected() {
    let s = SemigroupPresentation::affine(&[&[2, 1], &[1, 1], &[1, 2]]).unwrap();
    assert!(matches!(delta_points(&s, 10), Err(sgf_core::Error::NotNumerical)));
}
