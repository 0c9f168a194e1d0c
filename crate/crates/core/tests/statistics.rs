mod common;

use digraph_probe::analysis::stats::{pearson, student_t_two_sided};
use digraph_probe::Error;
use serde::Deserialize;

#[derive(Deserialize)]
struct Reference {
    tails: Vec<Tail>,
    datasets: Vec<Dataset>,
    inversion: Vec<Inversion>,
}

#[derive(Deserialize)]
struct Tail {
    t: f64,
    df: f64,
    p: f64,
}

#[derive(Deserialize)]
struct Dataset {
    x: Vec<f64>,
    y: Vec<f64>,
    r: f64,
    p: f64,
}

#[derive(Deserialize)]
struct Inversion {
    r: f64,
    n: usize,
    p: f64,
}

fn reference() -> Reference {
    let text = std::fs::read_to_string(common::data_dir().join("pearson_reference.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn matches_high_precision_reference() {
    let refs = reference();
    assert_eq!(refs.datasets.len(), 1000);
    for (i, d) in refs.datasets.iter().enumerate() {
        let got = pearson(&d.x, &d.y).unwrap();
        assert!((got.r - d.r).abs() < 1e-12, "dataset {i}: r {} vs {}", got.r, d.r);
        assert!((got.p - d.p).abs() < 1e-6, "dataset {i}: p {} vs {}", got.p, d.p);
    }
}

#[test]
fn t_tail_matches_reference() {
    for t in reference().tails {
        let p = student_t_two_sided(t.t, t.df);
        assert!((p - t.p).abs() < 1e-9, "t={} df={}: {p} vs {}", t.t, t.df, t.p);
    }
}

#[test]
fn inversion_values() {
    for inv in reference().inversion {
        let p = student_t_two_sided(inv.r * ((inv.n - 2) as f64 / (1.0 - inv.r * inv.r)).sqrt(), (inv.n - 2) as f64);
        assert!((p - inv.p).abs() < 1e-9, "n={}", inv.n);
    }
}

#[test]
fn perfect_correlation_is_exact() {
    let x = [1.0, 2.0, 3.0, 4.0, 5.0];
    let up = pearson(&x, &[2.0, 4.0, 6.0, 8.0, 10.0]).unwrap();
    assert_eq!((up.r, up.p), (1.0, 0.0));
    let down = pearson(&x, &[-3.0, -6.0, -9.0, -12.0, -15.0]).unwrap();
    assert_eq!((down.r, down.p), (-1.0, 0.0));
}

#[test]
fn degenerate_inputs() {
    assert!(matches!(pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), Err(Error::DegenerateVariance)));
    assert!(matches!(pearson(&[1.0, 2.0], &[1.0, 2.0]), Err(Error::TooFewObservations(2))));
    assert!(matches!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]), Err(Error::LengthMismatch(3, 2))));
    assert!(pearson(&[1.0, f64::NAN, 3.0], &[1.0, 2.0, 3.0]).is_err());
}

#[test]
fn invariant_under_affine_maps() {
    let refs = reference();
    for d in refs.datasets.iter().take(200) {
        let x2: Vec<f64> = d.x.iter().map(|v| 3.0 * v - 7.0).collect();
        let y2: Vec<f64> = d.y.iter().map(|v| -0.5 * v + 2.0).collect();
        let a = pearson(&d.x, &d.y).unwrap();
        let b = pearson(&x2, &y2).unwrap();
        assert!((a.r + b.r).abs() < 1e-12);
        assert!((a.p - b.p).abs() < 1e-9);
    }
}
