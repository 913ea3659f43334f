//! Exact quasipolynomial fitting: per-residue-class interpolation followed by
//! verification against every remaining sample. There is no tolerance; a
//! single mismatch rejects a (degree, period, onset) candidate.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use super::linalg;
use super::qp::QuasiPolynomial;
use crate::error::{Error, Result};
use crate::invariants::divisors;

pub type Samples = BTreeMap<u64, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub qp: QuasiPolynomial,
    /// Least sample point from which `qp` reproduces every sample.
    pub onset: u64,
    pub exact_match_count: usize,
    /// Sample points below the onset where `qp` disagrees with the data.
    pub residual_positions: Vec<u64>,
    /// Minimal cycle length of each coefficient row, constant term first.
    pub row_periods: Vec<u64>,
}

fn power_row(n: u64, k: usize) -> Vec<BigRational> {
    let x = BigRational::from_integer(BigInt::from(n));
    let mut row = Vec::with_capacity(k + 1);
    let mut acc = BigRational::one();
    for _ in 0..=k {
        row.push(acc.clone());
        acc *= &x;
    }
    row
}

fn interpolate(points: &[(u64, &BigRational)], k: usize) -> Vec<BigRational> {
    let a: Vec<Vec<BigRational>> = points.iter().map(|(n, _)| power_row(*n, k)).collect();
    let b: Vec<BigRational> = points.iter().map(|(_, v)| (*v).clone()).collect();
    linalg::solve(&a, &b).expect("Vandermonde system on distinct nodes is nonsingular")
}

fn eval_poly(coeffs: &[BigRational], n: u64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(n));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

fn classes(samples: &Samples, period: u64, from: u64) -> Vec<Vec<(u64, &BigRational)>> {
    let mut out = vec![Vec::new(); period as usize];
    for (&n, v) in samples.range(from..) {
        out[(n % period) as usize].push((n, v));
    }
    out
}

/// Fits a quasipolynomial of the given degree and period to the samples at
/// `n >= from`: interpolate each residue class on its first `degree + 1`
/// points and check all the others.
pub fn fit_fixed(samples: &Samples, degree: usize, period: u64, from: u64) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let mut rows = vec![vec![BigRational::zero(); period as usize]; degree + 1];
    for (c, pts) in classes(samples, period, from).iter().enumerate() {
        if pts.len() < degree + 2 {
            return Err(Error::InsufficientSamples(format!(
                "class {c} mod {period} has {} samples at or after {from}; need {}",
                pts.len(),
                degree + 2
            )));
        }
        let coeffs = interpolate(&pts[..=degree], degree);
        if let Some((n, _)) = pts[degree + 1..].iter().find(|(n, v)| eval_poly(&coeffs, *n) != **v) {
            return Err(Error::NoFit(format!("degree {degree}, period {period} fails at n = {n}")));
        }
        for (i, a) in coeffs.into_iter().enumerate() {
            rows[i][c] = a;
        }
    }
    QuasiPolynomial::new(period, rows)
}

/// Whether `qp` reproduces every sample at or after `from`.
pub fn fits_from(samples: &Samples, qp: &QuasiPolynomial, from: u64) -> bool {
    samples.range(from..).all(|(&n, v)| &qp.eval(n) == v)
}

/// Searches degrees `0..=degree_bound` and periods dividing `period_bound`,
/// returning the least degree, then least period, then least onset whose fit
/// leaves a verified tail of at least `(degree_bound + 2) * period_bound`.
pub fn fit_search(samples: &Samples, degree_bound: usize, period_bound: u64) -> Result<FitReport> {
    if period_bound == 0 {
        return Err(Error::InvalidArgument("period bound must be positive".into()));
    }
    let (Some((&lo, _)), Some((&hi, _))) = (samples.first_key_value(), samples.last_key_value()) else {
        return Err(Error::InsufficientSamples("no samples".into()));
    };
    let tail = (degree_bound as u64 + 2) * period_bound;
    if hi - lo + 1 < tail {
        return Err(Error::InsufficientSamples(format!(
            "samples span [{lo}, {hi}]; need at least {tail} consecutive values"
        )));
    }
    let latest_onset = hi + 1 - tail;

    for degree in 0..=degree_bound {
        for period in divisors(period_bound) {
            let Some(onset) = tail_onset(samples, degree, period, degree_bound) else {
                continue;
            };
            if onset > latest_onset {
                continue;
            }
            let qp = fit_fixed(samples, degree, period, onset)?;
            return Ok(report(samples, qp, onset));
        }
    }
    Err(Error::NoFitWithinBounds { degree_bound, period_bound })
}

/// Onset of the tail-anchored fit: each class is interpolated on its last
/// `degree + 1` points and walked backwards to its latest disagreement.
fn tail_onset(samples: &Samples, degree: usize, period: u64, degree_bound: usize) -> Option<u64> {
    let cls = classes(samples, period, 0);
    let mut last_bad: Option<u64> = None;
    for pts in &cls {
        if pts.len() < degree + 2 {
            return None;
        }
        let anchor = &pts[pts.len() - degree - 1..];
        let coeffs = interpolate(anchor, degree);
        if let Some((n, _)) = pts[..pts.len() - degree - 1].iter().rev().find(|(n, v)| eval_poly(&coeffs, *n) != **v) {
            last_bad = Some(last_bad.map_or(*n, |b| b.max(*n)));
        }
    }
    let onset = match last_bad {
        Some(b) => *samples.range(b + 1..).next()?.0,
        None => *samples.first_key_value()?.0,
    };
    let enough = cls.iter().all(|pts| pts.iter().filter(|(n, _)| *n >= onset).count() >= degree_bound + 2);
    enough.then_some(onset)
}

fn report(samples: &Samples, qp: QuasiPolynomial, onset: u64) -> FitReport {
    let mut exact_match_count = 0;
    let mut residual_positions = Vec::new();
    for (&n, v) in samples {
        if &qp.eval(n) == v {
            exact_match_count += 1;
        } else {
            residual_positions.push(n);
        }
    }
    let row_periods = qp.row_periods();
    FitReport { qp, onset, exact_match_count, residual_positions, row_periods }
}

#[cfg(test)]
mod tests {
    use super::super::qp::{int, ratio};
    use super::*;

    fn from_fn(range: std::ops::RangeInclusive<u64>, f: impl Fn(u64) -> BigRational) -> Samples {
        range.map(|n| (n, f(n))).collect()
    }

    #[test]
    fn constant_fit() {
        let s = from_fn(0..=10, |_| int(4));
        let q = fit_fixed(&s, 0, 1, 0).unwrap();
        assert_eq!(q, QuasiPolynomial::constant(int(4)));
        let r = fit_search(&s, 1, 2).unwrap();
        assert_eq!((r.qp.degree(), r.qp.period(), r.onset), (0, 1, 0));
        assert_eq!(r.exact_match_count, 11);
    }

    #[test]
    fn floor_half_with_noisy_prefix() {
        // floor(n/2) from n = 5, garbage before
        let s = from_fn(0..=40, |n| if n < 5 { int(100) } else { int((n / 2) as i64) });
        let r = fit_search(&s, 2, 4).unwrap();
        assert_eq!(r.qp.degree(), 1);
        assert_eq!(r.qp.period(), 2);
        assert_eq!(r.onset, 5);
        assert_eq!(r.qp.constant_leading(), Some(&ratio(1, 2)));
        assert_eq!(r.residual_positions, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.row_periods, vec![2, 1]);
    }

    #[test]
    fn fixed_errors() {
        let s = from_fn(0..=3, |n| int(n as i64 * n as i64));
        assert!(matches!(fit_fixed(&s, 1, 1, 0), Err(Error::NoFit(_))));
        assert!(matches!(fit_fixed(&s, 2, 2, 0), Err(Error::InsufficientSamples(_))));
        assert!(matches!(fit_search(&s, 1, 2), Err(Error::InsufficientSamples(_))));
        let s = from_fn(0..=60, |n| int(n as i64 * n as i64 * n as i64));
        assert_eq!(fit_search(&s, 2, 3), Err(Error::NoFitWithinBounds { degree_bound: 2, period_bound: 3 }));
    }

    #[test]
    fn sparse_samples() {
        // values only on even n
        let s: Samples = (0..=60).filter(|n| n % 2 == 0).map(|n| (n, int(3 * n as i64))).collect();
        let r = fit_search(&s, 1, 2).unwrap();
        assert_eq!((r.qp.degree(), r.qp.period()), (1, 1));
        assert!(fits_from(&s, &r.qp, 0));
    }
}
