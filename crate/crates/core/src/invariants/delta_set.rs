//! The delta set of a numerical semigroup, with an empirical periodicity certificate.

use num::integer::lcm;
use serde::Serialize;

use super::lengths::{DeltaSet, LengthTable};
use crate::error::{Error, Result};
use crate::semigroup::{Element, SemigroupPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateStatus {
    /// Two consecutive full periods agree.
    Verified,
    /// No start `N0 <= horizon - 2*period` with two agreeing periods.
    HorizonTooSmall,
    /// A caller-supplied start failed the two-period check.
    HintRejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaCertificate {
    /// `lcm(n_1, n_r)`.
    pub period: u64,
    pub start: Option<u64>,
    /// Half-open window `[start, start + 2 * period)` that was compared.
    pub verified_window: Option<(u64, u64)>,
    pub status: CertificateStatus,
    /// Least divisor `p` of `period` with `Δ(n) = Δ(n + p)` on the scanned tail.
    pub minimal_period: Option<u64>,
    /// Least `n` from which the scan is periodic with `minimal_period`.
    pub tail_onset: Option<u64>,
    pub horizon: u64,
}

/// `Δ(n)` for every `0 <= n <= horizon`; `None` off the semigroup.
pub fn delta_profile(sgp: &SemigroupPresentation, horizon: u64) -> Result<Vec<Option<DeltaSet>>> {
    sgp.numerical_generators()?;
    let table = LengthTable::build(sgp, &[horizon])?;
    Ok((0..=horizon).map(|n| table.lengths(&Element::numerical(n)).map(|l| l.delta())).collect())
}

/// Least `N` such that `values[n] == values[n + period]` for every `n >= N`
/// with `n + period` in range. `None` when there is nothing to compare.
pub fn periodic_onset<T: PartialEq>(values: &[T], period: usize) -> Option<usize> {
    if period == 0 || values.len() <= period {
        return None;
    }
    let last_bad = (0..values.len() - period).rev().find(|&n| values[n] != values[n + period]);
    Some(last_bad.map_or(0, |n| n + 1))
}

fn windows_agree<T: PartialEq>(values: &[T], start: usize, period: usize) -> bool {
    (start..start + period).all(|n| values[n] == values[n + period])
}

/// `Δ(Γ)` from a scan of `Δ(n)` for `n <= horizon`.
///
/// The certificate is empirical: the least `N0` for which the windows
/// `[N0, N0 + π)` and `[N0 + π, N0 + 2π)` agree. A `start_hint` (an externally
/// known periodicity bound) is checked instead of searched for.
pub fn delta_of_semigroup(
    sgp: &SemigroupPresentation,
    horizon: u64,
    start_hint: Option<u64>,
) -> Result<(DeltaSet, DeltaCertificate)> {
    let gens = sgp.numerical_generators()?;
    let period = lcm(gens[0], *gens.last().expect("nonempty"));
    if let Some(h) = start_hint {
        if h + 2 * period > horizon {
            return Err(Error::InvalidArgument(format!(
                "horizon {horizon} is shorter than start hint {h} plus two periods of {period}"
            )));
        }
    }
    let profile = delta_profile(sgp, horizon)?;
    let p = period as usize;

    let (start, status) = match start_hint {
        Some(h) if windows_agree(&profile, h as usize, p) => (Some(h), CertificateStatus::Verified),
        Some(_) => (None, CertificateStatus::HintRejected),
        None => match search_start(&profile, p) {
            Some(s) => (Some(s as u64), CertificateStatus::Verified),
            None => (None, CertificateStatus::HorizonTooSmall),
        },
    };

    let upto = match start {
        Some(s) => (s + period) as usize,
        None => horizon as usize,
    };
    let mut union = DeltaSet::default();
    for d in profile[..=upto.min(horizon as usize)].iter().flatten() {
        union.union_with(d);
    }

    let (minimal_period, tail_onset) = match periodic_onset(&profile, p) {
        Some(onset) if onset + p < profile.len() => {
            let minimal = divisors(period)
                .into_iter()
                .find(|&q| (onset..profile.len() - q as usize).all(|n| profile[n] == profile[n + q as usize]))
                .unwrap_or(period);
            let tail = periodic_onset(&profile, minimal as usize).map(|t| t as u64);
            (Some(minimal), tail)
        }
        _ => (None, None),
    };

    let certificate = DeltaCertificate {
        period,
        start,
        verified_window: start.map(|s| (s, s + 2 * period)),
        status,
        minimal_period,
        tail_onset,
        horizon,
    };
    Ok((union, certificate))
}

fn search_start<T: PartialEq>(values: &[T], period: usize) -> Option<usize> {
    // Sliding count of mismatches values[n] != values[n + period] over a window of length `period`.
    if values.len() <= 2 * period {
        return None;
    }
    let bad: Vec<bool> = (0..values.len() - period).map(|n| values[n] != values[n + period]).collect();
    let mut count = bad[..period].iter().filter(|&&b| b).count();
    let last_start = values.len() - 1 - 2 * period;
    for s in 0..=last_start {
        if s > 0 {
            count -= bad[s - 1] as usize;
            count += bad[s + period - 1] as usize;
        }
        if count == 0 {
            return Some(s);
        }
    }
    None
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn onset_helper() {
        assert_eq!(periodic_onset(&[5, 1, 2, 1, 2, 1, 2], 2), Some(1));
        assert_eq!(periodic_onset(&[1, 1, 1], 1), Some(0));
        assert_eq!(periodic_onset(&[1, 2], 2), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn two_three() {
        let s = SemigroupPresentation::numerical(&[2, 3]).unwrap();
        let (d, cert) = delta_of_semigroup(&s, 60, None).unwrap();
        assert_eq!(d.as_slice(), &[1]);
        assert_eq!(cert.status, CertificateStatus::Verified);
        assert_eq!(cert.period, 6);
    }

    #[test]
    fn mcnugget_delta_set() {
        let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
        let (d, cert) = delta_of_semigroup(&s, 500, None).unwrap();
        assert_eq!(d.as_slice(), &[1, 2, 3, 4]);
        assert_eq!(cert.status, CertificateStatus::Verified);
        assert_eq!(cert.period, 60);
        assert_eq!(cert.minimal_period, Some(20));
        assert_eq!(cert.tail_onset, Some(92));
    }

    #[test]
    fn hints_and_short_horizons() {
        let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
        let (_, cert) = delta_of_semigroup(&s, 500, Some(200)).unwrap();
        assert_eq!(cert.status, CertificateStatus::Verified);
        assert_eq!(cert.start, Some(200));
        let (_, cert) = delta_of_semigroup(&s, 500, Some(0)).unwrap();
        assert_eq!(cert.status, CertificateStatus::HintRejected);
        assert!(delta_of_semigroup(&s, 100, Some(0)).is_err());
        let (_, cert) = delta_of_semigroup(&s, 100, None).unwrap();
        assert_eq!(cert.status, CertificateStatus::HorizonTooSmall);
        assert!(matches!(
            delta_of_semigroup(&SemigroupPresentation::affine(&[&[1, 2]]).unwrap(), 10, None),
            Err(Error::NotNumerical)
        ));
    }
}
