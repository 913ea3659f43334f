//! Fits of an invariant along a ray `k -> invariant(k * alpha)`.

use num::{BigInt, BigRational};
use serde::Serialize;

use super::fit::{fit_search, FitReport, Samples};
use super::linalg::IncrementalBasis;
use crate::error::{Error, Result};
use crate::factor::{contains, factorizations};
use crate::invariants::Invariant;
use crate::parallel::{self, Execution};
use crate::semigroup::{Element, SemigroupPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayFit {
    pub alpha: Element,
    pub invariant: Invariant,
    pub report: FitReport,
    /// Largest `k` sampled; samples are `0..=max_k`.
    pub max_k: u64,
    /// For numerical `alpha = n` with a residue-independent leading coefficient
    /// `b` in degree `e`: `b / n^e`, the coefficient in terms of `k n`.
    #[serde(serialize_with = "super::qp::serialize_opt_rational")]
    pub normalized_leading: Option<BigRational>,
    /// For `ZCount`: rank of the span of all sampled factorizations, whose
    /// value minus one is the expected degree.
    pub factorization_rank: Option<usize>,
}

/// Number of ray points sampled for the given bounds.
pub fn ray_sample_count(degree_bound: usize, period_bound: u64) -> u64 {
    (degree_bound as u64 + 4) * period_bound
}

pub fn ray_fit(
    sgp: &SemigroupPresentation,
    alpha: &Element,
    invariant: Invariant,
    degree_bound: usize,
    period_bound: u64,
) -> Result<RayFit> {
    if !contains(sgp, alpha)? {
        return Err(Error::NotInSemigroup(alpha.to_string()));
    }
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("ray direction must be nonzero".into()));
    }
    let amb = sgp.ambient();
    let ks: Vec<u64> = (0..ray_sample_count(degree_bound, period_bound)).collect();
    let values = parallel::map(Execution::default(), &ks, |&k| invariant.evaluate(sgp, &alpha.scale(k, amb)));
    let mut samples = Samples::new();
    for (&k, v) in ks.iter().zip(values) {
        let v = v?.expect("multiples of a semigroup element are in the semigroup");
        samples.insert(k, v);
    }
    let report = fit_search(&samples, degree_bound, period_bound)?;

    let normalized_leading = match (alpha.as_numerical(), report.qp.constant_leading()) {
        (Some(n), Some(b)) => {
            let scale = num::pow(BigInt::from(n), report.qp.degree());
            Some(b / BigRational::from_integer(scale))
        }
        _ => None,
    };

    let factorization_rank = if invariant == Invariant::ZCount {
        let mut basis = IncrementalBasis::new();
        for &k in &ks {
            for f in factorizations(sgp, &alpha.scale(k, amb))?.iter() {
                basis.insert(f.exponents().iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect());
            }
        }
        Some(basis.rank())
    } else {
        None
    };

    Ok(RayFit {
        alpha: alpha.clone(),
        invariant,
        report,
        max_k: *ks.last().expect("nonempty"),
        normalized_leading,
        factorization_rank,
    })
}
