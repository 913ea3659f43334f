//! Factorization invariants built on enumeration.

mod catenary;
mod delta_set;
mod lengths;
mod omega;
mod scan;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::Serialize;

pub use catenary::{catenary_degree, catenary_of_set, distance};
pub use delta_set::{delta_of_semigroup, delta_profile, periodic_onset, CertificateStatus, DeltaCertificate};
pub use lengths::{
    delta_of_element, length_set, lengths_of, max_length, min_length, DeltaSet, LengthSet, LengthTable,
};
pub use omega::{
    apery_set, frobenius_number, max_length_restricted, max_length_table, membership_sieve, omega, omega_bounded,
    OmegaContext, OmegaResult,
};
pub use scan::{parse_columns, scan, Column, ScanDomain, ScanOptions, ScanRecord, ScanTable};

pub(crate) use delta_set::divisors;

use crate::error::{Error, Result};
use crate::factor::factorization_count;
use crate::semigroup::{Element, SemigroupPresentation};

/// A scalar invariant, for fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Invariant {
    ZCount,
    LengthCount,
    MaxLength,
    MinLength,
    Omega,
    Catenary,
}

impl Invariant {
    pub const ALL: [Invariant; 6] = [
        Invariant::ZCount,
        Invariant::LengthCount,
        Invariant::MaxLength,
        Invariant::MinLength,
        Invariant::Omega,
        Invariant::Catenary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::ZCount => "z_count",
            Invariant::LengthCount => "length_count",
            Invariant::MaxLength => "max_len",
            Invariant::MinLength => "min_len",
            Invariant::Omega => "omega",
            Invariant::Catenary => "catenary",
        }
    }

    fn column(self) -> Column {
        match self {
            Invariant::ZCount => Column::ZCount,
            Invariant::LengthCount => Column::Lengths,
            Invariant::MaxLength => Column::MaxLen,
            Invariant::MinLength => Column::MinLen,
            Invariant::Omega => Column::Omega,
            Invariant::Catenary => Column::Catenary,
        }
    }

    fn extract(self, r: &ScanRecord) -> Option<u64> {
        match self {
            Invariant::ZCount => r.z_count,
            Invariant::LengthCount => r.lengths.as_ref().map(|l| l.len() as u64),
            Invariant::MaxLength => r.max_len,
            Invariant::MinLength => r.min_len,
            Invariant::Omega => r.omega.filter(|_| r.omega_exact == Some(true)),
            Invariant::Catenary => r.catenary,
        }
    }

    /// Value at `alpha`, `None` when `alpha` is not in the semigroup.
    /// Omega outside numerical semigroups is an error unless the capped search closes.
    pub fn evaluate(self, sgp: &SemigroupPresentation, alpha: &Element) -> Result<Option<BigRational>> {
        let v = match self {
            Invariant::ZCount => Some(factorization_count(sgp, alpha)?).filter(|&c| c > 0),
            Invariant::LengthCount => length_set(sgp, alpha).ok().map(|l| l.len() as u64),
            Invariant::MaxLength => length_set(sgp, alpha).ok().and_then(|l| l.max()),
            Invariant::MinLength => length_set(sgp, alpha).ok().and_then(|l| l.min()),
            Invariant::Catenary => match catenary_degree(sgp, alpha) {
                Ok(c) => Some(c),
                Err(Error::NotInSemigroup(_)) => None,
                Err(e) => return Err(e),
            },
            Invariant::Omega => {
                if !crate::factor::contains(sgp, alpha)? {
                    None
                } else if sgp.is_numerical() {
                    Some(omega(sgp, alpha)?.value)
                } else {
                    let w = omega_bounded(sgp, alpha, ScanOptions::default().omega_cap)?;
                    if !w.exact {
                        return Err(Error::NoFit(format!("omega search at {alpha} did not close")));
                    }
                    Some(w.value)
                }
            }
        };
        Ok(v.map(|x| BigRational::from_integer(BigInt::from(x))))
    }

    /// Values on every semigroup element of `lo..=hi` in a numerical semigroup.
    pub fn sequence(self, sgp: &SemigroupPresentation, lo: u64, hi: u64) -> Result<BTreeMap<u64, BigRational>> {
        sgp.numerical_generators()?;
        let t = scan(sgp, &ScanDomain::Range { lo, hi }, &[self.column()], ScanOptions::default())?;
        Ok(t.records
            .iter()
            .filter_map(|r| self.extract(r).map(|v| (r.element.free[0], BigRational::from_integer(BigInt::from(v)))))
            .collect())
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .or(match s {
                "z" | "zcount" => Some(Invariant::ZCount),
                "lengths" | "length-count" | "l" => Some(Invariant::LengthCount),
                "max" | "maxlen" => Some(Invariant::MaxLength),
                "min" | "minlen" => Some(Invariant::MinLength),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown invariant `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_matches_sequence() {
        let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
        for inv in Invariant::ALL {
            let seq = inv.sequence(&s, 0, 80).unwrap();
            for n in 0..=80 {
                assert_eq!(inv.evaluate(&s, &Element::numerical(n)).unwrap(), seq.get(&n).cloned(), "{inv} at {n}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for inv in Invariant::ALL {
            assert_eq!(inv.name().parse::<Invariant>().unwrap(), inv);
        }
        assert!("nope".parse::<Invariant>().is_err());
    }
}
