//! Apéry sets and omega-primality.
//!
//! For numerical semigroups `omega(n)` is computed through restricted maximum
//! lengths: the maximum, over nonempty generator subsets `T` and `b` in
//! `Ap(T)`, of the longest factorization of `n + b` using only `T`.
//! For general semigroups a direct minimal-bullet search with a length cap is
//! provided; it reports whether the cap was large enough to be conclusive.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{contains, for_each_factorization};
use crate::semigroup::{Element, SemigroupPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OmegaResult {
    pub value: u64,
    /// `false` when a search cap truncated the computation; `value` is then a lower bound.
    pub exact: bool,
}

/// `in_semigroup[n]` for `0 <= n <= upto`.
pub fn membership_sieve(gens: &[u64], upto: u64) -> Vec<bool> {
    let mut member = vec![false; upto as usize + 1];
    member[0] = true;
    for n in 1..=upto as usize {
        member[n] = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
    }
    member
}

/// Longest factorization of each `0 <= n <= upto` over `gens`, `None` off the semigroup.
pub fn max_length_table(gens: &[u64], upto: u64) -> Vec<Option<u64>> {
    let mut best: Vec<Option<u64>> = vec![None; upto as usize + 1];
    best[0] = Some(0);
    for n in 1..=upto as usize {
        best[n] = gens
            .iter()
            .filter(|&&g| g as usize <= n)
            .filter_map(|&g| best[n - g as usize].map(|l| l + 1))
            .max();
    }
    best
}

fn check_subset(sgp: &SemigroupPresentation, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= sgp.rank()) {
        return Err(Error::BadGeneratorIndex(i));
    }
    Ok(())
}

/// `Ap(T) = { a in S : a - t not in S for every t in T }` for a numerical
/// semigroup, `T` given by 0-based generator indices.
pub fn apery_set(sgp: &SemigroupPresentation, subset: &[usize]) -> Result<Vec<u64>> {
    let gens = sgp.numerical_generators()?;
    check_subset(sgp, subset)?;
    let t: Vec<u64> = subset.iter().map(|&i| gens[i]).collect();
    let min_t = *t.iter().min().expect("nonempty");
    let max_gen = *gens.iter().max().expect("nonempty");
    // Ap(T) is contained in Ap({min T}), whose elements use fewer than min T atoms.
    let bound = min_t * max_gen;
    let member = membership_sieve(&gens, bound);
    let out: Vec<u64> = (0..=bound)
        .filter(|&a| member[a as usize])
        .filter(|&a| t.iter().all(|&x| a < x || !member[(a - x) as usize]))
        .collect();
    assert!(out.len() as u64 <= min_t, "Ap(T) exceeds |Ap({{min T}})|");
    Ok(out)
}

/// Largest element not in a numerical semigroup (`-1` only when the semigroup is all of N).
pub fn frobenius_number(sgp: &SemigroupPresentation) -> Result<i64> {
    let gens = sgp.numerical_generators()?;
    let ap = apery_set(sgp, &[0])?;
    Ok(*ap.iter().max().expect("0 in Ap") as i64 - gens[0] as i64)
}

/// Longest factorization of `alpha` using only the generators in `subset`.
pub fn max_length_restricted(
    sgp: &SemigroupPresentation,
    subset: &[usize],
    alpha: &Element,
) -> Result<Option<u64>> {
    check_subset(sgp, subset)?;
    let sub = sgp.restrict(subset)?;
    let mut best: Option<u64> = None;
    for_each_factorization(&sub, alpha, |a| {
        let l = a.iter().sum::<u64>();
        best = Some(best.map_or(l, |b| b.max(l)));
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// Precomputed Apéry data for repeated omega evaluations on one numerical semigroup.
#[derive(Debug, Clone)]
pub struct OmegaContext {
    gens: Vec<u64>,
    // (generator values of T, Ap(T)) for every nonempty T
    strata: Vec<(Vec<u64>, Vec<u64>)>,
    member: Vec<bool>,
}

impl OmegaContext {
    pub fn new(sgp: &SemigroupPresentation) -> Result<Self> {
        let gens = sgp.numerical_generators()?;
        let r = gens.len();
        if r > 20 {
            return Err(Error::InvalidArgument("too many generators for subset enumeration".into()));
        }
        let mut strata = Vec::with_capacity((1 << r) - 1);
        for mask in 1u32..(1 << r) {
            let idx: Vec<usize> = (0..r).filter(|&i| mask & (1 << i) != 0).collect();
            let ap = apery_set(sgp, &idx)?;
            strata.push((idx.iter().map(|&i| gens[i]).collect(), ap));
        }
        Ok(Self { gens, strata, member: Vec::new() })
    }

    fn is_member(&self, n: u64) -> bool {
        match self.member.get(n as usize) {
            Some(&b) => b,
            None => membership_sieve(&self.gens, n)[n as usize],
        }
    }

    /// Extends the cached membership sieve so lookups up to `upto` are table reads.
    pub fn with_membership_upto(mut self, upto: u64) -> Self {
        self.member = membership_sieve(&self.gens, upto);
        self
    }

    pub fn omega(&self, n: u64) -> Result<OmegaResult> {
        if !self.is_member(n) {
            return Err(Error::NotInSemigroup(n.to_string()));
        }
        if n == 0 {
            return Ok(OmegaResult { value: 0, exact: true });
        }
        let mut value = 0u64;
        for (t, ap) in &self.strata {
            let top = n + ap.iter().max().copied().unwrap_or(0);
            let table = max_length_table(t, top);
            for &b in ap {
                if let Some(l) = table[(n + b) as usize] {
                    value = value.max(l);
                }
            }
        }
        Ok(OmegaResult { value, exact: true })
    }
}

/// Omega-primality of an element of a numerical semigroup, with `omega(0) = 0`.
pub fn omega(sgp: &SemigroupPresentation, alpha: &Element) -> Result<OmegaResult> {
    sgp.check_element(alpha)?;
    let n = alpha.as_numerical().ok_or(Error::NotNumerical)?;
    OmegaContext::new(sgp)?.omega(n)
}

/// Minimal-bullet search for omega over vectors of length at most `cap`.
///
/// A bullet is an exponent vector `b` with `sum b_i alpha_i - alpha` in the
/// semigroup; bullets are closed upward, so `b` is a minimal bullet exactly
/// when no `b - e_i` is a bullet. The result is exact when every vector of
/// length `cap` is a bullet, since then no minimal bullet can be longer.
/// `omega(0) = 0` under this convention.
pub fn omega_bounded(sgp: &SemigroupPresentation, alpha: &Element, cap: u64) -> Result<OmegaResult> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    if !contains(sgp, alpha)? {
        return Err(Error::NotInSemigroup(alpha.to_string()));
    }
    let amb = sgp.ambient();
    let r = sgp.rank();
    let sieve = sgp.numerical_generators().ok().map(|gens| {
        let top = cap * gens.iter().max().copied().unwrap_or(0);
        membership_sieve(&gens, top)
    });
    let mut member_cache: HashMap<Element, bool> = HashMap::new();
    let mut is_member = |e: &Element| -> Result<bool> {
        if let Some(s) = &sieve {
            return Ok(s[e.free[0] as usize]);
        }
        if let Some(&b) = member_cache.get(e) {
            return Ok(b);
        }
        let b = contains(sgp, e)?;
        member_cache.insert(e.clone(), b);
        Ok(b)
    };

    let mut value = 0u64;
    let mut prev: HashMap<Vec<u64>, (Element, bool)> = HashMap::new();
    prev.insert(vec![0; r], (amb.zero(), alpha.is_zero()));
    if alpha.is_zero() {
        return Ok(OmegaResult { value: 0, exact: true });
    }
    let mut all_bullets_at_cap = false;
    for len in 1..=cap {
        let mut layer: HashMap<Vec<u64>, (Element, bool)> = HashMap::new();
        for (b, (sum, _)) in &prev {
            for i in 0..r {
                let mut nb = b.clone();
                nb[i] += 1;
                if layer.contains_key(&nb) {
                    continue;
                }
                let nsum = sum.add(&sgp.generators()[i], amb);
                let bullet = match nsum.checked_sub(alpha, amb) {
                    Some(diff) => is_member(&diff)?,
                    None => false,
                };
                layer.insert(nb, (nsum, bullet));
            }
        }
        for (b, (_, bullet)) in &layer {
            if !bullet {
                continue;
            }
            let minimal = (0..r).filter(|&i| b[i] > 0).all(|i| {
                let mut lower = b.clone();
                lower[i] -= 1;
                !prev.get(&lower).is_some_and(|(_, bb)| *bb)
            });
            if minimal {
                value = value.max(len);
            }
        }
        if len == cap {
            all_bullets_at_cap = layer.values().all(|(_, b)| *b);
        }
        prev = layer;
    }
    Ok(OmegaResult { value, exact: all_bullets_at_cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mcnugget() -> SemigroupPresentation {
        SemigroupPresentation::numerical(&[6, 9, 20]).unwrap()
    }

    #[test]
    fn apery_sets() {
        let s = mcnugget();
        assert_eq!(apery_set(&s, &[0]).unwrap(), vec![0, 9, 20, 29, 40, 49]);
        let s23 = SemigroupPresentation::numerical(&[2, 3]).unwrap();
        assert_eq!(apery_set(&s23, &[0, 1]).unwrap(), vec![0]);
        let all = apery_set(&s, &[0, 1, 2]).unwrap();
        let six = apery_set(&s, &[0]).unwrap();
        assert!(all.iter().all(|a| six.contains(a)));
        assert_eq!(apery_set(&s, &[]), Err(Error::EmptySubset));
        assert_eq!(
            apery_set(&SemigroupPresentation::affine(&[&[1, 2]]).unwrap(), &[0]),
            Err(Error::NotNumerical)
        );
        for i in 0..3 {
            assert_eq!(apery_set(&s, &[i]).unwrap().len() as u64, [6, 9, 20][i]);
        }
        assert_eq!(frobenius_number(&s).unwrap(), 43);
    }

    #[test]
    fn restricted_max_length() {
        let s = mcnugget();
        assert_eq!(max_length_restricted(&s, &[1, 2], &Element::numerical(49)).unwrap(), Some(3));
        assert_eq!(max_length_restricted(&s, &[1, 2], &Element::numerical(6)).unwrap(), None);
        for n in [0, 18, 60, 126] {
            let e = Element::numerical(n);
            assert_eq!(
                max_length_restricted(&s, &[0, 1, 2], &e).unwrap(),
                crate::invariants::max_length(&s, &e).ok()
            );
        }
    }

    #[test]
    fn omega_values() {
        let s = mcnugget();
        assert_eq!(omega(&s, &Element::numerical(6)).unwrap(), OmegaResult { value: 3, exact: true });
        // <2,3>: minimal bullets of 2 are (1,0) and (0,2), so omega(2) = 2.
        let s23 = SemigroupPresentation::numerical(&[2, 3]).unwrap();
        assert_eq!(omega(&s23, &Element::numerical(2)).unwrap().value, 2);
        assert!(matches!(omega(&s, &Element::numerical(11)), Err(Error::NotInSemigroup(_))));
        assert_eq!(omega(&s, &Element::numerical(0)).unwrap().value, 0);
    }

    #[test]
    fn bounded_search() {
        let s = mcnugget();
        let r = omega_bounded(&s, &Element::numerical(6), 10).unwrap();
        assert_eq!(r, OmegaResult { value: 3, exact: true });
        let r = omega_bounded(&s, &Element::numerical(6), 1).unwrap();
        assert!(!r.exact);
        assert!(r.value <= 3);
        let r = omega_bounded(&s, &Element::numerical(0), 3).unwrap();
        assert_eq!(r, OmegaResult { value: 0, exact: true });
    }
}
