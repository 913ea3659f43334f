//! Exhaustive factorization enumeration.
//!
//! Factorizations are solved on the free projection with a depth-first search
//! over exponent vectors; the torsion congruence is checked at the leaves.
//! Every generator has a nonzero free part (reducedness), so each exponent is
//! bounded by the free coordinates of the target.

use std::ops::ControlFlow;

use num::{BigUint, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{Element, SemigroupPresentation};

/// An exponent vector `a` with `sum a_i alpha_i = alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct Factorization {
    exponents: Vec<u64>,
    length: u64,
}

impl Factorization {
    pub fn new(exponents: Vec<u64>) -> Self {
        let length = exponents.iter().sum();
        Self { exponents, length }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }
}

impl From<Vec<u64>> for Factorization {
    fn from(v: Vec<u64>) -> Self {
        Factorization::new(v)
    }
}

impl From<Factorization> for Vec<u64> {
    fn from(f: Factorization) -> Self {
        f.exponents
    }
}

/// `Z(alpha)` in ascending lexicographic order of exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationSet {
    pub element: Element,
    pub factorizations: Vec<Factorization>,
}

impl FactorizationSet {
    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Factorization> {
        self.factorizations.iter()
    }
}

/// `sum a_i alpha_i`.
pub fn evaluate(sgp: &SemigroupPresentation, exponents: &[u64]) -> Result<Element> {
    if exponents.len() != sgp.rank() {
        return Err(Error::DimensionMismatch(exponents.len(), sgp.rank()));
    }
    let amb = sgp.ambient();
    Ok(sgp
        .generators()
        .iter()
        .zip(exponents)
        .fold(amb.zero(), |acc, (g, &k)| acc.add_scaled(g, k, amb)))
}

fn ensure_reduced(sgp: &SemigroupPresentation) -> Result<()> {
    match sgp.generators().iter().position(|g| g.free.iter().all(|&x| x == 0)) {
        Some(i) => Err(Error::NotReduced(i + 1)),
        None => Ok(()),
    }
}

struct Search<'a, F> {
    gens: &'a [Element],
    orders: &'a [u64],
    target_torsion: &'a [u64],
    // coverable[i][j]: some generator at index >= i has a positive j-th coordinate
    coverable: Vec<Vec<bool>>,
    exps: Vec<u64>,
    visit: F,
}

impl<F: FnMut(&[u64]) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, level: usize, rem: &mut [u64], tors: &mut [u64]) -> ControlFlow<()> {
        let g = &self.gens[level];
        let last = level + 1 == self.gens.len();
        let bound = g
            .free
            .iter()
            .zip(rem.iter())
            .filter(|(&c, _)| c > 0)
            .map(|(&c, &r)| r / c)
            .min()
            .expect("reduced generator");

        if last {
            // Only one exponent can zero out the remainder.
            let k = bound;
            if g.free.iter().zip(rem.iter()).any(|(&c, &r)| c * k != r) {
                return ControlFlow::Continue(());
            }
            let ok = tors
                .iter()
                .zip(&g.torsion)
                .zip(self.orders)
                .zip(self.target_torsion)
                .all(|(((&t, &gt), &o), &want)| (t + (k % o) * gt) % o == want);
            if ok {
                self.exps[level] = k;
                let flow = (self.visit)(&self.exps);
                self.exps[level] = 0;
                return flow;
            }
            return ControlFlow::Continue(());
        }

        let saved_rem: Vec<u64> = rem.to_vec();
        let saved_tors: Vec<u64> = tors.to_vec();
        for k in 0..=bound {
            for (j, r) in rem.iter_mut().enumerate() {
                *r = saved_rem[j] - k * g.free[j];
            }
            for (j, t) in tors.iter_mut().enumerate() {
                let o = self.orders[j];
                *t = (saved_tors[j] + (k % o) * g.torsion[j]) % o;
            }
            let next = &self.coverable[level + 1];
            if rem.iter().zip(next).any(|(&r, &c)| r > 0 && !c) {
                continue;
            }
            self.exps[level] = k;
            let flow = self.run(level + 1, rem, tors);
            if flow.is_break() {
                rem.copy_from_slice(&saved_rem);
                tors.copy_from_slice(&saved_tors);
                self.exps[level] = 0;
                return flow;
            }
        }
        rem.copy_from_slice(&saved_rem);
        tors.copy_from_slice(&saved_tors);
        self.exps[level] = 0;
        ControlFlow::Continue(())
    }
}

/// Visits every factorization of `alpha` in ascending lexicographic order.
/// The visitor may stop the search early by returning `Break`.
pub fn for_each_factorization<F>(sgp: &SemigroupPresentation, alpha: &Element, visit: F) -> Result<()>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    sgp.check_element(alpha)?;
    ensure_reduced(sgp)?;
    let gens = sgp.generators();
    let d = sgp.ambient().free_rank;
    let mut coverable = vec![vec![false; d]; gens.len() + 1];
    for i in (0..gens.len()).rev() {
        for j in 0..d {
            coverable[i][j] = coverable[i + 1][j] || gens[i].free[j] > 0;
        }
    }
    if alpha.free.iter().zip(&coverable[0]).any(|(&x, &c)| x > 0 && !c) {
        return Ok(());
    }
    let mut search = Search {
        gens,
        orders: &sgp.ambient().torsion_orders,
        target_torsion: &alpha.torsion,
        coverable,
        exps: vec![0; gens.len()],
        visit,
    };
    let mut rem = alpha.free.clone();
    let mut tors = vec![0; alpha.torsion.len()];
    let _ = search.run(0, &mut rem, &mut tors);
    Ok(())
}

/// Membership test: `Z(alpha)` is nonempty.
pub fn contains(sgp: &SemigroupPresentation, alpha: &Element) -> Result<bool> {
    let mut found = false;
    for_each_factorization(sgp, alpha, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// The full factorization set of `alpha`.
pub fn factorizations(sgp: &SemigroupPresentation, alpha: &Element) -> Result<FactorizationSet> {
    let mut out = Vec::new();
    for_each_factorization(sgp, alpha, |a| {
        out.push(Factorization::new(a.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(FactorizationSet { element: alpha.clone(), factorizations: out })
}

/// Number of factorizations without materializing them.
pub fn factorization_count(sgp: &SemigroupPresentation, alpha: &Element) -> Result<u64> {
    let mut n = 0u64;
    for_each_factorization(sgp, alpha, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// Coefficients `c_0..c_N` of `1 / prod (1 - x^{n_i})`, i.e. `c_n = |Z(n)|`.
pub fn denumerant_table(sgp: &SemigroupPresentation, max_n: usize) -> Result<Vec<BigUint>> {
    let gens = sgp.numerical_generators()?;
    ensure_reduced(sgp)?;
    let mut c = vec![BigUint::zero(); max_n + 1];
    c[0] = BigUint::from(1u8);
    for g in gens {
        let g = g as usize;
        for n in g..=max_n {
            let prev = c[n - g].clone();
            c[n] += prev;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mcnugget() -> SemigroupPresentation {
        SemigroupPresentation::numerical(&[6, 9, 20]).unwrap()
    }

    fn exps(set: &FactorizationSet) -> Vec<Vec<u64>> {
        set.iter().map(|f| f.exponents().to_vec()).collect()
    }

    #[test]
    fn membership() {
        let s = mcnugget();
        assert!(!contains(&s, &Element::numerical(11)).unwrap());
        assert!(contains(&s, &Element::numerical(15)).unwrap());
        assert!(contains(&s, &Element::numerical(0)).unwrap());
        assert!(!contains(&s, &Element::numerical(43)).unwrap());
        assert!(contains(&s, &Element::numerical(44)).unwrap());
    }

    #[test]
    fn factorization_sets() {
        let s = mcnugget();
        assert_eq!(exps(&factorizations(&s, &Element::numerical(18)).unwrap()), vec![vec![0, 2, 0], vec![3, 0, 0]]);
        assert_eq!(
            exps(&factorizations(&s, &Element::numerical(60)).unwrap()),
            vec![vec![0, 0, 3], vec![1, 6, 0], vec![4, 4, 0], vec![7, 2, 0], vec![10, 0, 0]]
        );
        assert_eq!(exps(&factorizations(&s, &Element::numerical(0)).unwrap()), vec![vec![0, 0, 0]]);
        assert!(factorizations(&s, &Element::numerical(11)).unwrap().is_empty());
    }

    #[test]
    fn ambient_mismatch() {
        let s = mcnugget();
        assert!(matches!(factorizations(&s, &Element::free(vec![1, 2])), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn affine_and_torsion() {
        let s = SemigroupPresentation::affine(&[&[2, 1], &[1, 1], &[1, 2]]).unwrap();
        let z = factorizations(&s, &Element::free(vec![3, 3])).unwrap();
        assert_eq!(exps(&z), vec![vec![0, 3, 0], vec![1, 0, 1]]);
        for f in z.iter() {
            assert_eq!(evaluate(&s, f.exponents()).unwrap(), Element::free(vec![3, 3]));
        }

        // N + Z/2 with generators (1|0), (1|1): (2|1) = (1|0)+(1|1) only.
        let amb = crate::semigroup::AmbientSpec::new(1, vec![2]).unwrap();
        let s = SemigroupPresentation::new(amb, vec![Element::new(vec![1], vec![0]), Element::new(vec![1], vec![1])])
            .unwrap();
        let z = factorizations(&s, &Element::new(vec![2], vec![1])).unwrap();
        assert_eq!(exps(&z), vec![vec![1, 1]]);
        let z = factorizations(&s, &Element::new(vec![2], vec![0])).unwrap();
        assert_eq!(exps(&z), vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn not_reduced_is_rejected() {
        let s = SemigroupPresentation::affine(&[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(contains(&s, &Element::free(vec![1, 0])), Err(Error::NotReduced(2)));
    }

    #[test]
    fn denumerants() {
        let c = denumerant_table(&mcnugget(), 20).unwrap();
        assert_eq!(c[18], BigUint::from(2u8));
        assert_eq!(c[20], BigUint::from(1u8));
        assert_eq!(c[11], BigUint::zero());
        let c = denumerant_table(&SemigroupPresentation::numerical(&[2, 3]).unwrap(), 6).unwrap();
        assert_eq!(c[6], BigUint::from(2u8));
        let c = denumerant_table(&mcnugget(), 0).unwrap();
        assert_eq!(c, vec![BigUint::from(1u8)]);
        assert_eq!(
            denumerant_table(&SemigroupPresentation::affine(&[&[1, 1]]).unwrap(), 3),
            Err(Error::NotNumerical)
        );
    }
}
