use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{for_each_factorization, FactorizationSet};
use crate::semigroup::{Element, SemigroupPresentation};

/// Strictly increasing factorization lengths of an element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LengthSet(Vec<u64>);

impl LengthSet {
    /// Sorts and deduplicates.
    pub fn from_lengths(mut lengths: Vec<u64>) -> Self {
        lengths.sort_unstable();
        lengths.dedup();
        LengthSet(lengths)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn delta(&self) -> DeltaSet {
        DeltaSet::from_gaps(self.0.windows(2).map(|w| w[1] - w[0]).collect())
    }
}

/// Sorted set of successive length differences.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DeltaSet(Vec<u64>);

impl DeltaSet {
    pub fn from_gaps(gaps: Vec<u64>) -> Self {
        let set: BTreeSet<u64> = gaps.into_iter().collect();
        DeltaSet(set.into_iter().collect())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: u64) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn union_with(&mut self, other: &DeltaSet) {
        let set: BTreeSet<u64> = self.0.iter().chain(other.0.iter()).copied().collect();
        self.0 = set.into_iter().collect();
    }
}

impl FromIterator<u64> for DeltaSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        DeltaSet::from_gaps(iter.into_iter().collect())
    }
}

pub fn lengths_of(set: &FactorizationSet) -> LengthSet {
    LengthSet::from_lengths(set.iter().map(|f| f.length()).collect())
}

pub fn length_set(sgp: &SemigroupPresentation, alpha: &Element) -> Result<LengthSet> {
    let mut lengths = BTreeSet::new();
    for_each_factorization(sgp, alpha, |a| {
        lengths.insert(a.iter().sum::<u64>());
        ControlFlow::Continue(())
    })?;
    if lengths.is_empty() {
        return Err(Error::NotInSemigroup(alpha.to_string()));
    }
    Ok(LengthSet(lengths.into_iter().collect()))
}

pub fn delta_of_element(sgp: &SemigroupPresentation, alpha: &Element) -> Result<DeltaSet> {
    Ok(length_set(sgp, alpha)?.delta())
}

pub fn max_length(sgp: &SemigroupPresentation, alpha: &Element) -> Result<u64> {
    Ok(length_set(sgp, alpha)?.max().expect("nonempty"))
}

pub fn min_length(sgp: &SemigroupPresentation, alpha: &Element) -> Result<u64> {
    Ok(length_set(sgp, alpha)?.min().expect("nonempty"))
}

/// Length sets of every element in the box `[0, hi]` (free coordinates) times
/// all torsion residues, computed by the recurrence
/// `L(a) = union over generators g of (L(a - g) + 1)` on bitsets.
///
/// Much faster than enumerating factorizations when only length data is
/// needed; the recurrence is an independent route to the same sets.
#[derive(Debug, Clone)]
pub struct LengthTable {
    hi: Vec<u64>,
    orders: Vec<u64>,
    words: usize,
    bits: Vec<u64>,
}

impl LengthTable {
    pub fn build(sgp: &SemigroupPresentation, hi: &[u64]) -> Result<Self> {
        let amb = sgp.ambient();
        if hi.len() != amb.free_rank {
            return Err(Error::AmbientMismatch(format!("box corner has {} coordinates", hi.len())));
        }
        if let Some(i) = sgp.generators().iter().position(|g| g.free.iter().all(|&x| x == 0)) {
            return Err(Error::NotReduced(i + 1));
        }
        let min_weight = sgp.generators().iter().map(|g| g.free.iter().sum::<u64>()).min().unwrap_or(1);
        let max_len = hi.iter().sum::<u64>() / min_weight;
        let words = (max_len as usize + 1).div_ceil(64);
        let orders = amb.torsion_orders.clone();
        let tors_count: usize = orders.iter().product::<u64>() as usize;
        let free_count: usize = hi.iter().map(|&h| h as usize + 1).product();
        let total = free_count * tors_count;
        let mut table = LengthTable { hi: hi.to_vec(), orders, words, bits: vec![0; total * words] };

        let gens = sgp.generators();
        let mut coords = vec![0u64; hi.len()];
        let mut tors = vec![0u64; table.orders.len()];
        let mut scratch = vec![0u64; words];
        for idx in 0..total {
            table.decode(idx, &mut coords, &mut tors);
            if idx == 0 {
                table.bits[0] |= 1;
                continue;
            }
            scratch.iter_mut().for_each(|w| *w = 0);
            let mut any = false;
            for g in gens {
                if coords.iter().zip(&g.free).any(|(&c, &x)| c < x) {
                    continue;
                }
                let prev = table.encode_offset(&coords, &tors, g);
                let src = &table.bits[prev * words..(prev + 1) * words];
                // shift left by one bit: length + 1
                let mut carry = 0u64;
                for (s, &w) in scratch.iter_mut().zip(src) {
                    *s |= (w << 1) | carry;
                    carry = w >> 63;
                }
                any |= src.iter().any(|&w| w != 0);
            }
            if any {
                table.bits[idx * words..(idx + 1) * words].copy_from_slice(&scratch);
            }
        }
        Ok(table)
    }

    fn decode(&self, mut idx: usize, coords: &mut [u64], tors: &mut [u64]) {
        for j in (0..tors.len()).rev() {
            let o = self.orders[j] as usize;
            tors[j] = (idx % o) as u64;
            idx /= o;
        }
        for j in (0..coords.len()).rev() {
            let n = self.hi[j] as usize + 1;
            coords[j] = (idx % n) as u64;
            idx /= n;
        }
    }

    fn index(&self, coords: &[u64], tors: &[u64]) -> usize {
        let mut idx = 0usize;
        for (j, &c) in coords.iter().enumerate() {
            idx = idx * (self.hi[j] as usize + 1) + c as usize;
        }
        for (j, &t) in tors.iter().enumerate() {
            idx = idx * self.orders[j] as usize + t as usize;
        }
        idx
    }

    fn encode_offset(&self, coords: &[u64], tors: &[u64], g: &Element) -> usize {
        let c: Vec<u64> = coords.iter().zip(&g.free).map(|(a, b)| a - b).collect();
        let t: Vec<u64> = tors
            .iter()
            .zip(&g.torsion)
            .zip(&self.orders)
            .map(|((a, b), o)| (a + o - b % o) % o)
            .collect();
        self.index(&c, &t)
    }

    /// Length set of `alpha`, `None` when `alpha` is outside the box or not in the semigroup.
    pub fn lengths(&self, alpha: &Element) -> Option<LengthSet> {
        if alpha.free.len() != self.hi.len()
            || alpha.torsion.len() != self.orders.len()
            || alpha.free.iter().zip(&self.hi).any(|(a, h)| a > h)
            || alpha.torsion.iter().zip(&self.orders).any(|(t, o)| t >= o)
        {
            return None;
        }
        let idx = self.index(&alpha.free, &alpha.torsion);
        let src = &self.bits[idx * self.words..(idx + 1) * self.words];
        let mut out = Vec::new();
        for (w, &word) in src.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as u64;
                out.push(w as u64 * 64 + b);
                bits &= bits - 1;
            }
        }
        (!out.is_empty()).then_some(LengthSet(out))
    }
}
