//! Deliberately naive reference implementations.
//!
//! Nothing here calls into the production enumeration, length tables, Apéry
//! machinery or union-find; agreement between the two is meant to be evidence.
//! Performance is not a goal.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::{Factorization, FactorizationSet};
use crate::invariants::OmegaResult;
use crate::semigroup::{Element, SemigroupPresentation};

/// Free-part sum `sum a_i alpha_i` with torsion reduced, written out by hand.
fn combine(sgp: &SemigroupPresentation, a: &[u64]) -> Element {
    let amb = sgp.ambient();
    let mut free = vec![0u64; amb.free_rank];
    let mut tors = vec![0u64; amb.torsion_orders.len()];
    for (g, &k) in sgp.generators().iter().zip(a) {
        for (f, x) in free.iter_mut().zip(&g.free) {
            *f += k * x;
        }
        for ((t, x), o) in tors.iter_mut().zip(&g.torsion).zip(&amb.torsion_orders) {
            *t = (*t + k % o * x) % o;
        }
    }
    Element::new(free, tors)
}

/// Box enumeration: `0 <= a_i <= min_j alpha_j / alpha_{i,j}` for every
/// generator but the last, whose exponent is then read off by division.
/// Results come out in ascending lexicographic order.
pub fn naive_factorizations(sgp: &SemigroupPresentation, alpha: &Element) -> FactorizationSet {
    let gens = sgp.generators();
    let r = gens.len();
    let bound = |g: &Element| -> u64 {
        g.free.iter().zip(&alpha.free).filter(|(&c, _)| c > 0).map(|(&c, &x)| x / c).min().unwrap_or(0)
    };
    let bounds: Vec<u64> = gens.iter().map(bound).collect();
    let last = &gens[r - 1];
    let mut out = Vec::new();
    let mut a = vec![0u64; r];
    'outer: loop {
        // the last exponent: whatever closes the first coordinate it touches
        let partial = combine(sgp, &a);
        let fits = partial.free.iter().zip(&alpha.free).all(|(p, x)| p <= x);
        if fits {
            let j = last.free.iter().position(|&c| c > 0).expect("reduced");
            let k = (alpha.free[j] - partial.free[j]) / last.free[j];
            if k <= bounds[r - 1] {
                a[r - 1] = k;
                if combine(sgp, &a) == *alpha {
                    out.push(Factorization::new(a.clone()));
                }
                a[r - 1] = 0;
            }
        }
        let mut i = r - 1;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            a[i] += 1;
            if a[i] <= bounds[i] {
                break;
            }
            a[i] = 0;
        }
    }
    FactorizationSet { element: alpha.clone(), factorizations: out }
}

fn dist(a: &[u64], b: &[u64]) -> u64 {
    let la: u64 = a.iter().zip(b).map(|(x, y)| x.saturating_sub(*y)).sum();
    let lb: u64 = b.iter().zip(a).map(|(x, y)| x.saturating_sub(*y)).sum();
    la.max(lb)
}

/// The least `N` for which the graph on `Z(alpha)` with edges of distance at
/// most `N` is connected, found by trying `N = 0, 1, 2, ...`.
pub fn catenary_oracle(sgp: &SemigroupPresentation, alpha: &Element) -> Result<u64> {
    let z = naive_factorizations(sgp, alpha);
    if z.is_empty() {
        return Err(Error::NotInSemigroup(alpha.to_string()));
    }
    let pts: Vec<&[u64]> = z.iter().map(|f| f.exponents()).collect();
    let connected = |n: u64| -> bool {
        let mut seen = vec![false; pts.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..pts.len() {
                if !seen[j] && dist(pts[i], pts[j]) <= n {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    Ok((0..).find(|&n| connected(n)).expect("distances are finite"))
}

/// Membership by naive enumeration, with a plain sieve for numerical semigroups.
struct Membership<'a> {
    sgp: &'a SemigroupPresentation,
    sieve: Option<Vec<bool>>,
}

impl<'a> Membership<'a> {
    fn new(sgp: &'a SemigroupPresentation, upto: u64) -> Self {
        let sieve = sgp.numerical_generators().ok().map(|gens| {
            let mut s = vec![false; upto as usize + 1];
            s[0] = true;
            for n in 0..=upto as usize {
                if s[n] {
                    for &g in &gens {
                        if n + g as usize <= upto as usize {
                            s[n + g as usize] = true;
                        }
                    }
                }
            }
            s
        });
        Self { sgp, sieve }
    }

    fn contains(&self, e: &Element) -> bool {
        match &self.sieve {
            Some(s) => s[e.free[0] as usize],
            None => !naive_factorizations(self.sgp, e).is_empty(),
        }
    }
}

/// All vectors in `N^r` of total length at most `cap`.
fn vectors_up_to(r: usize, cap: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for v in out {
            let used: u64 = v.iter().sum();
            for k in 0..=cap - used {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Number of vectors the bullet oracle would enumerate: `C(cap + r, r)`.
pub fn bullet_search_size(r: usize, cap: u64) -> u128 {
    (1..=r as u128).fold(1u128, |acc, i| acc * (cap as u128 + i) / i)
}

/// Omega from the definition: enumerate every `b` with `|b| <= cap`, keep the
/// bullets (`sum b_i alpha_i - alpha` in the semigroup), and take the longest
/// bullet not dominating another. Exact when every vector of length `cap` is
/// dominated by a kept minimal bullet.
pub fn bullet_oracle(sgp: &SemigroupPresentation, alpha: &Element, cap: u64) -> Result<OmegaResult> {
    if naive_factorizations(sgp, alpha).is_empty() {
        return Err(Error::NotInSemigroup(alpha.to_string()));
    }
    if alpha.is_zero() {
        return Ok(OmegaResult { value: 0, exact: true });
    }
    let amb = sgp.ambient();
    let r = sgp.rank();
    let top = sgp.generators().iter().map(|g| g.free[0]).max().unwrap_or(0) * cap;
    let member = Membership::new(sgp, top);

    let mut bullets: Vec<Vec<u64>> = vectors_up_to(r, cap)
        .into_iter()
        .filter(|b| combine(sgp, b).checked_sub(alpha, amb).is_some_and(|d| member.contains(&d)))
        .collect();
    bullets.sort_by_key(|b| b.iter().sum::<u64>());

    let dominates = |b: &[u64], m: &[u64]| b.iter().zip(m).all(|(x, y)| x >= y);
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for b in bullets {
        if !minimal.iter().any(|m| dominates(&b, m)) {
            minimal.push(b);
        }
    }
    let value = minimal.iter().map(|m| m.iter().sum::<u64>()).max().unwrap_or(0);
    let exact = vectors_up_to(r, cap)
        .into_iter()
        .filter(|v| v.iter().sum::<u64>() == cap)
        .all(|v| minimal.iter().any(|m| dominates(&v, m)));
    Ok(OmegaResult { value, exact })
}

/// A cap at which the bullet search of a numerical-semigroup element must
/// close: every vector of that length sums past `n + F`, so it is a bullet.
pub fn closing_cap(sgp: &SemigroupPresentation, n: u64) -> Result<u64> {
    let gens = sgp.numerical_generators()?;
    let f = frobenius_naive(&gens);
    Ok(((n as i64 + f + 1).max(0) as u64).div_ceil(gens[0]).max(1))
}

/// Largest integer outside the semigroup, by scanning for a run of `n_1` members.
pub fn frobenius_naive(gens: &[u64]) -> i64 {
    let n1 = gens[0] as usize;
    let mut member = vec![true];
    let mut run = 1usize;
    let mut n = 0usize;
    while run < n1 {
        n += 1;
        let m = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
        member.push(m);
        run = if m { run + 1 } else { 0 };
    }
    n as i64 - n1 as i64
}

/// Seeded corpus of numerical semigroups with `2..=max_rank` minimal
/// generators drawn from `2..=max_generator`, gcd 1.
pub fn random_numerical_semigroups(
    seed: u64,
    count: usize,
    max_rank: usize,
    max_generator: u64,
) -> Vec<SemigroupPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<u64> = (2..=max_generator).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(2..=max_rank);
        let mut gens: Vec<u64> = pool.choose_multiple(&mut rng, r).copied().collect();
        gens.sort_unstable();
        if let Ok(s) = SemigroupPresentation::numerical(&gens) {
            if s.validate().is_empty() {
                out.push(s);
            }
        }
    }
    out
}
