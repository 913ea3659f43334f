//! Distances between factorizations and the catenary degree.
//!
//! The catenary degree of an element is the bottleneck weight of a minimum
//! spanning tree on its factorization set: add pairwise edges in order of
//! increasing distance and stop once the graph is connected.

use crate::error::{Error, Result};
use crate::factor::{factorizations, Factorization, FactorizationSet};
use crate::semigroup::{Element, SemigroupPresentation};

/// `max(|a - gcd(a, b)|, |b - gcd(a, b)|)` with the componentwise-min gcd.
pub fn distance(a: &Factorization, b: &Factorization) -> Result<u64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(exponent_distance(a.exponents(), b.exponents()))
}

fn exponent_distance(a: &[u64], b: &[u64]) -> u64 {
    let (mut da, mut db) = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b) {
        let g = x.min(y);
        da += x - g;
        db += y - g;
    }
    da.max(db)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Catenary degree of an already enumerated factorization set.
pub fn catenary_of_set(set: &FactorizationSet) -> u64 {
    let z = &set.factorizations;
    let n = z.len();
    if n <= 1 {
        return 0;
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((exponent_distance(z[i].exponents(), z[j].exponents()), i as u32, j as u32));
        }
    }
    edges.sort_unstable();
    let mut uf = UnionFind::new(n);
    let mut components = n;
    for (w, i, j) in edges {
        if uf.union(i as usize, j as usize) {
            components -= 1;
            if components == 1 {
                return w;
            }
        }
    }
    unreachable!("complete graph is connected")
}

pub fn catenary_degree(sgp: &SemigroupPresentation, alpha: &Element) -> Result<u64> {
    let z = factorizations(sgp, alpha)?;
    if z.is_empty() {
        return Err(Error::NotInSemigroup(alpha.to_string()));
    }
    Ok(catenary_of_set(&z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[u64]) -> Factorization {
        Factorization::new(v.to_vec())
    }

    #[test]
    fn distances() {
        assert_eq!(distance(&f(&[3, 0, 0]), &f(&[0, 2, 0])).unwrap(), 3);
        assert_eq!(distance(&f(&[4, 4, 0]), &f(&[4, 4, 0])).unwrap(), 0);
        assert_eq!(distance(&f(&[1, 6, 0]), &f(&[4, 4, 0])).unwrap(), 3);
        assert_eq!(distance(&f(&[1, 2]), &f(&[1, 2, 3])), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn catenary_examples() {
        let s = SemigroupPresentation::numerical(&[6, 9, 20]).unwrap();
        assert_eq!(catenary_degree(&s, &Element::numerical(18)).unwrap(), 3);
        assert_eq!(catenary_degree(&s, &Element::numerical(29)).unwrap(), 0);
        assert_eq!(catenary_degree(&s, &Element::numerical(0)).unwrap(), 0);
        // Z(60) = {(0,0,3),(1,6,0),(4,4,0),(7,2,0),(10,0,0)}: the (0,0,3) node
        // is nearest to (1,6,0) at distance 7.
        assert_eq!(catenary_degree(&s, &Element::numerical(60)).unwrap(), 7);
        assert!(catenary_degree(&s, &Element::numerical(43)).is_err());
    }
}
