//! Exact rational linear algebra by Gaussian elimination.

use num::{BigRational, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let top = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&top) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// The unique solution `x` of `a x = b`, where `a` has full column rank
/// (possibly more rows than columns). `None` if inconsistent or rank deficient.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

pub fn inverse(a: &[Vec<BigRational>]) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row space grown one vector at a time.
#[derive(Debug, Clone, Default)]
pub struct IncrementalBasis {
    // (pivot column, reduced row); pivot entries are 1
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = v;
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    #[test]
    fn solves_and_inverts() {
        let a = mat(&[&[2, 3], &[1, 3]]);
        assert_eq!(solve(&a, &[q(5, 1), q(4, 1)]).unwrap(), vec![q(1, 1), q(1, 1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1, 1), q(-1, 1)], vec![q(-1, 3), q(2, 3)]]);
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
        // overdetermined, consistent and inconsistent
        let tall = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&tall, &[q(1, 1), q(2, 1), q(3, 1)]).unwrap(), vec![q(1, 1), q(2, 1)]);
        assert!(solve(&tall, &[q(1, 1), q(2, 1), q(4, 1)]).is_none());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        let mut b = IncrementalBasis::new();
        assert!(b.insert(vec![q(1, 1), q(2, 1), q(3, 1)]));
        assert!(!b.insert(vec![q(2, 1), q(4, 1), q(6, 1)]));
        assert!(b.insert(vec![q(0, 1), q(1, 1), q(1, 1)]));
        assert!(!b.insert(vec![q(1, 1), q(3, 1), q(4, 1)]));
        assert_eq!(b.rank(), 2);
    }
}
