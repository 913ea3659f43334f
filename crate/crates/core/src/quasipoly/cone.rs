//! Translated cones and exact polynomial fits on them.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::linalg;
use super::qp::rational_to_json;
use crate::error::{Error, Result};
use crate::semigroup::{AmbientSpec, Element, SemigroupPresentation};

fn q(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `base + N g_1 + ... + N g_s` with linearly independent free parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatedCone {
    ambient: AmbientSpec,
    base: Element,
    generators: Vec<Element>,
}

impl TranslatedCone {
    pub fn new(ambient: AmbientSpec, base: Element, generators: Vec<Element>) -> Result<Self> {
        ambient.check(&base)?;
        for g in &generators {
            ambient.check(g)?;
        }
        let rows: Vec<Vec<BigRational>> = generators.iter().map(|g| g.free.iter().map(|&x| q(x)).collect()).collect();
        if linalg::rank(&rows) != generators.len() {
            return Err(Error::InvalidArgument("cone generators must be linearly independent".into()));
        }
        Ok(Self { ambient, base, generators })
    }

    /// Cone in `N^d` without torsion, from plain coordinates.
    pub fn free(base: &[u64], generators: &[&[u64]]) -> Result<Self> {
        let amb = AmbientSpec::new(base.len(), Vec::new())?;
        Self::new(amb, Element::free(base.to_vec()), generators.iter().map(|g| Element::free(g.to_vec())).collect())
    }

    pub fn base(&self) -> &Element {
        &self.base
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient(&self) -> &AmbientSpec {
        &self.ambient
    }

    /// `base + sum c_j g_j`.
    pub fn point(&self, c: &[u64]) -> Element {
        self.generators.iter().zip(c).fold(self.base.clone(), |acc, (g, &k)| acc.add_scaled(g, k, &self.ambient))
    }
}

/// The coordinates `c` in `N^s` with `alpha = base + sum c_j g_j`, if any.
/// Solved on the free projection (unique by independence), then checked on torsion.
pub fn cone_coordinates(cone: &TranslatedCone, alpha: &Element) -> Option<Vec<u64>> {
    cone.ambient.check(alpha).ok()?;
    let d = cone.ambient.free_rank;
    let s = cone.dim();
    let a: Vec<Vec<BigRational>> = (0..d).map(|j| (0..s).map(|i| q(cone.generators[i].free[j])).collect()).collect();
    let b: Vec<BigRational> =
        (0..d).map(|j| BigRational::from_integer(BigInt::from(alpha.free[j]) - BigInt::from(cone.base.free[j]))).collect();
    let c = if s == 0 {
        if b.iter().all(Zero::is_zero) { Vec::new() } else { return None }
    } else {
        linalg::solve(&a, &b)?
    };
    let c = c
        .into_iter()
        .map(|x| if x.is_integer() && !x.is_negative() { x.to_integer().to_u64() } else { None })
        .collect::<Option<Vec<u64>>>()?;
    (cone.point(&c) == *alpha).then_some(c)
}

/// Sparse multivariate polynomial with exact rational coefficients, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        assert_eq!(exps.len(), self.vars);
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| acc * num::pow(xi.clone(), k as usize)))
            .sum()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    /// `self(f_1, ..., f_s)` for polynomials `f_j` in a common set of variables.
    pub fn compose(&self, subs: &[Polynomial]) -> Polynomial {
        let vars = subs.first().map_or(0, Polynomial::vars);
        let mut out = Polynomial::zero(vars);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(vars, c.clone());
            for (f, &k) in subs.iter().zip(e) {
                for _ in 0..k {
                    term = term.mul(f);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.iter().sum::<u32>().cmp(&a.iter().sum::<u32>()).then(a.cmp(b)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("x{}", j + 1) } else { format!("x{}^{k}", j + 1) })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    /// `{"e1,e2,...": [num, den]}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key: Vec<String> = e.iter().map(u32::to_string).collect();
            m.serialize_entry(&key.join(","), &rational_to_json(c))?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePolynomial {
    pub cone: TranslatedCone,
    /// In cone coordinates `c_1..c_s`.
    pub poly: Polynomial,
    /// In ambient free coordinates; present when the cone is full-dimensional.
    pub ambient_form: Option<Polynomial>,
}

impl Serialize for ConePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let elem = |e: &Element| -> Value {
            if e.torsion.is_empty() {
                Value::from(e.free.clone())
            } else {
                serde_json::json!({ "free": e.free, "torsion": e.torsion })
            }
        };
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("base", &elem(&self.cone.base))?;
        m.serialize_entry("generators", &self.cone.generators.iter().map(elem).collect::<Vec<_>>())?;
        m.serialize_entry("poly", &self.poly)?;
        if let Some(a) = &self.ambient_form {
            m.serialize_entry("ambient_form", a)?;
        }
        m.end()
    }
}

/// Exponent vectors in `vars` variables of total degree at most `degree`, graded order.
fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(vars, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then(b.cmp(a)));
    out
}

fn grid(vars: usize, g: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out.into_iter().flat_map(|p| (0..=g).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Fits `invariant` restricted to the cone by a polynomial of total degree at
/// most `degree` in cone coordinates, interpolated on the simplex
/// `{c : sum c_j <= degree}` and verified on the whole grid `0 <= c_j <= grid`.
pub fn cone_fit<F>(
    sgp: &SemigroupPresentation,
    cone: &TranslatedCone,
    invariant: F,
    degree: u32,
    grid_size: u64,
) -> Result<ConePolynomial>
where
    F: Fn(&Element) -> Result<Option<BigRational>>,
{
    if cone.ambient() != sgp.ambient() {
        return Err(Error::AmbientMismatch("cone and semigroup ambients differ".into()));
    }
    let s = cone.dim();
    let monos = monomials(s, degree);
    let points = (grid_size + 1).checked_pow(s as u32).unwrap_or(u64::MAX);
    if points < 2 * monos.len() as u64 || grid_size < degree as u64 {
        return Err(Error::InsufficientSamples(format!(
            "grid {grid_size} gives {points} points; degree {degree} needs at least {} and grid >= degree",
            2 * monos.len()
        )));
    }
    let value = |c: &[u64]| -> Result<BigRational> {
        let alpha = cone.point(c);
        invariant(&alpha)?.ok_or_else(|| Error::NoFit(format!("{alpha} is not in the semigroup")))
    };
    let row = |c: &[u64]| -> Vec<BigRational> {
        monos
            .iter()
            .map(|e| e.iter().zip(c).fold(BigRational::one(), |acc, (&k, &x)| acc * num::pow(q(x), k as usize)))
            .collect()
    };

    let nodes: Vec<Vec<u64>> = monos.iter().map(|e| e.iter().map(|&k| k as u64).collect()).collect();
    let a: Vec<Vec<BigRational>> = nodes.iter().map(|c| row(c)).collect();
    let b = nodes.iter().map(|c| value(c)).collect::<Result<Vec<_>>>()?;
    let coeffs = linalg::solve(&a, &b).expect("simplex nodes are unisolvent");
    let mut poly = Polynomial::zero(s);
    for (e, c) in monos.iter().zip(coeffs) {
        poly.add_term(e.clone(), c);
    }

    for c in grid(s, grid_size) {
        let x: Vec<BigRational> = c.iter().map(|&k| q(k)).collect();
        let v = value(&c)?;
        if poly.eval(&x) != v {
            return Err(Error::NoFit(format!("degree {degree} fails at cone point {}", cone.point(&c))));
        }
    }

    let ambient_form = (s == cone.ambient().free_rank && s > 0).then(|| ambient_form(cone, &poly));
    Ok(ConePolynomial { cone: cone.clone(), poly, ambient_form })
}

/// Rewrites `poly(c)` in ambient coordinates via `c = G^{-1} (x - base)`.
fn ambient_form(cone: &TranslatedCone, poly: &Polynomial) -> Polynomial {
    let d = cone.ambient().free_rank;
    // columns are generators
    let g: Vec<Vec<BigRational>> = (0..d).map(|j| cone.generators.iter().map(|gen| q(gen.free[j])).collect()).collect();
    let inv = linalg::inverse(&g).expect("independent generators");
    let subs: Vec<Polynomial> = (0..d)
        .map(|i| {
            let mut f = Polynomial::zero(d);
            let mut shift = BigRational::zero();
            for k in 0..d {
                f.add_term((0..d).map(|j| u32::from(j == k)).collect(), inv[i][k].clone());
                shift += &inv[i][k] * q(cone.base.free[k]);
            }
            f.add_term(vec![0; d], -shift);
            f
        })
        .collect();
    poly.compose(&subs)
}

#[cfg(test)]
mod tests {
    use super::super::qp::int;
    use super::*;

    #[test]
    fn coordinates() {
        let c = TranslatedCone::free(&[0, 0], &[&[2, 1], &[3, 3]]).unwrap();
        assert_eq!(cone_coordinates(&c, &Element::free(vec![5, 4])), Some(vec![1, 1]));
        assert_eq!(cone_coordinates(&c, &Element::free(vec![1, 0])), None);
        assert_eq!(cone_coordinates(&c, &Element::free(vec![0, 0])), Some(vec![0, 0]));
        // rational but not integral: (1, 1) = 1/3 (3,3)
        assert_eq!(cone_coordinates(&c, &Element::free(vec![1, 1])), None);
        let ray = TranslatedCone::free(&[1, 1], &[&[3, 3]]).unwrap();
        assert_eq!(cone_coordinates(&ray, &Element::free(vec![7, 7])), Some(vec![2]));
        assert_eq!(cone_coordinates(&ray, &Element::free(vec![7, 6])), None);
        assert!(TranslatedCone::free(&[0, 0], &[&[1, 1], &[2, 2]]).is_err());
    }

    #[test]
    fn polynomial_algebra() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.mul(&y).add(&Polynomial::constant(2, int(3)));
        assert_eq!(p.eval(&[int(2), int(5)]), int(13));
        assert_eq!(p.total_degree(), 2);
        let shifted = p.compose(&[x.add(&Polynomial::constant(2, int(1))), y.clone()]);
        assert_eq!(shifted.eval(&[int(1), int(5)]), int(13));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"0,0":[3,1],"1,1":[1,1]}"#);
        assert_eq!(monomials(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn constant_invariant() {
        let s = SemigroupPresentation::affine(&[&[2, 1], &[1, 1], &[1, 2]]).unwrap();
        let c = TranslatedCone::free(&[0, 0], &[&[2, 1], &[3, 3]]).unwrap();
        let fit = cone_fit(&s, &c, |_| Ok(Some(int(7))), 0, 3).unwrap();
        assert_eq!(fit.poly, Polynomial::constant(2, int(7)));
        assert_eq!(fit.ambient_form, Some(Polynomial::constant(2, int(7))));
        assert!(matches!(cone_fit(&s, &c, |_| Ok(Some(int(7))), 2, 1), Err(Error::InsufficientSamples(_))));
    }

    #[test]
    fn linear_ambient_form() {
        let s = SemigroupPresentation::affine(&[&[2, 1], &[1, 1], &[1, 2]]).unwrap();
        let c = TranslatedCone::free(&[0, 0], &[&[2, 1], &[3, 3]]).unwrap();
        // invariant x + y
        let fit = cone_fit(&s, &c, |e| Ok(Some(int((e.free[0] + e.free[1]) as i64))), 1, 4).unwrap();
        let a = fit.ambient_form.unwrap();
        assert_eq!(a.coeff(&[1, 0]), int(1));
        assert_eq!(a.coeff(&[0, 1]), int(1));
        assert_eq!(a.coeff(&[0, 0]), int(0));
        assert_eq!(fit.poly.coeff(&[1, 0]), int(3));
        assert_eq!(fit.poly.coeff(&[0, 1]), int(6));
    }
}
