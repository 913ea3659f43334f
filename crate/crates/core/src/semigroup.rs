//! Semigroup presentations inside an ambient group `N^d (+) Z/d_1 (+) ... (+) Z/d_m`.
//!
//! A presentation is an ordered list of generators. All factorization data
//! (exponent vectors, canonical orderings) is indexed by that order, so the
//! order is part of the identity of a presentation.

use std::fmt;
use std::str::FromStr;

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ambient group: free rank `d >= 1` plus a (possibly empty) list of torsion orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbientSpec {
    pub free_rank: usize,
    pub torsion_orders: Vec<u64>,
}

impl AmbientSpec {
    pub fn new(free_rank: usize, torsion_orders: Vec<u64>) -> Result<Self> {
        if free_rank == 0 {
            return Err(Error::InvalidSemigroup("free rank must be at least 1".into()));
        }
        if let Some(o) = torsion_orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidSemigroup(format!("torsion order {o} is below 2")));
        }
        Ok(Self { free_rank, torsion_orders })
    }

    pub fn numerical() -> Self {
        Self { free_rank: 1, torsion_orders: Vec::new() }
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion_orders.is_empty()
    }

    pub fn zero(&self) -> Element {
        Element {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_orders.len()],
        }
    }

    /// Checks component counts and torsion reduction.
    pub fn check(&self, e: &Element) -> Result<()> {
        if e.free.len() != self.free_rank || e.torsion.len() != self.torsion_orders.len() {
            return Err(Error::AmbientMismatch(format!(
                "{e} has {} free / {} torsion components, ambient has {} / {}",
                e.free.len(),
                e.torsion.len(),
                self.free_rank,
                self.torsion_orders.len()
            )));
        }
        if e.torsion.iter().zip(&self.torsion_orders).any(|(t, o)| t >= o) {
            return Err(Error::AmbientMismatch(format!("{e} has an unreduced torsion residue")));
        }
        Ok(())
    }
}

/// An element of the ambient group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub free: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<u64>,
}

impl Element {
    pub fn new(free: Vec<u64>, torsion: Vec<u64>) -> Self {
        Self { free, torsion }
    }

    pub fn free(free: Vec<u64>) -> Self {
        Self { free, torsion: Vec::new() }
    }

    pub fn numerical(n: u64) -> Self {
        Self { free: vec![n], torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&t| t == 0)
    }

    /// The free-part projection.
    pub fn projection(&self) -> &[u64] {
        &self.free
    }

    /// Single coordinate of a numerical element.
    pub fn as_numerical(&self) -> Option<u64> {
        match (self.free.as_slice(), self.torsion.is_empty()) {
            ([n], true) => Some(*n),
            _ => None,
        }
    }

    pub fn add(&self, other: &Element, ambient: &AmbientSpec) -> Element {
        self.add_scaled(other, 1, ambient)
    }

    /// `self + k * other`, torsion reduced modulo the ambient orders.
    pub fn add_scaled(&self, other: &Element, k: u64, ambient: &AmbientSpec) -> Element {
        let free = self.free.iter().zip(&other.free).map(|(a, b)| a + k * b).collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&ambient.torsion_orders)
            .map(|((a, b), o)| (a + (k % o) * (b % o)) % o)
            .collect();
        Element { free, torsion }
    }

    pub fn scale(&self, k: u64, ambient: &AmbientSpec) -> Element {
        ambient.zero().add_scaled(self, k, ambient)
    }

    /// `self - other` when the free part stays nonnegative.
    pub fn checked_sub(&self, other: &Element, ambient: &AmbientSpec) -> Option<Element> {
        let free = self
            .free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&ambient.torsion_orders)
            .map(|((a, b), o)| (a + o - b % o) % o)
            .collect();
        Some(Element { free, torsion })
    }
}

/// Canonical text form: free coordinates comma-separated, torsion after `|`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.free))?;
        if !self.torsion.is_empty() {
            write!(f, "|{}", join(&self.torsion))?;
        }
        Ok(())
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_list = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad element coordinate {x:?} in {s:?}")))
                })
                .collect()
        };
        let (free, torsion) = match s.split_once('|') {
            Some((f, t)) => (parse_list(f)?, parse_list(t)?),
            None => (parse_list(s)?, Vec::new()),
        };
        Ok(Element { free, torsion })
    }
}

/// A single presentation defect reported by [`SemigroupPresentation::validate`].
/// Generator indices are 1-based, matching the usual `alpha_1..alpha_r` numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotReduced(usize),
    NotMinimal(usize),
    NumericalGcdNotOne,
    NumericalNotIncreasing,
    BadTorsionResidue(usize),
}

impl Violation {
    /// Whether the violation blocks computation. Minimality defects can be
    /// downgraded with `permissive`; a gcd other than 1 is always a warning.
    pub fn is_error(&self, permissive: bool) -> bool {
        match self {
            Violation::NotMinimal(_) => !permissive,
            Violation::NumericalGcdNotOne => false,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, v: &Violation) -> bool {
        self.violations.contains(v)
    }

    pub fn errors(&self, permissive: bool) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.is_error(permissive))
    }

    pub fn warnings(&self, permissive: bool) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| !v.is_error(permissive))
    }
}

/// A finitely generated subsemigroup of the ambient group, given by an ordered
/// generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupPresentation {
    ambient: AmbientSpec,
    generators: Vec<Element>,
}

impl SemigroupPresentation {
    /// Structural construction: component counts must match the ambient.
    /// Semantic defects are left to [`validate`](Self::validate).
    pub fn new(ambient: AmbientSpec, generators: Vec<Element>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSemigroup("at least one generator is required".into()));
        }
        for g in &generators {
            if g.free.len() != ambient.free_rank || g.torsion.len() != ambient.torsion_orders.len() {
                return Err(Error::InvalidSemigroup(format!(
                    "generator {g} does not match the ambient component counts"
                )));
            }
        }
        Ok(Self { ambient, generators })
    }

    pub fn numerical(gens: &[u64]) -> Result<Self> {
        Self::new(AmbientSpec::numerical(), gens.iter().map(|&n| Element::numerical(n)).collect())
    }

    pub fn affine(gens: &[&[u64]]) -> Result<Self> {
        let d = gens.first().map_or(0, |g| g.len());
        Self::new(
            AmbientSpec::new(d, Vec::new())?,
            gens.iter().map(|g| Element::free(g.to_vec())).collect(),
        )
    }

    /// Validates and fails on blocking violations. Returns the report so
    /// callers can surface warnings.
    pub fn checked(self, permissive: bool) -> Result<(Self, ValidationReport)> {
        let report = self.validate();
        if let Some(v) = report.errors(permissive).next() {
            return Err(Error::InvalidSemigroup(format!("{v:?}")));
        }
        Ok((self, report))
    }

    pub fn ambient(&self) -> &AmbientSpec {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_numerical(&self) -> bool {
        self.ambient.free_rank == 1 && !self.ambient.has_torsion()
    }

    /// Generator values of a numerical semigroup.
    pub fn numerical_generators(&self) -> Result<Vec<u64>> {
        if !self.is_numerical() {
            return Err(Error::NotNumerical);
        }
        Ok(self.generators.iter().map(|g| g.free[0]).collect())
    }

    pub fn check_element(&self, alpha: &Element) -> Result<()> {
        self.ambient.check(alpha)
    }

    /// Sub-presentation on a subset of generator indices (0-based). The result
    /// need not be minimal; enumeration does not require it.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let gens = indices
            .iter()
            .map(|&i| self.generators.get(i).cloned().ok_or(Error::BadGeneratorIndex(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ambient: self.ambient.clone(), generators: gens })
    }

    /// 0-based indices of the generators with the given numerical values.
    pub fn subset_from_values(&self, values: &[u64]) -> Result<Vec<usize>> {
        let gens = self.numerical_generators()?;
        let mut idx = values
            .iter()
            .map(|v| {
                gens.iter()
                    .position(|g| g == v)
                    .ok_or_else(|| Error::InvalidArgument(format!("{v} is not a generator")))
            })
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(idx)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.torsion.iter().zip(&self.ambient.torsion_orders).any(|(t, o)| t >= o) {
                violations.push(Violation::BadTorsionResidue(i + 1));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.free.iter().all(|&x| x == 0) {
                violations.push(Violation::NotReduced(i + 1));
            }
        }
        if self.is_numerical() {
            let vals: Vec<u64> = self.generators.iter().map(|g| g.free[0]).collect();
            if vals.windows(2).any(|w| w[0] >= w[1]) {
                violations.push(Violation::NumericalNotIncreasing);
            }
            if vals.iter().fold(0u64, |acc, &v| acc.gcd(&v)) != 1 {
                violations.push(Violation::NumericalGcdNotOne);
            }
        }
        // Minimality needs bounded enumeration, which needs the checks above to pass.
        if violations
            .iter()
            .all(|v| matches!(v, Violation::NumericalGcdNotOne | Violation::NumericalNotIncreasing))
        {
            if let Some(i) = self.first_redundant_generator() {
                violations.push(Violation::NotMinimal(i + 1));
            }
        }
        violations.sort_by_key(|v| match v {
            Violation::BadTorsionResidue(_) => 0,
            Violation::NotReduced(_) => 1,
            Violation::NumericalNotIncreasing => 2,
            Violation::NumericalGcdNotOne => 3,
            Violation::NotMinimal(_) => 4,
        });
        ValidationReport { violations }
    }

    fn first_redundant_generator(&self) -> Option<usize> {
        if self.generators.len() < 2 {
            return None;
        }
        (0..self.generators.len()).find(|&i| {
            let others: Vec<usize> = (0..self.generators.len()).filter(|&j| j != i).collect();
            let sub = self.restrict(&others).expect("nonempty subset");
            crate::factor::contains(&sub, &self.generators[i]).unwrap_or(false)
        })
    }

    /// Canonical JSON document (stable key order, compact).
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&SemigroupDoc::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SemigroupDoc = parse_doc(text)?;
        doc.into_presentation()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NumericalDoc {
    numerical: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    free: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    torsion: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AffineDoc {
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
    generators: Vec<GeneratorDoc>,
}

/// The two accepted shapes of a semigroup input document.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum SemigroupDoc {
    Numerical(NumericalDoc),
    Affine(AffineDoc),
}

fn parse_doc(text: &str) -> Result<SemigroupDoc> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let is_numerical = value.as_object().is_some_and(|o| o.contains_key("numerical"));
    let doc = if is_numerical {
        SemigroupDoc::Numerical(serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?)
    } else {
        SemigroupDoc::Affine(serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?)
    };
    Ok(doc)
}

impl SemigroupDoc {
    fn into_presentation(self) -> Result<SemigroupPresentation> {
        match self {
            SemigroupDoc::Numerical(d) => SemigroupPresentation::numerical(&d.numerical),
            SemigroupDoc::Affine(d) => {
                let ambient = AmbientSpec::new(d.free_rank, d.torsion)?;
                let m = ambient.torsion_orders.len();
                let gens = d
                    .generators
                    .into_iter()
                    .map(|g| Element::new(g.free, g.torsion.unwrap_or_else(|| vec![0; m])))
                    .collect();
                SemigroupPresentation::new(ambient, gens)
            }
        }
    }
}

impl From<&SemigroupPresentation> for SemigroupDoc {
    fn from(s: &SemigroupPresentation) -> Self {
        if s.is_numerical() {
            SemigroupDoc::Numerical(NumericalDoc {
                numerical: s.generators.iter().map(|g| g.free[0]).collect(),
            })
        } else {
            SemigroupDoc::Affine(AffineDoc {
                free_rank: s.ambient.free_rank,
                torsion: s.ambient.torsion_orders.clone(),
                generators: s
                    .generators
                    .iter()
                    .map(|g| GeneratorDoc {
                        free: g.free.clone(),
                        torsion: (!g.torsion.is_empty()).then(|| g.torsion.clone()),
                    })
                    .collect(),
            })
        }
    }
}
