//! Per-element invariant tables over a numerical range or an affine box.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::catenary::catenary_of_set;
use super::lengths::{DeltaSet, LengthSet, LengthTable};
use super::omega::{omega_bounded, OmegaContext};
use crate::error::{Error, Result};
use crate::factor::factorizations;
use crate::parallel::{self, Execution};
use crate::semigroup::{Element, SemigroupPresentation};

/// A selectable scan column. `Omega` also fills `omega_exact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Column {
    ZCount,
    Lengths,
    Delta,
    MaxLen,
    MinLen,
    Omega,
    Catenary,
}

impl Column {
    pub const ALL: [Column; 7] = [
        Column::ZCount,
        Column::Lengths,
        Column::Delta,
        Column::MaxLen,
        Column::MinLen,
        Column::Omega,
        Column::Catenary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::ZCount => "z_count",
            Column::Lengths => "lengths",
            Column::Delta => "delta",
            Column::MaxLen => "max_len",
            Column::MinLen => "min_len",
            Column::Omega => "omega",
            Column::Catenary => "catenary",
        }
    }

    fn needs_factorizations(self) -> bool {
        matches!(self, Column::ZCount | Column::Catenary)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .or(match s {
                "z" | "zcount" => Some(Column::ZCount),
                "max" | "maxlen" => Some(Column::MaxLen),
                "min" | "minlen" => Some(Column::MinLen),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown invariant column `{s}`")))
    }
}

/// Sorted, deduplicated column selection.
pub fn parse_columns(list: &str) -> Result<Vec<Column>> {
    let mut cols = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<Vec<Column>>>()?;
    cols.sort_unstable();
    cols.dedup();
    if cols.is_empty() {
        return Err(Error::InvalidArgument("no invariant columns selected".into()));
    }
    Ok(cols)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanDomain {
    /// `lo..=hi` in a numerical semigroup.
    Range { lo: u64, hi: u64 },
    /// Free coordinates in `lo..=hi` componentwise, with every torsion residue.
    Box { lo: Vec<u64>, hi: Vec<u64> },
}

impl ScanDomain {
    fn corners(&self, sgp: &SemigroupPresentation) -> Result<(Vec<u64>, Vec<u64>)> {
        let (lo, hi) = match self {
            ScanDomain::Range { lo, hi } => {
                if sgp.ambient().free_rank != 1 {
                    return Err(Error::AmbientMismatch("a range needs free rank 1; use a box".into()));
                }
                (vec![*lo], vec![*hi])
            }
            ScanDomain::Box { lo, hi } => {
                let d = sgp.ambient().free_rank;
                if lo.len() != d || hi.len() != d {
                    return Err(Error::AmbientMismatch(format!("box corners must have {d} coordinates")));
                }
                (lo.clone(), hi.clone())
            }
        };
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::EmptyRange);
        }
        Ok((lo, hi))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub execution: Execution,
    /// Length cap for the bullet search used for omega outside numerical semigroups.
    pub omega_cap: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { execution: Execution::default(), omega_cap: 12 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub element: Element,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<LengthSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_len: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_len: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catenary: Option<u64>,
}

impl ScanRecord {
    pub fn new(element: Element) -> Self {
        Self { element, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanTable {
    pub columns: Vec<Column>,
    pub records: Vec<ScanRecord>,
}

impl ScanTable {
    pub fn get(&self, alpha: &Element) -> Option<&ScanRecord> {
        self.records.binary_search_by(|r| r.element.cmp(alpha)).ok().map(|i| &self.records[i])
    }

    /// Union of the `delta` column.
    pub fn delta_union(&self) -> DeltaSet {
        let mut out = DeltaSet::default();
        for d in self.records.iter().filter_map(|r| r.delta.as_ref()) {
            out.union_with(d);
        }
        out
    }
}

/// All vectors between `lo` and `hi` (inclusive) in lexicographic order.
fn odometer(lo: &[u64], hi: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut j = cur.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            cur[j] += 1;
            if cur[j] <= hi[j] {
                break;
            }
            cur[j] = lo[j];
        }
    }
}

fn box_elements(sgp: &SemigroupPresentation, lo: &[u64], hi: &[u64]) -> Vec<Element> {
    let orders = &sgp.ambient().torsion_orders;
    let residues = odometer(&vec![0; orders.len()], &orders.iter().map(|o| o - 1).collect::<Vec<_>>());
    odometer(lo, hi)
        .into_iter()
        .flat_map(|f| residues.iter().map(move |t| Element::new(f.clone(), t.clone())))
        .collect()
}

/// Evaluates the selected columns on every semigroup element of `domain`,
/// in ascending element order. Non-members are omitted.
pub fn scan(
    sgp: &SemigroupPresentation,
    domain: &ScanDomain,
    columns: &[Column],
    options: ScanOptions,
) -> Result<ScanTable> {
    let (lo, hi) = domain.corners(sgp)?;
    let mut columns = columns.to_vec();
    columns.sort_unstable();
    columns.dedup();

    let table = LengthTable::build(sgp, &hi)?;
    let members: Vec<(Element, LengthSet)> = box_elements(sgp, &lo, &hi)
        .into_iter()
        .filter_map(|e| table.lengths(&e).map(|l| (e, l)))
        .collect();

    let want = |c: Column| columns.contains(&c);
    let omega_ctx = if want(Column::Omega) && sgp.is_numerical() {
        Some(OmegaContext::new(sgp)?.with_membership_upto(hi[0]))
    } else {
        None
    };
    let need_z = columns.iter().any(|c| c.needs_factorizations());

    let records = parallel::map(options.execution, &members, |(e, lengths)| -> Result<ScanRecord> {
        let mut rec = ScanRecord::new(e.clone());
        if need_z {
            let z = factorizations(sgp, e)?;
            if want(Column::ZCount) {
                rec.z_count = Some(z.len() as u64);
            }
            if want(Column::Catenary) {
                rec.catenary = Some(catenary_of_set(&z));
            }
        }
        if want(Column::Lengths) {
            rec.lengths = Some(lengths.clone());
        }
        if want(Column::Delta) {
            rec.delta = Some(lengths.delta());
        }
        if want(Column::MaxLen) {
            rec.max_len = lengths.max();
        }
        if want(Column::MinLen) {
            rec.min_len = lengths.min();
        }
        if want(Column::Omega) {
            let w = match &omega_ctx {
                Some(ctx) => ctx.omega(e.free[0])?,
                None => omega_bounded(sgp, e, options.omega_cap)?,
            };
            rec.omega = Some(w.value);
            rec.omega_exact = Some(w.exact);
        }
        Ok(rec)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    Ok(ScanTable { columns, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mcnugget() -> SemigroupPresentation {
        SemigroupPresentation::numerical(&[6, 9, 20]).unwrap()
    }

    #[test]
    fn numerical_scan() {
        let s = mcnugget();
        let t = scan(&s, &ScanDomain::Range { lo: 0, hi: 100 }, &Column::ALL, ScanOptions::default()).unwrap();
        let r = t.get(&Element::numerical(60)).unwrap();
        assert_eq!(r.z_count, Some(5));
        assert_eq!(r.delta.as_ref().unwrap().as_slice(), &[1, 4]);
        assert_eq!((r.max_len, r.min_len, r.catenary), (Some(10), Some(3), Some(7)));
        assert!(t.get(&Element::numerical(43)).is_none());
        assert!(t.records.windows(2).all(|w| w[0].element < w[1].element));
        assert_eq!(t.records[0].omega, Some(0));
    }

    #[test]
    fn empty_and_invalid_domains() {
        let s = mcnugget();
        let t = scan(&s, &ScanDomain::Range { lo: 1, hi: 5 }, &[Column::ZCount], ScanOptions::default()).unwrap();
        assert!(t.records.is_empty());
        assert_eq!(
            scan(&s, &ScanDomain::Range { lo: 5, hi: 1 }, &[Column::ZCount], ScanOptions::default()),
            Err(Error::EmptyRange)
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let s = mcnugget();
        let dom = ScanDomain::Range { lo: 0, hi: 150 };
        let seq = ScanOptions { execution: Execution::Sequential, ..Default::default() };
        let par = ScanOptions { execution: Execution::Parallel, ..Default::default() };
        assert_eq!(scan(&s, &dom, &Column::ALL, seq).unwrap(), scan(&s, &dom, &Column::ALL, par).unwrap());
    }

    #[test]
    fn box_with_torsion() {
        let amb = crate::semigroup::AmbientSpec::new(1, vec![2]).unwrap();
        let s = SemigroupPresentation::new(amb, vec![Element::new(vec![1], vec![0]), Element::new(vec![1], vec![1])])
            .unwrap();
        let t = scan(&s, &ScanDomain::Box { lo: vec![0], hi: vec![3] }, &[Column::ZCount], ScanOptions::default())
            .unwrap();
        // (0|1) is not reachable; everything else with free part >= 1 is.
        let elems: Vec<String> = t.records.iter().map(|r| r.element.to_string()).collect();
        assert_eq!(elems, ["0|0", "1|0", "1|1", "2|0", "2|1", "3|0", "3|1"]);
        assert_eq!(t.get(&Element::new(vec![2], vec![0])).unwrap().z_count, Some(2));
    }

    #[test]
    fn column_names() {
        assert_eq!(parse_columns("delta,z_count,delta").unwrap(), vec![Column::ZCount, Column::Delta]);
        assert!(parse_columns("bogus").is_err());
        assert!(parse_columns("").is_err());
    }
}
