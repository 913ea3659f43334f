//! CSV persistence of scan tables.
//!
//! One header row, LF line endings. Sets are written `{a;b;c}`, rationals
//! `num/den`, and a selected-but-absent value as an empty field.

use std::io::{Read, Write};

use num::{BigInt, BigRational};
use sgf_core::invariants::{Column, DeltaSet, LengthSet, ScanRecord, ScanTable};
use sgf_core::{Element, Error, Result};

/// Header field names for a column selection; `omega` carries a second `omega_exact` field.
pub fn header(columns: &[Column]) -> Vec<&'static str> {
    let mut h = vec!["element"];
    for c in columns {
        h.push(c.name());
        if *c == Column::Omega {
            h.push("omega_exact");
        }
    }
    h
}

pub fn format_set(values: &[u64]) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(";"))
}

pub fn parse_set(s: &str) -> Option<Vec<u64>> {
    let inner = s.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(';').map(|x| x.parse().ok()).collect()
}

pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let (n, d): (BigInt, BigInt) = (n.parse().ok()?, d.parse().ok()?);
    (d != BigInt::from(0)).then(|| BigRational::new(n, d))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn row(r: &ScanRecord, columns: &[Column]) -> Vec<String> {
    let mut out = vec![r.element.to_string()];
    for c in columns {
        match c {
            Column::ZCount => out.push(opt(&r.z_count)),
            Column::Lengths => out.push(r.lengths.as_ref().map(|l| format_set(l.as_slice())).unwrap_or_default()),
            Column::Delta => out.push(r.delta.as_ref().map(|d| format_set(d.as_slice())).unwrap_or_default()),
            Column::MaxLen => out.push(opt(&r.max_len)),
            Column::MinLen => out.push(opt(&r.min_len)),
            Column::Omega => {
                out.push(opt(&r.omega));
                out.push(opt(&r.omega_exact));
            }
            Column::Catenary => out.push(opt(&r.catenary)),
        }
    }
    out
}

pub fn write_scan<W: Write>(w: W, table: &ScanTable) -> std::io::Result<()> {
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    csv.write_record(header(&table.columns))?;
    for r in &table.records {
        csv.write_record(row(r, &table.columns))?;
    }
    csv.flush()
}

/// One JSON object per record with sorted keys; absent values are omitted.
pub fn write_scan_jsonl<W: Write>(mut w: W, table: &ScanTable) -> std::io::Result<()> {
    for r in &table.records {
        let mut value = serde_json::to_value(r).expect("serializable");
        value["element"] = r.element.to_string().into();
        writeln!(w, "{value}")?;
    }
    Ok(())
}

pub fn read_scan<R: Read>(r: R) -> Result<ScanTable> {
    let mut csv = csv::ReaderBuilder::new().has_headers(false).from_reader(r);
    let mut records = csv.records();
    let head = match records.next() {
        Some(h) => h.map_err(|e| Error::Parse(format!("line 1: {e}")))?,
        None => return Err(Error::Parse("line 1: missing header".into())),
    };
    if head.get(0) != Some("element") {
        return Err(Error::Parse("line 1: first column must be `element`".into()));
    }
    let mut columns = Vec::new();
    let mut fields = head.iter().skip(1);
    while let Some(name) = fields.next() {
        let c: Column = name.parse().map_err(|_| Error::Parse(format!("line 1: unknown column `{name}`")))?;
        if c == Column::Omega && fields.next() != Some("omega_exact") {
            return Err(Error::Parse("line 1: `omega` must be followed by `omega_exact`".into()));
        }
        columns.push(c);
    }
    if header(&columns) != head.iter().collect::<Vec<_>>() {
        return Err(Error::Parse("line 1: columns out of canonical order".into()));
    }

    let mut out = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| Error::Parse(format!("line {}: {e}", e.position().map_or(0, |p| p.line()))))?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |what: &str, v: &str| Error::Parse(format!("line {line}: bad {what} {v:?}"));
        let mut it = rec.iter();
        let e = it.next().unwrap_or_default();
        let element: Element = e.parse().map_err(|_| bad("element", e))?;
        if out.last().is_some_and(|p: &ScanRecord| p.element >= element) {
            return Err(Error::Parse(format!("line {line}: elements must be strictly increasing")));
        }
        let mut r = ScanRecord::new(element);
        let mut next = || it.next().unwrap_or_default();
        let int = |v: &str, what: &str| -> Result<Option<u64>> {
            if v.is_empty() { Ok(None) } else { v.parse().map(Some).map_err(|_| bad(what, v)) }
        };
        let set = |v: &str, what: &str| -> Result<Option<Vec<u64>>> {
            if v.is_empty() { Ok(None) } else { parse_set(v).map(Some).ok_or_else(|| bad(what, v)) }
        };
        for c in &columns {
            match c {
                Column::ZCount => r.z_count = int(next(), "z_count")?,
                Column::Lengths => r.lengths = set(next(), "lengths")?.map(LengthSet::from_lengths),
                Column::Delta => r.delta = set(next(), "delta")?.map(DeltaSet::from_gaps),
                Column::MaxLen => r.max_len = int(next(), "max_len")?,
                Column::MinLen => r.min_len = int(next(), "min_len")?,
                Column::Omega => {
                    r.omega = int(next(), "omega")?;
                    r.omega_exact = match next() {
                        "" => None,
                        "true" => Some(true),
                        "false" => Some(false),
                        v => return Err(bad("omega_exact", v)),
                    };
                }
                Column::Catenary => r.catenary = int(next(), "catenary")?,
            }
        }
        out.push(r);
    }
    Ok(ScanTable { columns, records: out })
}
