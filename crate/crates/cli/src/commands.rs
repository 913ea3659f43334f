use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};
use sgf_core::invariants::{
    apery_set, catenary_degree, catenary_of_set, delta_of_semigroup, length_set, lengths_of, omega, omega_bounded,
    parse_columns, scan, Invariant, LengthSet, ScanDomain, ScanOptions,
};
use sgf_core::quasipoly::{cone_fit, fit_search, ray_fit, Samples, TranslatedCone};
use sgf_core::reproduce;
use sgf_core::{Element, Error, SemigroupPresentation};

use crate::args::*;
use crate::cache::cached_factorizations;
use crate::error::{CliError, CliResult};
use crate::plot::plot_delta;
use crate::scan_io::{format_rational, write_scan, write_scan_jsonl};

pub fn load_sgp(path: &Path) -> CliResult<SemigroupPresentation> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let (sgp, report) = SemigroupPresentation::from_json(&text)?.checked(false)?;
    for w in report.warnings(false) {
        eprintln!("{}", json!({ "warning": { "kind": "Validation", "message": format!("{w:?}") } }));
    }
    Ok(sgp)
}

fn emit(out: &OutArg, bytes: &[u8]) -> CliResult<()> {
    match &out.out {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn emit_json(out: &OutArg, v: &Value) -> CliResult<()> {
    emit(out, format!("{v}\n").as_bytes())
}

fn invariant(name: &str) -> CliResult<Invariant> {
    name.parse().map_err(|_| CliError::Usage(format!("invalid value '{name}' for '--invariants <NAME>'")))
}

fn element_input(a: &ElementArgs) -> CliResult<(SemigroupPresentation, Element)> {
    let sgp = load_sgp(&a.sgp.sgp)?;
    sgp.check_element(&a.element)?;
    Ok((sgp, a.element.clone()))
}

fn lengths(a: &ElementArgs) -> CliResult<LengthSet> {
    let (sgp, e) = element_input(a)?;
    Ok(match &a.cache {
        Some(dir) => {
            let z = cached_factorizations(Some(dir), &sgp, &e)?;
            if z.is_empty() {
                return Err(Error::NotInSemigroup(e.to_string()).into());
            }
            lengths_of(&z)
        }
        None => length_set(&sgp, &e)?,
    })
}

pub fn dispatch(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Factor(a) => {
            let (sgp, e) = element_input(&a)?;
            let z = cached_factorizations(a.cache.as_deref(), &sgp, &e)?;
            let list: Vec<&[u64]> = z.iter().map(|f| f.exponents()).collect();
            emit_json(&a.out, &json!({ "element": e.to_string(), "count": z.len(), "factorizations": list }))
        }
        Command::Lengths(a) => {
            let l = lengths(&a)?;
            emit_json(&a.out, &json!({ "element": a.element.to_string(), "lengths": l }))
        }
        Command::Delta(a) => {
            let l = lengths(&a)?;
            emit_json(&a.out, &json!({ "element": a.element.to_string(), "delta": l.delta() }))
        }
        Command::Maxlen(a) => {
            let l = lengths(&a)?;
            emit_json(&a.out, &json!({ "element": a.element.to_string(), "max_len": l.max() }))
        }
        Command::Minlen(a) => {
            let l = lengths(&a)?;
            emit_json(&a.out, &json!({ "element": a.element.to_string(), "min_len": l.min() }))
        }
        Command::Catenary(a) => {
            let (sgp, e) = element_input(&a)?;
            let c = match &a.cache {
                Some(dir) => {
                    let z = cached_factorizations(Some(dir), &sgp, &e)?;
                    if z.is_empty() {
                        return Err(Error::NotInSemigroup(e.to_string()).into());
                    }
                    catenary_of_set(&z)
                }
                None => catenary_degree(&sgp, &e)?,
            };
            emit_json(&a.out, &json!({ "element": e.to_string(), "catenary": c }))
        }
        Command::Omega(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            sgp.check_element(&a.element)?;
            let w = if sgp.is_numerical() { omega(&sgp, &a.element)? } else { omega_bounded(&sgp, &a.element, a.cap)? };
            emit_json(&a.out, &json!({ "element": a.element.to_string(), "omega": w.value, "exact": w.exact }))
        }
        Command::Apery(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            let gens = sgp.numerical_generators()?;
            let values = if a.subset.is_empty() { vec![gens[0]] } else { a.subset.clone() };
            let idx = sgp.subset_from_values(&values)?;
            let ap = apery_set(&sgp, &idx)?;
            emit_json(&a.out, &json!({ "subset": values, "apery": ap }))
        }
        Command::Scan(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            let domain = match (&a.domain.r#box, a.domain.from, a.domain.to) {
                (Some((lo, hi)), _, _) => ScanDomain::Box { lo: lo.clone(), hi: hi.clone() },
                (None, from, Some(to)) => ScanDomain::Range { lo: from.unwrap_or(0), hi: to },
                _ => return Err(CliError::Usage("scan needs '--from <N> --to <N>' or '--box <LO:HI>'".into())),
            };
            let columns = parse_columns(&a.invariants)
                .map_err(|e| CliError::Usage(format!("invalid value for '--invariants <LIST>': {e}")))?;
            let opts = ScanOptions { omega_cap: a.omega_cap, ..Default::default() };
            let table = scan(&sgp, &domain, &columns, opts)?;
            let mut buf = Vec::new();
            match a.format {
                Format::Csv => write_scan(&mut buf, &table),
                Format::Jsonl => write_scan_jsonl(&mut buf, &table),
            }
            .expect("writing to memory");
            emit(&a.out, &buf)
        }
        Command::Fit(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            let inv = invariant(&a.invariants)?;
            if a.from > a.to {
                return Err(Error::EmptyRange.into());
            }
            let mut samples: Samples = inv.sequence(&sgp, a.from, a.to)?;
            if inv == Invariant::ZCount {
                // the counting function is zero off the semigroup
                for n in a.from..=a.to {
                    samples.entry(n).or_insert_with(num::zero);
                }
            }
            let r = fit_search(&samples, a.bounds.degree_bound, a.bounds.period_bound)?;
            match a.format {
                Format::Jsonl => emit_json(
                    &a.out,
                    &json!({
                        "invariant": inv.name(),
                        "from": a.from,
                        "to": a.to,
                        "display": r.qp.to_string(),
                        "report": r,
                    }),
                ),
                Format::Csv => {
                    let mut s = String::from("degree,residue,coefficient\n");
                    for (i, row) in r.qp.coeffs().iter().enumerate() {
                        for (c, x) in row.iter().enumerate() {
                            s.push_str(&format!("{i},{c},{}\n", format_rational(x)));
                        }
                    }
                    emit(&a.out, s.as_bytes())
                }
            }
        }
        Command::RayFit(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            sgp.check_element(&a.element)?;
            let inv = invariant(&a.invariants)?;
            let r = ray_fit(&sgp, &a.element, inv, a.bounds.degree_bound, a.bounds.period_bound)?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["alpha"] = Value::from(a.element.to_string());
            v["display"] = Value::from(r.report.qp.to_string());
            emit_json(&a.out, &v)
        }
        Command::ConeFit(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            let inv = invariant(&a.invariants)?;
            let dirs = a
                .directions
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<Element>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("invalid value for '--directions <LIST>': {e}")))?;
            let cone = TranslatedCone::new(sgp.ambient().clone(), a.base.clone(), dirs)?;
            let fit = cone_fit(&sgp, &cone, |e| inv.evaluate(&sgp, e), a.degree_bound, a.grid)?;
            let mut v = serde_json::to_value(&fit).expect("serializable");
            v["invariant"] = Value::from(inv.name());
            v["display"] = Value::from(fit.poly.to_string());
            if let Some(af) = &fit.ambient_form {
                v["ambient_display"] = Value::from(af.to_string());
            }
            emit_json(&a.out, &v)
        }
        Command::DeltaSet(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            let (delta, cert) = delta_of_semigroup(&sgp, a.horizon, a.start)?;
            emit_json(&a.out, &json!({ "delta": delta, "certificate": cert }))
        }
        Command::VerifyPaper(a) => {
            let ids: Vec<u8> = match a.criterion {
                Some(id) => vec![id],
                None => (1..=11).collect(),
            };
            let mut failed = 0;
            for &id in &ids {
                let o = reproduce::criterion(id);
                println!("{o}");
                if a.verbose {
                    for obs in &o.observations {
                        println!("    {obs}");
                    }
                }
                failed += usize::from(!o.passed);
            }
            if failed > 0 {
                return Err(CliError::VerificationFailed(failed, ids.len()));
            }
            Ok(())
        }
        Command::PlotDelta(a) => {
            let sgp = load_sgp(&a.sgp.sgp)?;
            let points = plot_delta(&sgp, a.horizon, &a.out)?;
            let csv = crate::plot::sidecar(&a.out)?;
            println!(
                "{}",
                json!({ "points": points.len(), "svg": a.out.display().to_string(), "csv": csv.display().to_string() })
            );
            Ok(())
        }
    }
}
