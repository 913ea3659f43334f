//! Scatter of `{(n, d) : d in delta(n)}`: a static SVG and a CSV of the same points.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sgf_core::invariants::delta_profile;
use sgf_core::SemigroupPresentation;

use crate::error::{CliError, CliResult};

pub fn delta_points(sgp: &SemigroupPresentation, horizon: u64) -> sgf_core::Result<Vec<(u64, u64)>> {
    let profile = delta_profile(sgp, horizon)?;
    Ok(profile
        .iter()
        .enumerate()
        .filter_map(|(n, d)| d.as_ref().map(|d| (n as u64, d)))
        .flat_map(|(n, d)| d.as_slice().iter().map(move |&g| (n, g)))
        .collect())
}

pub fn points_csv(points: &[(u64, u64)]) -> String {
    let mut s = String::from("n,d\n");
    for (n, d) in points {
        let _ = writeln!(s, "{n},{d}");
    }
    s
}

pub fn svg(points: &[(u64, u64)], horizon: u64) -> String {
    const W: f64 = 800.0;
    const H: f64 = 300.0;
    const PAD: f64 = 40.0;
    let dmax = points.iter().map(|p| p.1).max().unwrap_or(1).max(1);
    let x = |n: u64| PAD + (W - 2.0 * PAD) * n as f64 / horizon.max(1) as f64;
    let y = |d: u64| H - PAD - (H - 2.0 * PAD) * d as f64 / dmax as f64;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<line x1="{PAD}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#, b = H - PAD, r = W - PAD);
    let _ = writeln!(s, r#"<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{b}" stroke="black"/>"#, b = H - PAD);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">n (0 to {horizon})</text>"#, W / 2.0, H - 10.0);
    for d in 1..=dmax {
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" font-size="10" text-anchor="end">{d}</text>"#, PAD - 6.0, y(d) + 3.0);
    }
    for &(n, d) in points {
        let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="1.5"/>"#, x(n), y(d));
    }
    s.push_str("</svg>\n");
    s
}

/// The sidecar path: `out` with its extension replaced by `.csv`.
pub fn sidecar(out: &Path) -> CliResult<PathBuf> {
    let csv = out.with_extension("csv");
    if csv == out {
        return Err(CliError::Usage("--out must not end in .csv; the point list is written beside it".into()));
    }
    Ok(csv)
}

pub fn plot_delta(sgp: &SemigroupPresentation, horizon: u64, out: &Path) -> CliResult<Vec<(u64, u64)>> {
    let csv = sidecar(out)?;
    let points = delta_points(sgp, horizon)?;
    fs::write(out, svg(&points, horizon)).map_err(|e| CliError::io(out, e))?;
    fs::write(&csv, points_csv(&points)).map_err(|e| CliError::io(&csv, e))?;
    Ok(points)
}
