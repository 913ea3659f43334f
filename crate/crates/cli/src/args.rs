use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sgf_core::Element;

#[derive(Debug, Parser)]
#[command(name = "sgf", version, about = "Factorization invariants of finitely generated commutative semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All factorizations of an element.
    Factor(ElementArgs),
    /// Length set of an element.
    Lengths(ElementArgs),
    /// Delta set of an element.
    Delta(ElementArgs),
    /// Maximum factorization length.
    Maxlen(ElementArgs),
    /// Minimum factorization length.
    Minlen(ElementArgs),
    /// Omega-primality of an element.
    Omega(OmegaArgs),
    /// Catenary degree of an element.
    Catenary(ElementArgs),
    /// Apery set of a generator subset (numerical semigroups).
    Apery(AperyArgs),
    /// Tabulate invariants over a range or box.
    Scan(ScanArgs),
    /// Fit a quasipolynomial to an invariant over a range (numerical semigroups).
    Fit(FitArgs),
    /// Fit an invariant along the ray k -> k * element.
    RayFit(RayFitArgs),
    /// Fit a polynomial to an invariant on a translated cone.
    ConeFit(ConeFitArgs),
    /// Delta set of a numerical semigroup with a periodicity certificate.
    DeltaSet(DeltaSetArgs),
    /// Run the built-in reproduction suite.
    VerifyPaper(VerifyArgs),
    /// Scatter plot of {(n, d) : d in delta(n)} as SVG plus a CSV of the points.
    PlotDelta(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SgpArg {
    /// Semigroup document: {"numerical": [...]} or {"free_rank", "torsion", "generators"}.
    #[arg(long, value_name = "PATH")]
    pub sgp: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    /// Element: `60`, `3,4`, or `3,4|1` with torsion after `|`.
    #[arg(long, value_name = "E", value_parser = parse_element)]
    pub element: Element,
    /// Directory for persisted factorization sets.
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    #[arg(long, value_name = "E", value_parser = parse_element)]
    pub element: Element,
    /// Bullet length cap outside numerical semigroups.
    #[arg(long, value_name = "N", default_value_t = 12)]
    pub cap: u64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct AperyArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    /// Generator values making up the subset (default: the least generator).
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub subset: Vec<u64>,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    #[arg(long, value_name = "N", requires = "to", conflicts_with = "box")]
    pub from: Option<u64>,
    #[arg(long, value_name = "N")]
    pub to: Option<u64>,
    /// Box `x0,y0:x1,y1` of free coordinates.
    #[arg(long = "box", value_name = "LO:HI", value_parser = parse_box, conflicts_with = "to")]
    pub r#box: Option<(Vec<u64>, Vec<u64>)>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Comma-separated columns: z_count, lengths, delta, max_len, min_len, omega, catenary.
    #[arg(long, value_name = "LIST", default_value = "z_count,lengths,delta,max_len,min_len,catenary")]
    pub invariants: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Bullet length cap for omega outside numerical semigroups.
    #[arg(long, value_name = "N", default_value_t = 12)]
    pub omega_cap: u64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct Bounds {
    #[arg(long, value_name = "N", default_value_t = 2)]
    pub degree_bound: usize,
    #[arg(long, value_name = "N")]
    pub period_bound: u64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    /// Invariant: z_count, length_count, max_len, min_len, omega, catenary.
    #[arg(long, value_name = "NAME")]
    pub invariants: String,
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub from: u64,
    #[arg(long, value_name = "N")]
    pub to: u64,
    #[command(flatten)]
    pub bounds: Bounds,
    /// jsonl: one JSON report; csv: the coefficient table.
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct RayFitArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    #[arg(long, value_name = "E", value_parser = parse_element)]
    pub element: Element,
    #[arg(long, value_name = "NAME")]
    pub invariants: String,
    #[command(flatten)]
    pub bounds: Bounds,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct ConeFitArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    /// Cone vertex.
    #[arg(long, value_name = "E", value_parser = parse_element)]
    pub base: Element,
    /// Cone generators separated by `;`, e.g. `2,1;3,3`.
    #[arg(long, value_name = "LIST")]
    pub directions: String,
    #[arg(long, value_name = "NAME", default_value = "z_count")]
    pub invariants: String,
    #[arg(long, value_name = "N", default_value_t = 1)]
    pub degree_bound: u32,
    /// Verification grid `0 <= c_j <= N`.
    #[arg(long, value_name = "N", default_value_t = 6)]
    pub grid: u64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct DeltaSetArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    #[arg(long, value_name = "N")]
    pub horizon: u64,
    /// Known periodicity start to check instead of searching.
    #[arg(long, value_name = "N")]
    pub start: Option<u64>,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run a single criterion.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u8).range(1..=11))]
    pub criterion: Option<u8>,
    /// Also print each criterion's observations.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub sgp: SgpArg,
    #[arg(long, value_name = "N")]
    pub horizon: u64,
    /// SVG path; the points go to the same path with a `.csv` extension.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

fn parse_element(s: &str) -> Result<Element, String> {
    s.parse().map_err(|e: sgf_core::Error| e.to_string())
}

fn parse_box(s: &str) -> Result<(Vec<u64>, Vec<u64>), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI, e.g. 0,0:40,40")?;
    let corner = |c: &str| -> Result<Vec<u64>, String> {
        c.split(',').map(|x| x.trim().parse::<u64>().map_err(|_| format!("bad coordinate {x:?}"))).collect()
    };
    let (lo, hi) = (corner(lo)?, corner(hi)?);
    if lo.len() != hi.len() {
        return Err("box corners have different dimensions".into());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxes() {
        assert_eq!(parse_box("0,0:40,40").unwrap(), (vec![0, 0], vec![40, 40]));
        assert!(parse_box("0,0").is_err());
        assert!(parse_box("0,0:1").is_err());
        assert!(parse_box("a:1").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
