//! On-disk factorization sets, one JSON-lines file per element under a
//! directory named by the SHA-256 of the canonical semigroup document.
//!
//! Line 1 is a header `{"sgp":"<hash>","element":"<text>"}`; every further
//! line is one exponent vector. Anything unreadable or inconsistent is a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;
use sha2::{Digest, Sha256};
use sgf_core::factor::evaluate;
use sgf_core::{Element, Factorization, FactorizationSet, SemigroupPresentation};

use crate::error::{CliError, CliResult};

pub fn sgp_hash(sgp: &SemigroupPresentation) -> String {
    hex::encode(Sha256::digest(sgp.to_canonical_json().as_bytes()))
}

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(FactorizationSet),
    Miss,
    /// A file exists but cannot be trusted; the reason is meant for a warning.
    Invalid(String),
}

pub struct Cache<'a> {
    dir: PathBuf,
    hash: String,
    sgp: &'a SemigroupPresentation,
}

impl<'a> Cache<'a> {
    pub fn new(root: &Path, sgp: &'a SemigroupPresentation) -> Self {
        let hash = sgp_hash(sgp);
        Self { dir: root.join(&hash), hash, sgp }
    }

    pub fn path(&self, alpha: &Element) -> PathBuf {
        let name: String = alpha.to_string().chars().map(|c| match c {
            ',' => '_',
            '|' => '~',
            c => c,
        }).collect();
        self.dir.join(format!("{name}.jsonl"))
    }

    pub fn load(&self, alpha: &Element) -> Lookup {
        let path = self.path(alpha);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Invalid(format!("{}: {e}", path.display())),
        };
        match self.parse(alpha, &text) {
            Ok(set) => Lookup::Hit(set),
            Err(why) => Lookup::Invalid(format!("{}: {why}", path.display())),
        }
    }

    fn parse(&self, alpha: &Element, text: &str) -> Result<FactorizationSet, String> {
        let mut lines = text.lines();
        let head: serde_json::Value =
            serde_json::from_str(lines.next().ok_or("empty file")?).map_err(|e| format!("bad header: {e}"))?;
        if head != json!({ "sgp": self.hash, "element": alpha.to_string() }) {
            return Err("header does not match this semigroup and element".into());
        }
        let mut out = Vec::new();
        for (i, line) in lines.enumerate() {
            let exps: Vec<u64> = serde_json::from_str(line).map_err(|e| format!("line {}: {e}", i + 2))?;
            if exps.len() != self.sgp.rank() || evaluate(self.sgp, &exps).ok().as_ref() != Some(alpha) {
                return Err(format!("line {}: not a factorization of {alpha}", i + 2));
            }
            out.push(Factorization::new(exps));
        }
        if out.windows(2).any(|w| w[0] >= w[1]) {
            return Err("factorizations not in ascending order".into());
        }
        Ok(FactorizationSet { element: alpha.clone(), factorizations: out })
    }

    /// Writes through a temporary file and a rename, so readers never see a partial file.
    pub fn store(&self, set: &FactorizationSet) -> CliResult<()> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let path = self.path(&set.element);
        let tmp = path.with_extension("jsonl.tmp");
        let mut body = json!({ "sgp": self.hash, "element": set.element.to_string() }).to_string();
        body.push('\n');
        for f in set.iter() {
            body.push_str(&serde_json::to_string(f.exponents()).expect("serializable"));
            body.push('\n');
        }
        let mut file = fs::File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
        file.write_all(body.as_bytes()).map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))
    }
}

/// `Z(alpha)`, served from the cache when a valid entry exists. Invalid
/// entries are reported on stderr and overwritten.
pub fn cached_factorizations(
    root: Option<&Path>,
    sgp: &SemigroupPresentation,
    alpha: &Element,
) -> CliResult<FactorizationSet> {
    let Some(root) = root else {
        return Ok(sgf_core::factorizations(sgp, alpha)?);
    };
    let cache = Cache::new(root, sgp);
    match cache.load(alpha) {
        Lookup::Hit(set) => return Ok(set),
        Lookup::Miss => {}
        Lookup::Invalid(why) => {
            eprintln!("{}", json!({ "warning": { "kind": "CacheIgnored", "message": why } }));
        }
    }
    let set = sgf_core::factorizations(sgp, alpha)?;
    cache.store(&set)?;
    Ok(set)
}
