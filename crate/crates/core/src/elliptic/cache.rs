//! On-disk cache of division polynomials, one file per (curve, n).
//!
//! File layout (UTF-8, newline separated):
//!
//! ```text
//! fiberlevel-psi v1
//! curve <a1>,<a2>,<a3>,<a4>,<a6>
//! n <n>
//! <coefficient of x^0>
//! <coefficient of x^1>
//! ...
//! ```
//!
//! Writers go through a temporary file in the same directory followed by an
//! atomic rename, so readers only ever observe complete files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::curve::WeierstrassCurve;
use crate::arith::RatPoly;
use crate::error::Result;

pub const CACHE_DIR_ENV: &str = "FIBERLEVEL_CACHE_DIR";
const HEADER: &str = "fiberlevel-psi v1";

#[derive(Clone, Debug)]
pub struct PsiCache {
    dir: PathBuf,
}

impl PsiCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache rooted at `$FIBERLEVEL_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, curve: &WeierstrassCurve, n: u64) -> PathBuf {
        self.dir.join(format!("{}-psi{n}.txt", curve.fingerprint()))
    }

    /// Returns `None` on a miss or on any file that does not match the
    /// expected header, curve and index.
    pub fn load(&self, curve: &WeierstrassCurve, n: u64) -> Option<RatPoly> {
        let text = fs::read_to_string(self.path(curve, n)).ok()?;
        let mut lines = text.lines();
        if lines.next()? != HEADER {
            return None;
        }
        if lines.next()? != format!("curve {}", curve.a_invariant_strs().join(",")) {
            return None;
        }
        if lines.next()? != format!("n {n}") {
            return None;
        }
        let coeffs: Vec<&str> = lines.collect();
        RatPoly::from_strs(&coeffs).ok()
    }

    pub fn store(&self, curve: &WeierstrassCurve, n: u64, psi: &RatPoly) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        writeln!(tmp, "{HEADER}")?;
        writeln!(tmp, "curve {}", curve.a_invariant_strs().join(","))?;
        writeln!(tmp, "n {n}")?;
        for c in psi.to_strs() {
            writeln!(tmp, "{c}")?;
        }
        tmp.flush()?;
        tmp.persist(self.path(curve, n)).map_err(|e| e.error)?;
        Ok(())
    }
}
