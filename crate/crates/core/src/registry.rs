//! Named curves and subgroup specs. A copy ships inside the binary; further
//! registry files can be layered on top at run time.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::elliptic::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::gl2::{SubgroupSpec, SubgroupSpecFile};

const BUNDLED: &str = include_str!("../data/registry.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub name: String,
    pub a_invariants: [String; 5],
    /// Known ℓ-adic level exponents, keyed by ℓ.
    #[serde(default)]
    pub adic_exponents: BTreeMap<u64, u32>,
    /// Name of a spec in the same registry giving the ℓ-adic image.
    #[serde(default)]
    pub spec: Option<String>,
}

impl CurveEntry {
    pub fn curve(&self) -> Result<WeierstrassCurve> {
        WeierstrassCurve::from_strs(&self.a_invariants)
    }

    pub fn adic_exponent(&self, ell: u64) -> Option<u32> {
        self.adic_exponents.get(&ell).copied()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    #[serde(default)]
    pub curves: Vec<CurveEntry>,
    #[serde(default)]
    pub specs: BTreeMap<String, SubgroupSpecFile>,
}

impl Registry {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled registry is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Adds the entries of `other`, replacing same-named ones.
    pub fn merge(&mut self, other: Registry) {
        for c in other.curves {
            match self.curves.iter_mut().find(|e| e.name == c.name) {
                Some(slot) => *slot = c,
                None => self.curves.push(c),
            }
        }
        self.specs.extend(other.specs);
    }

    pub fn curve(&self, name: &str) -> Option<&CurveEntry> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// A spec by its own name, or the spec attached to a curve of that name.
    pub fn spec(&self, name: &str) -> Result<Option<SubgroupSpec>> {
        let key = match self.curve(name) {
            Some(c) => match &c.spec {
                Some(s) => s.as_str(),
                None => return Ok(None),
            },
            None => name,
        };
        match self.specs.get(key) {
            Some(file) => SubgroupSpec::from_file(file).map(Some),
            None if key != name => Err(Error::InvalidInput(format!(
                "curve {name} refers to unknown spec {key}"
            ))),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries() {
        let r = Registry::bundled();
        for name in ["graphexample", "54.b2", "50.b1", "counterexample"] {
            assert!(r.curve(name).unwrap().curve().is_ok(), "{name}");
        }
        assert_eq!(r.curve("graphexample").unwrap().adic_exponent(3), Some(2));
        assert_eq!(r.curve("counterexample").unwrap().adic_exponent(2), Some(4));
        assert_eq!(r.spec("50.b1").unwrap().unwrap().order_at(1), 12);
        assert_eq!(r.spec("full-gl2-3").unwrap().unwrap().order_at(1), 48);
        assert!(r.spec("54.b2").unwrap().is_none());
        assert!(r.spec("nonesuch").unwrap().is_none());
    }

    #[test]
    fn merge_overrides_by_name() {
        let mut r = Registry::bundled();
        let extra = Registry::from_json(
            r#"{"curves": [{"name": "54.b2", "a_invariants": ["1","-1","1","-14","29"], "adic_exponents": {"3": 1}}]}"#,
        )
        .unwrap();
        let n = r.curves.len();
        r.merge(extra);
        assert_eq!(r.curves.len(), n);
        assert_eq!(r.curve("54.b2").unwrap().adic_exponent(3), Some(1));
    }
}
