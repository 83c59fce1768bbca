//! Deterministic JSON and DOT serialization of fiber trees.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FiberTree, NodeId, NodeSpec};
use crate::arith::RatPoly;
use crate::elliptic::WeierstrassCurve;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub level_exponent: u32,
    pub degree: u64,
    pub parent: Option<String>,
    /// Coefficients, constant term first; empty for the root and orbit nodes.
    pub factor: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDoc {
    pub path: Vec<String>,
    pub level: String,
}

/// The on-the-wire form of a [`FiberTree`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub curve: Option<CurveDoc>,
    pub ell: u64,
    pub depth: u32,
    pub certified_exponent: Option<u32>,
    pub nodes: Vec<NodeDoc>,
    pub fibers: Vec<FiberDoc>,
}

impl TreeDocument {
    pub fn from_tree(t: &FiberTree) -> Self {
        let curve = t.curve().map(|c| {
            let [a1, a2, a3, a4, a6] = c.a_invariant_strs();
            CurveDoc { a1, a2, a3, a4, a6 }
        });
        let nodes = t
            .nodes()
            .map(|n| NodeDoc {
                id: n.id.to_string(),
                level_exponent: n.id.level,
                degree: n.degree,
                parent: n.parent.map(|p| p.to_string()),
                factor: n.factor.as_ref().map(RatPoly::to_strs).unwrap_or_default(),
            })
            .collect();
        let fibers = t
            .fiber_levels()
            .into_iter()
            .map(|f| FiberDoc {
                path: f.path.iter().map(NodeId::to_string).collect(),
                level: f.level.to_string(),
            })
            .collect();
        Self {
            curve,
            ell: t.ell(),
            depth: t.depth(),
            certified_exponent: t.certified_exponent(),
            nodes,
            fibers,
        }
    }

    /// Rebuilds the tree. Node ids must be `"k:i"` with levels `0..=depth`
    /// and indices dense within each level.
    pub fn to_tree(&self) -> Result<FiberTree> {
        let curve = self
            .curve
            .as_ref()
            .map(|c| WeierstrassCurve::from_strs(&[&c.a1, &c.a2, &c.a3, &c.a4, &c.a6]))
            .transpose()?;
        let mut levels: Vec<Vec<Option<NodeSpec>>> = vec![Vec::new(); self.depth as usize];
        for n in &self.nodes {
            let id: NodeId = n.id.parse()?;
            if id.level != n.level_exponent {
                return Err(Error::Parse(format!("node {} has level_exponent {}", n.id, n.level_exponent)));
            }
            if id.level == 0 {
                continue;
            }
            let slot = levels
                .get_mut(id.level as usize - 1)
                .ok_or_else(|| Error::Parse(format!("node {} is deeper than the tree", n.id)))?;
            if slot.len() <= id.index {
                slot.resize(id.index + 1, None);
            }
            let parent: NodeId = n
                .parent
                .as_deref()
                .ok_or_else(|| Error::Parse(format!("node {} lacks a parent", n.id)))?
                .parse()?;
            if parent.level + 1 != id.level {
                return Err(Error::Parse(format!("node {} has non-adjacent parent {parent}", n.id)));
            }
            let factor = if n.factor.is_empty() {
                None
            } else {
                Some(RatPoly::from_strs(&n.factor)?)
            };
            slot[id.index] = Some(NodeSpec {
                degree: n.degree,
                factor,
                parent: parent.index,
            });
        }
        let levels = levels
            .into_iter()
            .enumerate()
            .map(|(k, l)| {
                l.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Parse(format!("level {} has gaps", k + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        FiberTree::assemble(curve, self.ell, self.certified_exponent, levels)
    }
}

impl FiberTree {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&TreeDocument::from_tree(self))
            .expect("tree documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FiberTree> {
        serde_json::from_str::<TreeDocument>(text)?.to_tree()
    }

    /// Graphviz digraph; the root is labelled `j`, every other node `deg=<d>`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph fiber_tree {\n");
        let _ = writeln!(s, "  // ell = {}, depth = {}", self.ell(), self.depth());
        for n in self.nodes() {
            let label = if n.parent.is_none() {
                "j".to_string()
            } else {
                format!("deg={}", n.degree)
            };
            let _ = writeln!(s, "  \"{}\" [label=\"{label}\"];", n.id);
        }
        for n in self.nodes() {
            if let Some(p) = n.parent {
                let _ = writeln!(s, "  \"{p}\" -> \"{}\";", n.id);
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn export(&self, format: ExportFormat) -> Vec<u8> {
        match format {
            ExportFormat::Json => self.to_json().into_bytes(),
            ExportFormat::Dot => self.to_dot().into_bytes(),
        }
    }
}
