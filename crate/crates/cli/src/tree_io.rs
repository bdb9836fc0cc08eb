//! JSON form of a decorated tree. Vertex and edge ids are arbitrary
//! integers; they are mapped to positions in the `vertices` and `edges`
//! lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use special_covers::tree::{Edge, HurwitzTree, Marking};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDto {
    pub id: u64,
    pub source: u64,
    pub target: u64,
    pub opposite: u64,
    #[serde(default)]
    pub a: Option<u64>,
    #[serde(default)]
    pub nu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingDto {
    pub leaf: u64,
    pub a: u64,
    #[serde(default)]
    pub nu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDto {
    pub vertices: Vec<u64>,
    pub edges: Vec<EdgeDto>,
    pub leaves: Vec<u64>,
    /// Marked leaf `i` is entry `i - 1`.
    pub marked: Vec<MarkingDto>,
    pub m: u64,
}

/// Position lookup; an unknown id maps to an out-of-range index so that the
/// structural check reports it.
fn index_of(ids: &BTreeMap<u64, usize>, id: u64, out_of_range: usize) -> usize {
    ids.get(&id).copied().unwrap_or(out_of_range)
}

impl TreeDto {
    pub fn to_tree(&self) -> Result<HurwitzTree, CliError> {
        let mut vids = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            if vids.insert(v, i).is_some() {
                return Err(CliError::Input(format!("duplicate vertex id {v}")));
            }
        }
        let mut eids = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if eids.insert(e.id, i).is_some() {
                return Err(CliError::Input(format!("duplicate edge id {}", e.id)));
            }
        }
        let nv = self.vertices.len();
        let ne = self.edges.len();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                source: index_of(&vids, e.source, nv),
                target: index_of(&vids, e.target, nv),
                opposite: index_of(&eids, e.opposite, ne),
                a: e.a,
                nu: e.nu,
            })
            .collect();
        Ok(HurwitzTree {
            vertex_count: nv,
            edges,
            leaves: self.leaves.iter().map(|&v| index_of(&vids, v, nv)).collect(),
            marked: self.marked.iter().map(|mk| Marking { leaf: index_of(&vids, mk.leaf, nv), a: mk.a, nu: mk.nu }).collect(),
            m: self.m,
        })
    }

    /// Ids are the positions.
    pub fn from_tree(t: &HurwitzTree) -> Self {
        TreeDto {
            vertices: (0..t.vertex_count as u64).collect(),
            edges: t
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeDto {
                    id: i as u64,
                    source: e.source as u64,
                    target: e.target as u64,
                    opposite: e.opposite as u64,
                    a: e.a,
                    nu: e.nu,
                })
                .collect(),
            leaves: t.leaves.iter().map(|&v| v as u64).collect(),
            marked: t.marked.iter().map(|mk| MarkingDto { leaf: mk.leaf as u64, a: mk.a, nu: mk.nu }).collect(),
            m: t.m,
        }
    }
}
