//! Systems from finite labelled graphs: `θ_α(A) = r(A,α)`, the vertices
//! reached from `A` along edges labelled `α`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::boolean::AtomSet;
use crate::dynamics::{finite_generalized, GeneralizedBDS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: String,
    pub dst: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl LabelledGraph {
    /// An ordinary directed graph, one label per edge: `e` for a single
    /// edge, otherwise `e1, e2, …` in the given order.
    pub fn directed<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> LabelledGraph {
        let single = edges.len() == 1;
        LabelledGraph {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(i, (s, d))| Edge {
                    src: s.as_ref().to_string(),
                    dst: d.as_ref().to_string(),
                    label: if single { "e".into() } else { format!("e{}", i + 1) },
                })
                .collect(),
        }
    }

    /// Distinct labels in order of first use.
    pub fn alphabet(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .filter(|e| seen.insert(e.label.clone()))
            .map(|e| e.label.clone())
            .collect()
    }

    fn vertex_index(&self) -> Result<BTreeMap<&str, usize>> {
        let mut index = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::DuplicateAtom(v.clone()));
            }
        }
        for e in &self.edges {
            for v in [&e.src, &e.dst] {
                if !index.contains_key(v.as_str()) {
                    return Err(Error::UnknownAtom(v.clone()));
                }
            }
        }
        Ok(index)
    }

    /// For each label, the unique source of every vertex it reaches. Fails
    /// with a witness `(α, u, u′, w)` when two sources share a target.
    fn dual_maps(&self) -> Result<Vec<Vec<Option<usize>>>> {
        let index = self.vertex_index()?;
        let alphabet = self.alphabet();
        let mut maps = vec![vec![None; self.vertices.len()]; alphabet.len()];
        let label_index: BTreeMap<&str, usize> =
            alphabet.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        for e in &self.edges {
            let l = label_index[e.label.as_str()];
            let (u, w) = (index[e.src.as_str()], index[e.dst.as_str()]);
            match maps[l][w] {
                Some(prev) if prev != u => {
                    let (a, b) = if prev < u { (prev, u) } else { (u, prev) };
                    return Err(Error::NotWeaklyLeftResolving {
                        label: e.label.clone(),
                        u: self.vertices[a].clone(),
                        u2: self.vertices[b].clone(),
                        w: e.dst.clone(),
                    });
                }
                _ => maps[l][w] = Some(u),
            }
        }
        Ok(maps)
    }

    /// `r(α)`, the vertices with an incoming `α` edge.
    pub fn range(&self, label: &str) -> Result<AtomSet> {
        let index = self.vertex_index()?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.label == label)
            .map(|e| index[e.dst.as_str()])
            .collect())
    }
}

/// The system on the power set of vertices with `I_α = {B : B ⊆ r(α)}`.
pub fn import_labelled_graph(g: &LabelledGraph) -> Result<GeneralizedBDS> {
    let maps = g.dual_maps()?;
    let alphabet = g.alphabet();
    let ideals = alphabet.iter().map(|l| g.range(l)).collect::<Result<Vec<_>>>()?;
    finite_generalized(&g.vertices, &alphabet, maps, Some(ideals))
}
