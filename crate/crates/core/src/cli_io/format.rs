//! JSON instance files.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color_core::{uniform_lists, Color, Lists, Precoloring};
use crate::plane_graph::{GraphError, PlaneGraph, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A graph with optional lists, precoloring and `t`. Rotations are
/// clockwise; `psi` is a list of `[vertex, color]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub rotations: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<Vec<Color>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<(Vertex, Color)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl InstanceFile {
    /// Serializes a graph whose vertex ids are dense.
    pub fn from_graph(g: &PlaneGraph) -> Self {
        let (n, rotations, outer_face, order) = g.compacted();
        debug_assert!(order.iter().enumerate().all(|(i, &v)| i == v), "vertex ids are not dense");
        InstanceFile { n, rotations, outer_face, lists: None, psi: None, t: None, metadata: None }
    }

    pub fn with_metadata(mut self, generator: &str, params: Vec<u64>, seed: Option<u64>) -> Self {
        self.metadata = Some(Metadata { generator: generator.to_string(), params, seed });
        self
    }

    pub fn graph(&self) -> Result<PlaneGraph, FormatError> {
        Ok(PlaneGraph::new(self.n, self.rotations.clone(), self.outer_face.as_deref())?)
    }

    /// The lists, defaulting to `{1, 2, 3}` everywhere; each list sorted.
    pub fn lists(&self) -> Result<Lists, FormatError> {
        match &self.lists {
            None => Ok(uniform_lists(self.n)),
            Some(l) if l.len() != self.n => Err(FormatError::Invalid(format!("{} lists for {} vertices", l.len(), self.n))),
            Some(l) => Ok(l
                .iter()
                .map(|list| {
                    let mut list = list.clone();
                    list.sort_unstable();
                    list.dedup();
                    list
                })
                .collect()),
        }
    }

    pub fn precoloring(&self) -> Result<Precoloring, FormatError> {
        let mut psi = Precoloring::new();
        for &(v, c) in self.psi.iter().flatten() {
            if v >= self.n {
                return Err(FormatError::Invalid(format!("precolored vertex {v} out of range")));
            }
            if psi.insert(v, c).is_some() {
                return Err(FormatError::Invalid(format!("vertex {v} precolored twice")));
            }
        }
        Ok(psi)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;

    #[test]
    fn round_trip() {
        let g = gen::octahedron();
        let mut inst = InstanceFile::from_graph(&g).with_metadata("octahedron", vec![], None);
        inst.psi = Some(vec![(0, 2)]);
        inst.t = Some(5);
        let text = inst.to_json();
        let back = InstanceFile::from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.graph().unwrap().edges(), g.edges());
        assert_eq!(back.precoloring().unwrap(), [(0, 2)].into());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(InstanceFile::from_json("{\"n\": 2}").is_err());
        let inst = InstanceFile::from_json("{\"n\": 2, \"rotations\": [[1], [1]]}").unwrap();
        assert!(inst.graph().is_err());
        let inst = InstanceFile::from_json("{\"n\": 1, \"rotations\": [[]], \"psi\": [[3, 1]]}").unwrap();
        assert!(inst.precoloring().is_err());
    }
}
