//! The JSON input document shared by the command line and the browser demo.
//!
//! ```json
//! {"k": 3, "n": 5, "edges": [[0,1,2],[2,3,4]],
//!  "vertex_weights": [0, 0, "1/3", 0, 0], "edge_weights": [1, [0.5, 1]]}
//! ```
//!
//! Weights are integers, `"p/q"` strings, decimal numbers (read exactly) or
//! `[re, im]` pairs. A named `weighting` replaces both arrays.

use serde::{Deserialize, Serialize};

use crate::hypertree::{
    corollary_weighting, Hypergraph, HypertreeError, LaplacianSign, WeightedHypergraph, WeightedHypertree, Weighting,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("document has no {0} and no named weighting")]
    Missing(&'static str),
    #[error(transparent)]
    Hypertree(#[from] HypertreeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedWeighting {
    Explicit,
    AdjacencyUnit,
    Laplacian,
    Signless,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_weights: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_weights: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighting: Option<NamedWeighting>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, DocError> {
        serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    /// Explicit document describing `g`.
    pub fn from_weighted(g: &WeightedHypergraph) -> Self {
        InputDocument {
            k: g.k(),
            n: g.n(),
            edges: g.graph().edges().to_vec(),
            vertex_weights: Some(g.weights().vertex_weights.clone()),
            edge_weights: Some(g.weights().edge_weights.clone()),
            weighting: None,
        }
    }

    /// Any uniform hypergraph, cyclic or disconnected inputs included.
    pub fn hypergraph(&self) -> Result<WeightedHypergraph, DocError> {
        let graph = Hypergraph::new(self.k, self.n, self.edges.clone())?;
        let weights = match self.weighting.unwrap_or(NamedWeighting::Explicit) {
            NamedWeighting::AdjacencyUnit => Weighting::unit(&graph),
            NamedWeighting::Laplacian => corollary_weighting(&graph, LaplacianSign::Laplacian),
            NamedWeighting::Signless => corollary_weighting(&graph, LaplacianSign::Signless),
            NamedWeighting::Explicit => Weighting {
                vertex_weights: self.vertex_weights.clone().ok_or(DocError::Missing("vertex_weights"))?,
                edge_weights: self.edge_weights.clone().ok_or(DocError::Missing("edge_weights"))?,
            },
        };
        Ok(WeightedHypergraph::new(graph, weights)?)
    }

    /// The document as a weighted hypertree; non-trees fail with their
    /// certificate.
    pub fn hypertree(&self) -> Result<WeightedHypertree, DocError> {
        Ok(WeightedHypertree::from_hypergraph(self.hypergraph()?)?)
    }
}

pub fn parse_hypertree(text: &str) -> Result<WeightedHypertree, DocError> {
    InputDocument::from_json(text)?.hypertree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn named_unit() {
        let t = parse_hypertree(r#"{"k":3,"n":3,"edges":[[0,1,2]],"weighting":"adjacency-unit"}"#).unwrap();
        assert_eq!(t.m(), 1);
        assert_eq!(t.weights(), &Weighting::unit(t.graph()));
    }

    #[test]
    fn exact_rationals() {
        let t = parse_hypertree(r#"{"k":3,"n":3,"edges":[[0,1,2]],"vertex_weights":["1/3",0.25,0],"edge_weights":[2]}"#).unwrap();
        assert!(t.weights().is_rational());
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(t.vertex_weight(0).as_rational(), Some(&third));
        assert_eq!(t.vertex_weight(1).as_rational(), Some(&BigRational::new(1.into(), 4.into())));
    }

    #[test]
    fn complex_weights() {
        let t = parse_hypertree(r#"{"k":3,"n":3,"edges":[[0,1,2]],"vertex_weights":[[0,1],0,0],"edge_weights":[1]}"#).unwrap();
        assert!(!t.weights().is_rational());
    }

    #[test]
    fn cyclic_input_reports_certificate() {
        let doc = r#"{"k":3,"n":6,"edges":[[0,1,2],[2,3,4],[4,5,0]],"weighting":"adjacency-unit"}"#;
        match parse_hypertree(doc) {
            Err(DocError::Hypertree(HypertreeError::NotATree(cert))) => {
                assert!(!cert.acyclic);
                assert_eq!(cert.cycle_edges.as_ref().map(Vec::len), Some(3));
            }
            other => panic!("{other:?}"),
        }
        assert!(InputDocument::from_json(doc).unwrap().hypergraph().is_ok());
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(InputDocument::from_json(r#"{"k":3}"#), Err(DocError::Json(_))));
        assert!(matches!(InputDocument::from_json(r#"{"k":3,"n":3,"edges":[[0,1,2]],"extra":1}"#), Err(DocError::Json(_))));
        let doc = InputDocument::from_json(r#"{"k":3,"n":3,"edges":[[0,1,2]]}"#).unwrap();
        assert_eq!(doc.hypertree(), Err(DocError::Missing("vertex_weights")));
        let doc = InputDocument::from_json(r#"{"k":1,"n":1,"edges":[[0]],"weighting":"adjacency-unit"}"#).unwrap();
        assert!(matches!(doc.hypertree(), Err(DocError::Hypertree(HypertreeError::UniformityTooSmall(_)))));
    }

    #[test]
    fn round_trip() {
        let t = parse_hypertree(r#"{"k":3,"n":3,"edges":[[2,0,1]],"vertex_weights":["1/3",0,[1,2]],"edge_weights":[-1]}"#).unwrap();
        let doc = InputDocument::from_weighted(&t);
        let again = parse_hypertree(&doc.to_json()).unwrap();
        assert_eq!(again.weights(), t.weights());
        assert_eq!(again.graph(), t.graph());
    }
}
