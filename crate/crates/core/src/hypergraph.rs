use std::collections::HashMap;

use crate::error::HypergraphError;
use crate::label::VertexLabel;

/// An n-dimensional MMP hypergraph.
///
/// Vertices are kept in order of first appearance; hyperedges hold indices
/// into the vertex list and keep their input order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mmph {
    dimension: usize,
    vertices: Vec<VertexLabel>,
    edges: Vec<Vec<usize>>,
}

impl Mmph {
    /// Builds a hypergraph from label lists without checking edge sizes,
    /// repeats or duplicates. Callers are the parser and the structural
    /// operations, which enforce those rules themselves.
    pub(crate) fn from_label_edges(dimension: usize, edges: &[Vec<VertexLabel>]) -> Self {
        let mut index: HashMap<VertexLabel, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let edges = edges
            .iter()
            .map(|edge| {
                edge.iter()
                    .map(|&label| {
                        *index.entry(label).or_insert_with(|| {
                            vertices.push(label);
                            vertices.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        Mmph { dimension, vertices, edges }
    }

    /// Builds a hypergraph from label lists, dropping edges with fewer than
    /// two vertices and merging exact duplicates (as sets). Fails when
    /// nothing is left.
    pub fn from_edges(
        dimension: usize,
        edges: impl IntoIterator<Item = Vec<VertexLabel>>,
    ) -> Result<Self, HypergraphError> {
        let mut seen = std::collections::HashSet::new();
        let kept: Vec<Vec<VertexLabel>> = edges
            .into_iter()
            .filter(|e| e.len() >= 2)
            .filter(|e| {
                let mut key = e.clone();
                key.sort_unstable();
                seen.insert(key)
            })
            .collect();
        if kept.is_empty() {
            return Err(HypergraphError::NoEdgesLeft);
        }
        let needed = kept.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Mmph::from_label_edges(dimension.max(needed), &kept))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of vertices.
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Number of hyperedges.
    pub fn l(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_labels(&self, e: usize) -> Vec<VertexLabel> {
        self.edges[e].iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn label_edges(&self) -> Vec<Vec<VertexLabel>> {
        (0..self.l()).map(|e| self.edge_labels(e)).collect()
    }

    pub fn vertex_index(&self, label: VertexLabel) -> Option<usize> {
        self.vertices.iter().position(|&v| v == label)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Returns a copy with a different stated dimension.
    pub fn with_dimension(&self, dimension: usize) -> Result<Self, HypergraphError> {
        let needed = self.max_edge_size();
        if dimension < needed {
            return Err(HypergraphError::DimensionTooSmall { given: dimension, needed });
        }
        Ok(Mmph { dimension, ..self.clone() })
    }

    /// Keeps the edges whose indices satisfy `keep`, renumbering vertices.
    pub fn retain_edges(&self, mut keep: impl FnMut(usize) -> bool) -> Result<Self, HypergraphError> {
        let kept: Vec<Vec<VertexLabel>> =
            (0..self.l()).filter(|&e| keep(e)).map(|e| self.edge_labels(e)).collect();
        if kept.is_empty() {
            return Err(HypergraphError::NoEdgesLeft);
        }
        Ok(Mmph::from_label_edges(self.dimension, &kept))
    }

    /// Number of hyperedges through each vertex, indexed like `vertices()`.
    pub fn multiplicity_vec(&self) -> Vec<usize> {
        let mut m = vec![0; self.k()];
        for edge in &self.edges {
            for &v in edge {
                m[v] += 1;
            }
        }
        m
    }

    /// Edge sets sorted by label, for order-insensitive comparison.
    pub fn edge_set_keys(&self) -> Vec<Vec<VertexLabel>> {
        self.label_edges()
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect()
    }
}
