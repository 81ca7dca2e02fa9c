use std::fmt;

use indexmap::IndexMap;

use super::scalar::{ExactScalar, Ring};
use crate::error::CoordError;
use crate::hypergraph::Mmph;
use crate::label::VertexLabel;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExactVector {
    ring: Ring,
    components: Vec<ExactScalar>,
}

impl ExactVector {
    /// Builds a vector, moving rational components into `ring`. Panics if a
    /// component belongs to a different irrational ring.
    pub fn new(ring: Ring, components: Vec<ExactScalar>) -> Self {
        let components = components
            .into_iter()
            .map(|c| c.in_ring(ring).unwrap_or_else(|| panic!("component {c} is not in {ring}")))
            .collect();
        ExactVector { ring, components }
    }

    pub fn from_ints(ring: Ring, xs: &[i64]) -> Self {
        ExactVector::new(ring, xs.iter().map(|&x| ExactScalar::int(ring, x)).collect())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[ExactScalar] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ExactScalar::is_zero)
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactVector { ring: self.ring, components: self.components.iter().map(|c| s * c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let components = self.components.iter().zip(&other.components).map(|(x, y)| x - y).collect();
        ExactVector { ring: self.ring, components }
    }

    /// Scales so that the first nonzero component is 1. Two vectors are
    /// proportional iff their canonical forms are equal.
    pub fn canonical(&self) -> Option<Self> {
        let lead = self.components.iter().find(|c| !c.is_zero())?;
        Some(self.scale(&lead.inverse()?))
    }

    pub fn is_parallel(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Hermitian product: sum of conj(u_i) * v_i.
pub fn inner_product(u: &ExactVector, v: &ExactVector) -> Result<ExactScalar, CoordError> {
    if u.ring != v.ring {
        return Err(CoordError::RingMismatch(u.ring.name(), v.ring.name()));
    }
    if u.len() != v.len() {
        return Err(CoordError::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.components
        .iter()
        .zip(&v.components)
        .fold(ExactScalar::zero(u.ring), |acc, (x, y)| &acc + &(&x.conj() * y)))
}

/// Vectors attached to vertex labels, in file order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coordinatization {
    ring: Ring,
    dimension: usize,
    vectors: IndexMap<VertexLabel, ExactVector>,
}

impl Coordinatization {
    /// All vectors must have length `dimension` and live in `ring`.
    pub fn new(ring: Ring, dimension: usize, vectors: IndexMap<VertexLabel, ExactVector>) -> Result<Self, CoordError> {
        for v in vectors.values() {
            if v.ring != ring {
                return Err(CoordError::RingMismatch(ring.name(), v.ring.name()));
            }
            if v.len() != dimension {
                return Err(CoordError::LengthMismatch(dimension, v.len()));
            }
        }
        Ok(Coordinatization { ring, dimension, vectors })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &IndexMap<VertexLabel, ExactVector> {
        &self.vectors
    }

    pub fn get(&self, label: VertexLabel) -> Option<&ExactVector> {
        self.vectors.get(&label)
    }

    pub fn insert(&mut self, label: VertexLabel, v: ExactVector) -> Result<(), CoordError> {
        if v.len() != self.dimension {
            return Err(CoordError::LengthMismatch(self.dimension, v.len()));
        }
        self.vectors.insert(label, v);
        Ok(())
    }

    /// The vectors of the vertices of `h`, in `h`'s vertex order.
    pub fn restrict(&self, h: &Mmph) -> Result<Self, CoordError> {
        let vectors = h
            .vertices()
            .iter()
            .map(|&l| self.get(l).cloned().map(|v| (l, v)).ok_or(CoordError::MissingVector(l)))
            .collect::<Result<_, _>>()?;
        Ok(Coordinatization { ring: self.ring, dimension: self.dimension, vectors })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoFailure {
    pub edge: usize,
    pub pair: (VertexLabel, VertexLabel),
    pub value: ExactScalar,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OrthoReport {
    pub passed: bool,
    pub failures: Vec<OrthoFailure>,
    pub parallel_pairs: Vec<(usize, (VertexLabel, VertexLabel))>,
}

/// Checks every pair inside every hyperedge for orthogonality and flags
/// proportional pairs.
pub fn verify_coordinatization(h: &Mmph, c: &Coordinatization) -> Result<OrthoReport, CoordError> {
    let vecs = h
        .vertices()
        .iter()
        .map(|&l| c.get(l).ok_or(CoordError::MissingVector(l)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = OrthoReport::default();
    for (e, edge) in h.edges().iter().enumerate() {
        for (i, &u) in edge.iter().enumerate() {
            for &v in &edge[i + 1..] {
                let pair = (h.vertices()[u], h.vertices()[v]);
                let value = inner_product(vecs[u], vecs[v])?;
                if !value.is_zero() {
                    report.failures.push(OrthoFailure { edge: e, pair, value });
                }
                if vecs[u].is_parallel(vecs[v]) {
                    report.parallel_pairs.push((e, pair));
                }
            }
        }
    }
    report.passed = report.failures.is_empty() && report.parallel_pairs.is_empty();
    Ok(report)
}
