//! Metrized graphs and polarized metrized graphs.
//!
//! A [`MetrizedGraph`] is a connected multigraph with positive edge lengths;
//! self-loops and parallel edges are allowed. Vertices carry string ids and
//! are addressed internally by index. A [`PmGraph`] adds a non-negative
//! integer weight per vertex whose canonical divisor
//! `K(p) = valence(p) - 2 + 2 q(p)` must be effective.

mod structure;
mod transform;
mod types;

use std::collections::HashMap;

pub use structure::Structure;
pub use transform::Deletion;
pub use types::{EdgeType, TypeDeltas};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Undirected edge between vertex indices `u` and `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub u: usize,
    pub v: usize,
    pub len: S,
}

impl<S> Edge<S> {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x` (itself for a loop).
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Clone, Debug)]
pub struct MetrizedGraph<S> {
    ids: Vec<String>,
    edges: Vec<Edge<S>>,
    index: HashMap<String, usize>,
}

impl<S: PartialEq> PartialEq for MetrizedGraph<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.edges == other.edges
    }
}

impl<S: Scalar> MetrizedGraph<S> {
    /// Validates and builds a graph. Fails on an empty vertex set, repeated
    /// ids, dangling endpoints, non-positive lengths or disconnection.
    pub fn new(ids: Vec<String>, edges: Vec<Edge<S>>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        for (k, e) in edges.iter().enumerate() {
            if e.u >= ids.len() || e.v >= ids.len() {
                return Err(Error::VertexOutOfRange(e.u.max(e.v)));
            }
            if !e.len.is_positive() {
                return Err(Error::NonPositiveLength { edge: k, length: e.len.render() });
            }
        }
        let g = MetrizedGraph { ids, edges, index };
        if structure::component_count(g.vertex_count(), g.edges.iter().map(|e| (e.u, e.v))) != 1 {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from vertex names and `(u, v, length)` triples.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str, S)]) -> Result<Self> {
        let ids: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup =
            |name: &str| ids.iter().position(|x| x == name).ok_or_else(|| Error::UnknownVertex(name.to_string()));
        let mut es = Vec::with_capacity(edges.len());
        for (u, v, len) in edges {
            es.push(Edge { u: lookup(u)?, v: lookup(v)?, len: len.clone() });
        }
        Self::new(ids, es)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> Result<&Edge<S>> {
        self.edges.get(k).ok_or(Error::EdgeOutOfRange(k))
    }

    /// First Betti number `e - v + 1`.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.ids.len()
    }

    pub fn total_length(&self) -> S {
        self.edges.iter().map(|e| e.len.clone()).sum()
    }

    /// Number of edge ends at each vertex; loops count twice.
    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.ids.len()];
        for e in &self.edges {
            val[e.u] += 1;
            val[e.v] += 1;
        }
        val
    }

    pub fn valence(&self, id: &str) -> Result<usize> {
        let i = self.index_of(id)?;
        Ok(self.valences()[i])
    }

    /// True when there are no loops and no parallel edges.
    pub fn is_optimal(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| !e.is_loop() && seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Same graph with every length multiplied by `t > 0`.
    pub fn scaled(&self, t: &S) -> Result<Self> {
        self.map_lengths(|l| l.clone() * t.clone())
    }

    /// Applies `f` to every edge length, keeping topology and ids.
    pub fn map_lengths<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<MetrizedGraph<T>> {
        let edges = self.edges.iter().map(|e| Edge { u: e.u, v: e.v, len: f(&e.len) }).collect();
        MetrizedGraph::new(self.ids.clone(), edges)
    }

    /// Converts between numeric backends through exact rationals.
    pub fn convert<T: Scalar>(&self) -> MetrizedGraph<T> {
        self.map_lengths(|l| T::from_rational(&l.to_rational())).expect("conversion keeps a valid graph valid")
    }

    pub(crate) fn from_parts_unchecked(ids: Vec<String>, edges: Vec<Edge<S>>) -> Self {
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        MetrizedGraph { ids, edges, index }
    }
}

/// A metrized graph with a polarization `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PmGraph<S> {
    graph: MetrizedGraph<S>,
    q: Vec<u32>,
}

impl<S: Scalar> PmGraph<S> {
    /// Fails when some vertex has `valence - 2 + 2q < 0`.
    pub fn new(graph: MetrizedGraph<S>, q: Vec<u32>) -> Result<Self> {
        if q.len() != graph.vertex_count() {
            return Err(Error::PolarizationLength { expected: graph.vertex_count(), got: q.len() });
        }
        let val = graph.valences();
        for (i, (&v, &w)) in val.iter().zip(&q).enumerate() {
            if v + 2 * (w as usize) < 2 {
                return Err(Error::NotEffective(graph.id(i).to_string()));
            }
        }
        Ok(PmGraph { graph, q })
    }

    /// Zero polarization.
    pub fn simple(graph: MetrizedGraph<S>) -> Result<Self> {
        let n = graph.vertex_count();
        Self::new(graph, vec![0; n])
    }

    pub fn graph(&self) -> &MetrizedGraph<S> {
        &self.graph
    }

    pub fn into_graph(self) -> MetrizedGraph<S> {
        self.graph
    }

    pub fn polarization(&self) -> &[u32] {
        &self.q
    }

    pub fn q(&self, i: usize) -> u32 {
        self.q[i]
    }

    pub fn total_q(&self) -> u64 {
        self.q.iter().map(|&x| x as u64).sum()
    }

    /// True when the polarization vanishes identically.
    pub fn has_zero_polarization(&self) -> bool {
        self.q.iter().all(|&x| x == 0)
    }

    /// Genus plus total polarization.
    pub fn pm_genus(&self) -> u64 {
        self.graph.genus() as u64 + self.total_q()
    }

    /// Canonical divisor weights `valence - 2 + 2q`.
    pub fn canonical_weights(&self) -> Vec<i64> {
        self.graph.valences().iter().zip(&self.q).map(|(&v, &w)| v as i64 - 2 + 2 * w as i64).collect()
    }

    pub fn total_length(&self) -> S {
        self.graph.total_length()
    }

    pub fn scaled(&self, t: &S) -> Result<Self> {
        Ok(PmGraph { graph: self.graph.scaled(t)?, q: self.q.clone() })
    }

    pub fn convert<T: Scalar>(&self) -> PmGraph<T> {
        PmGraph { graph: self.graph.convert(), q: self.q.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn genus_and_valence_count_loops_twice() {
        let g =
            MetrizedGraph::from_named(&["p", "q"], &[("p", "p", r(1, 2)), ("p", "q", r(1, 3)), ("p", "q", r(1, 6))])
                .unwrap();
        assert_eq!(g.genus(), 2);
        assert_eq!(g.valence("p").unwrap(), 4);
        assert_eq!(g.valence("q").unwrap(), 2);
        assert_eq!(g.total_length(), r(1, 1));
        assert!(!g.is_optimal());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(MetrizedGraph::from_named(&["p", "q"], &[("p", "p", r(1, 1))]).unwrap_err(), Error::Disconnected);
        assert!(matches!(
            MetrizedGraph::from_named(&["p", "q"], &[("p", "q", r(0, 1))]).unwrap_err(),
            Error::NonPositiveLength { .. }
        ));
        assert_eq!(MetrizedGraph::<Rational>::new(vec![], vec![]).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn leaf_needs_polarization() {
        let g = MetrizedGraph::from_named(&["p", "q"], &[("p", "q", r(1, 1))]).unwrap();
        assert_eq!(PmGraph::simple(g.clone()).unwrap_err(), Error::NotEffective("p".into()));
        let pg = PmGraph::new(g, vec![1, 1]).unwrap();
        assert_eq!(pg.pm_genus(), 2);
        assert_eq!(pg.canonical_weights(), vec![1, 1]);
    }
}
