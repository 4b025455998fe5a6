//! Circuit data of each edge relative to a base vertex.
//!
//! Deleting a non-bridge edge `e = (u, v)` from the graph and looking at
//! the three points `u`, `v`, `p` leaves a network equivalent to a Y: arms
//! of resistance `arm_u` and `arm_v` from the junction to `u` and `v`, and
//! a stem of resistance `stem` from the junction to `p`.
//!
//! Resistances in the graph with one edge removed or contracted are rank-one
//! updates of the full resistance matrix, so after one matrix inversion every
//! quantity here costs O(1).

use std::sync::OnceLock;

use super::resistance_matrix;
use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum EdgeCircuit<S> {
    Cycle {
        /// Resistance between the endpoints once the edge is removed.
        complement: S,
        /// Arm towards `u`; equals `j_u(p, v)` in the reduced graph.
        arm_u: S,
        /// Arm towards `v`; equals `j_v(p, u)` in the reduced graph.
        arm_v: S,
        /// Stem towards the base vertex; equals `j_p(u, v)` in the reduced graph.
        stem: S,
    },
    /// The edge is a bridge.
    Bridge { base_near_u: bool },
}

impl<S: Scalar> EdgeCircuit<S> {
    pub fn is_bridge(&self) -> bool {
        matches!(self, EdgeCircuit::Bridge { .. })
    }
}

/// Resistances of a graph with everything needed to evaluate edge circuits.
#[derive(Debug)]
pub struct CircuitContext<S> {
    graph: MetrizedGraph<S>,
    r: Matrix<S>,
    valences: Vec<usize>,
    /// For bridges, the side of each vertex (`true` = with endpoint `u`).
    bridge_sides: Vec<Option<Vec<bool>>>,
    contraction_sums: OnceLock<Vec<S>>,
}

impl<S: Scalar> CircuitContext<S> {
    pub fn new(graph: &MetrizedGraph<S>) -> Self {
        let r = resistance_matrix(graph);
        let mut bridge_sides = vec![None; graph.edge_count()];
        for k in graph.bridges() {
            let labels = graph.labels_without_edge(k);
            let side = labels[graph.edges()[k].u];
            bridge_sides[k] = Some(labels.iter().map(|&l| l == side).collect());
        }
        CircuitContext {
            valences: graph.valences(),
            graph: graph.clone(),
            r,
            bridge_sides,
            contraction_sums: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &MetrizedGraph<S> {
        &self.graph
    }

    pub fn resistances(&self) -> &Matrix<S> {
        &self.r
    }

    pub fn resistance(&self, x: usize, y: usize) -> S {
        self.r[(x, y)].clone()
    }

    pub fn valences(&self) -> &[usize] {
        &self.valences
    }

    pub fn is_bridge(&self, k: usize) -> bool {
        self.bridge_sides[k].is_some()
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridge_sides.iter().all(Option::is_none)
    }

    /// Resistance between `x` and `y` after deleting non-bridge edge `k`.
    pub fn deleted_resistance(&self, k: usize, x: usize, y: usize) -> S {
        let e = &self.graph.edges()[k];
        debug_assert!(!self.is_bridge(k));
        let base = self.resistance(x, y);
        if e.is_loop() {
            return base;
        }
        let w = self.cross(e.u, e.v, x, y);
        base + w.clone() * w / (e.len.clone() - self.resistance(e.u, e.v))
    }

    /// `(r(x,b) - r(x,a) + r(y,a) - r(y,b)) / 2`, i.e. `(x - y)^T L+ (a - b)`.
    fn cross(&self, a: usize, b: usize, x: usize, y: usize) -> S {
        (self.resistance(x, b) - self.resistance(x, a) + self.resistance(y, a) - self.resistance(y, b)) / S::from_i64(2)
    }

    /// Resistance between `x` and `y` after contracting non-loop edge `i`.
    pub fn contracted_resistance(&self, i: usize, x: usize, y: usize) -> S {
        let e = &self.graph.edges()[i];
        if e.is_loop() {
            return self.resistance(x, y);
        }
        let w = self.cross(e.u, e.v, x, y);
        self.resistance(x, y) - w.clone() * w / self.resistance(e.u, e.v)
    }

    /// Circuit data of edge `k` relative to base vertex `p`.
    pub fn circuit(&self, k: usize, p: usize) -> EdgeCircuit<S> {
        let e = &self.graph.edges()[k];
        if let Some(sides) = &self.bridge_sides[k] {
            return EdgeCircuit::Bridge { base_near_u: sides[p] };
        }
        let (a, b) = (e.u, e.v);
        let r_ab = self.deleted_resistance(k, a, b);
        let r_pa = self.deleted_resistance(k, p, a);
        let r_pb = self.deleted_resistance(k, p, b);
        y_network(r_ab, r_pa, r_pb)
    }

    /// `sum over edges j of the graph with edge i contracted of
    /// L_j stem_j / (L_j + complement_j)`, based at the merged vertex.
    /// Requires a bridgeless graph and a non-loop edge `i`.
    pub fn contraction_sum(&self, i: usize) -> S {
        self.contraction_sums.get_or_init(|| self.all_contraction_sums())[i].clone()
    }

    fn all_contraction_sums(&self) -> Vec<S> {
        let edges = self.graph.edges();
        edges
            .iter()
            .enumerate()
            .map(|(i, ei)| {
                if ei.is_loop() {
                    return S::zero();
                }
                let merged = |x: usize| x == ei.u || x == ei.v;
                let base = ei.u;
                let mut total = S::zero();
                for (j, ej) in edges.iter().enumerate() {
                    if j == i || ej.is_loop() || (merged(ej.u) && merged(ej.v)) {
                        // loops of the contracted graph contribute nothing
                        continue;
                    }
                    let rc = |x, y| self.contracted_resistance(i, x, y);
                    let (c, d) = (ej.u, ej.v);
                    let rcd = rc(c, d);
                    let deleted = |x, y| {
                        let w = (rc(x, d) - rc(x, c) + rc(y, c) - rc(y, d)) / S::from_i64(2);
                        rc(x, y) + w.clone() * w / (ej.len.clone() - rcd.clone())
                    };
                    if let EdgeCircuit::Cycle { complement, stem, .. } =
                        y_network(deleted(c, d), deleted(base, c), deleted(base, d))
                    {
                        total = total + ej.len.clone() * stem / (ej.len.clone() + complement);
                    }
                }
                total
            })
            .collect()
    }
}

/// Y network from the three pairwise resistances between `u`, `v`, `p`.
fn y_network<S: Scalar>(r_uv: S, r_pu: S, r_pv: S) -> EdgeCircuit<S> {
    let two = S::from_i64(2);
    EdgeCircuit::Cycle {
        arm_u: (r_pu.clone() + r_uv.clone() - r_pv.clone()) / two.clone(),
        arm_v: (r_pv.clone() + r_uv.clone() - r_pu.clone()) / two.clone(),
        stem: (r_pu + r_pv - r_uv.clone()) / two,
        complement: r_uv,
    }
}

/// Circuit data of edge `k` relative to the vertex named `base`.
pub fn edge_circuit_data<S: Scalar>(g: &MetrizedGraph<S>, k: usize, base: &str) -> Result<EdgeCircuit<S>> {
    let p = g.index_of(base)?;
    if k >= g.edge_count() {
        return Err(Error::EdgeOutOfRange(k));
    }
    Ok(CircuitContext::new(g).circuit(k, p))
}
