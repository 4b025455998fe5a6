//! Edge types and the length totals `delta_i`.
//!
//! A non-bridge edge has type 0. A bridge splits the graph into pieces of
//! pm-genus `g1` and `g2` and has type `min(g1, g2)`.

use std::collections::BTreeMap;

use super::PmGraph;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeType(pub u64);

/// Per-type totals: summed edge length and edge count.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeDeltas<S> {
    pub length: BTreeMap<u64, S>,
    pub count: BTreeMap<u64, usize>,
}

impl<S: Scalar> PmGraph<S> {
    /// Type of each edge.
    pub fn edge_types(&self) -> Vec<EdgeType> {
        let g = self.graph();
        let bridges = g.bridges();
        let mut types = vec![EdgeType(0); g.edge_count()];
        for &k in &bridges {
            let labels = g.labels_without_edge(k);
            let side = labels[g.edges()[k].u];
            let mut edges_side = 0usize;
            let mut verts_side = 0usize;
            let mut q_side = 0u64;
            for (x, &label) in labels.iter().enumerate() {
                if label == side {
                    verts_side += 1;
                    q_side += self.q(x) as u64;
                }
            }
            for (j, e) in g.edges().iter().enumerate() {
                if j != k && labels[e.u] == side {
                    edges_side += 1;
                }
            }
            let g1 = (edges_side + 1 - verts_side) as u64 + q_side;
            let g2 = self.pm_genus() - g1;
            types[k] = EdgeType(g1.min(g2));
        }
        types
    }

    /// Length and count of edges of each type. Type 0 is always present.
    pub fn type_deltas(&self) -> TypeDeltas<S> {
        let mut length = BTreeMap::from([(0, S::zero())]);
        let mut count = BTreeMap::from([(0, 0)]);
        for (t, e) in self.edge_types().into_iter().zip(self.graph().edges()) {
            let slot = length.entry(t.0).or_insert_with(S::zero);
            *slot = slot.clone() + e.len.clone();
            *count.entry(t.0).or_insert(0) += 1;
        }
        TypeDeltas { length, count }
    }
}

#[cfg(test)]
mod tests {
    use crate::graph::{EdgeType, MetrizedGraph, PmGraph};
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn dumbbell_bridge_has_type_one() {
        let g =
            MetrizedGraph::from_named(&["a", "b"], &[("a", "a", r(2)), ("a", "b", r(3)), ("b", "b", r(5))]).unwrap();
        let pg = PmGraph::simple(g).unwrap();
        assert_eq!(pg.edge_types(), vec![EdgeType(0), EdgeType(1), EdgeType(0)]);
        let d = pg.type_deltas();
        assert_eq!(d.length[&0], r(7));
        assert_eq!(d.length[&1], r(3));
        assert_eq!(d.count[&1], 1);
    }

    #[test]
    fn polarized_leaf_counts_towards_its_side() {
        let g = MetrizedGraph::from_named(&["a", "b"], &[("a", "a", r(1)), ("a", "b", r(1))]).unwrap();
        let pg = PmGraph::new(g, vec![1, 2]).unwrap();
        // sides have pm-genus 2 and 2
        assert_eq!(pg.edge_types()[1], EdgeType(2));
    }
}
