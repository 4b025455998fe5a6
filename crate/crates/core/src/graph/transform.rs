//! Edge deletion and contraction, vertex set refinement and suppression,
//! loop attachment and one-point unions.

use std::collections::{BTreeMap, HashSet};

use super::{Edge, MetrizedGraph, PmGraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Result of deleting an edge.
#[derive(Clone, Debug, PartialEq)]
pub enum Deletion<S> {
    Connected(MetrizedGraph<S>),
    /// The edge was a bridge; `near_u` holds the endpoint `u` of the removed edge.
    Split {
        near_u: MetrizedGraph<S>,
        near_v: MetrizedGraph<S>,
    },
}

fn fresh_id(taken: &HashSet<String>, base: String) -> String {
    let mut id = base;
    while taken.contains(&id) {
        id.push('\'');
    }
    id
}

impl<S: Scalar> MetrizedGraph<S> {
    /// Removes edge `k`.
    pub fn delete_edge(&self, k: usize) -> Result<Deletion<S>> {
        self.edge(k)?;
        let labels = self.labels_without_edge(k);
        let rest: Vec<(usize, &Edge<S>)> = self.edges.iter().enumerate().filter(|(j, _)| *j != k).collect();
        let e = &self.edges[k];
        if labels[e.u] == labels[e.v] {
            let edges = rest.into_iter().map(|(_, e)| e.clone()).collect();
            return Ok(Deletion::Connected(MetrizedGraph::from_parts_unchecked(self.ids.clone(), edges)));
        }
        let part = |label: usize| {
            let keep: Vec<usize> = (0..self.vertex_count()).filter(|&x| labels[x] == label).collect();
            let mut map = vec![usize::MAX; self.vertex_count()];
            for (new, &old) in keep.iter().enumerate() {
                map[old] = new;
            }
            let ids = keep.iter().map(|&x| self.ids[x].clone()).collect();
            let edges = rest
                .iter()
                .filter(|(_, e)| labels[e.u] == label)
                .map(|(_, e)| Edge { u: map[e.u], v: map[e.v], len: e.len.clone() })
                .collect();
            MetrizedGraph::from_parts_unchecked(ids, edges)
        };
        Ok(Deletion::Split { near_u: part(labels[e.u]), near_v: part(labels[e.v]) })
    }

    /// Contracts edge `k` to a point. The merged vertex keeps the id of the
    /// `u` endpoint; a loop is simply removed.
    pub fn contract_edge(&self, k: usize) -> Result<MetrizedGraph<S>> {
        let e = self.edge(k)?.clone();
        if e.is_loop() {
            let edges = self.edges.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, e)| e.clone()).collect();
            return Ok(MetrizedGraph::from_parts_unchecked(self.ids.clone(), edges));
        }
        let (keep, gone) = (e.u, e.v);
        let remap = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let ids = self.ids.iter().enumerate().filter(|(i, _)| *i != gone).map(|(_, s)| s.clone()).collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, e)| Edge { u: remap(e.u), v: remap(e.v), len: e.len.clone() })
            .collect();
        Ok(MetrizedGraph::from_parts_unchecked(ids, edges))
    }

    /// Refines the vertex set until there are no loops and no parallel
    /// edges: each loop is cut into three equal pieces and every edge but
    /// the first of a parallel class is cut in half. New vertices are named
    /// `e<k>#s<j>` after the edge they subdivide.
    pub fn normalize_vertex_set(&self) -> MetrizedGraph<S> {
        let mut taken: HashSet<String> = self.ids.iter().cloned().collect();
        let mut ids = self.ids.clone();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut classes: HashSet<(usize, usize)> = HashSet::new();
        for (k, e) in self.edges.iter().enumerate() {
            let pieces = if e.is_loop() {
                3
            } else if !classes.insert((e.u.min(e.v), e.u.max(e.v))) {
                2
            } else {
                1
            };
            if pieces == 1 {
                edges.push(e.clone());
                continue;
            }
            let len = e.len.clone() / S::from_i64(pieces);
            let mut prev = e.u;
            for j in 1..pieces {
                let id = fresh_id(&taken, format!("e{k}#s{j}"));
                taken.insert(id.clone());
                ids.push(id);
                let x = ids.len() - 1;
                edges.push(Edge { u: prev, v: x, len: len.clone() });
                prev = x;
            }
            edges.push(Edge { u: prev, v: e.v, len });
        }
        MetrizedGraph::from_parts_unchecked(ids, edges)
    }

    /// Disjoint union of `self` and `other` with vertex `p` of `self`
    /// identified with vertex `p2` of `other`. Colliding ids from `other`
    /// get a `'` suffix.
    pub fn one_point_join(&self, p: &str, other: &MetrizedGraph<S>, p2: &str) -> Result<MetrizedGraph<S>> {
        let at = self.index_of(p)?;
        let at2 = other.index_of(p2)?;
        let mut taken: HashSet<String> = self.ids.iter().cloned().collect();
        let mut ids = self.ids.clone();
        let mut map = vec![0; other.vertex_count()];
        for (i, id) in other.ids.iter().enumerate() {
            if i == at2 {
                map[i] = at;
                continue;
            }
            let name = fresh_id(&taken, id.clone());
            taken.insert(name.clone());
            ids.push(name);
            map[i] = ids.len() - 1;
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge { u: map[e.u], v: map[e.v], len: e.len.clone() }));
        Ok(MetrizedGraph::from_parts_unchecked(ids, edges))
    }
}

impl<S: Scalar> PmGraph<S> {
    /// [`MetrizedGraph::normalize_vertex_set`] with zero weight on the new vertices.
    pub fn normalize_vertex_set(&self) -> PmGraph<S> {
        let graph = self.graph.normalize_vertex_set();
        let mut q = self.q.clone();
        q.resize(graph.vertex_count(), 0);
        PmGraph { graph, q }
    }

    /// Removes every valence-two vertex with `q = 0` by merging its two
    /// edges. On a pure circle the lexicographically smallest vertex stays.
    pub fn suppress_vertices(&self) -> PmGraph<S> {
        let n = self.graph.vertex_count();
        let mut alive = vec![true; n];
        let mut edges: BTreeMap<usize, Edge<S>> = self.graph.edges.iter().cloned().enumerate().collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.graph.ids[b].cmp(&self.graph.ids[a]));
        loop {
            let mut changed = false;
            for &x in &order {
                if !alive[x] || self.q[x] != 0 {
                    continue;
                }
                let incident: Vec<usize> = edges.iter().filter(|(_, e)| e.touches(x)).map(|(&k, _)| k).collect();
                if incident.len() != 2 {
                    continue;
                }
                let (k1, k2) = (incident[0], incident[1]);
                let (e1, e2) = (edges[&k1].clone(), edges[&k2].clone());
                if e1.is_loop() || e2.is_loop() {
                    continue;
                }
                let merged = Edge { u: e1.other(x), v: e2.other(x), len: e1.len + e2.len };
                edges.remove(&k2);
                edges.insert(k1, merged);
                alive[x] = false;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut ids = Vec::new();
        let mut q = Vec::new();
        for x in 0..n {
            if alive[x] {
                map[x] = ids.len();
                ids.push(self.graph.ids[x].clone());
                q.push(self.q[x]);
            }
        }
        let edges = edges.into_values().map(|e| Edge { u: map[e.u], v: map[e.v], len: e.len }).collect();
        PmGraph { graph: MetrizedGraph::from_parts_unchecked(ids, edges), q }
    }

    /// Attaches `q(p)` loops of length `eps` at every vertex and drops the
    /// polarization. The result has the same pm-genus.
    pub fn attach_loops(&self, eps: &S) -> Result<PmGraph<S>> {
        if !eps.is_positive() {
            return Err(Error::InvalidArgument("loop length must be positive".into()));
        }
        let mut edges = self.graph.edges.clone();
        for (x, &w) in self.q.iter().enumerate() {
            for _ in 0..w {
                edges.push(Edge { u: x, v: x, len: eps.clone() });
            }
        }
        let graph = MetrizedGraph::from_parts_unchecked(self.graph.ids.clone(), edges);
        let n = graph.vertex_count();
        PmGraph::new(graph, vec![0; n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn banana() -> MetrizedGraph<Rational> {
        MetrizedGraph::from_named(&["p", "q"], &[("p", "q", r(1, 3)), ("p", "q", r(1, 3)), ("p", "q", r(1, 3))])
            .unwrap()
    }

    #[test]
    fn normalize_removes_loops_and_parallels() {
        let g = MetrizedGraph::from_named(
            &["p", "q"],
            &[("p", "p", r(1, 1)), ("p", "q", r(1, 2)), ("p", "q", r(1, 2)), ("q", "p", r(1, 2))],
        )
        .unwrap();
        let n = g.normalize_vertex_set();
        assert!(n.is_optimal());
        assert_eq!(n.vertex_count(), 2 + 2 + 1 + 1);
        assert_eq!(n.total_length(), g.total_length());
        assert_eq!(n.genus(), g.genus());
        assert_eq!(n.id(2), "e0#s1");
    }

    #[test]
    fn suppress_undoes_normalize() {
        let pg = PmGraph::simple(banana()).unwrap();
        let back = pg.normalize_vertex_set().suppress_vertices();
        assert_eq!(back, pg);
    }

    #[test]
    fn suppress_circle_keeps_smallest_id() {
        let g = MetrizedGraph::from_named(
            &["c", "a", "b"],
            &[("c", "a", r(1, 3)), ("a", "b", r(1, 3)), ("b", "c", r(1, 3))],
        )
        .unwrap();
        let s = PmGraph::simple(g).unwrap().suppress_vertices();
        assert_eq!(s.graph().ids(), ["a".to_string()]);
        assert_eq!(s.graph().edge_count(), 1);
        assert!(s.graph().edges()[0].is_loop());
        assert_eq!(s.total_length(), r(1, 1));
    }

    #[test]
    fn delete_and_contract() {
        let g = banana();
        assert!(matches!(g.delete_edge(0).unwrap(), Deletion::Connected(_)));
        let c = g.contract_edge(0).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 2);
        assert!(c.has_loops());
        let path = MetrizedGraph::from_named(&["a", "b", "c"], &[("a", "b", r(1, 1)), ("b", "c", r(1, 1))]).unwrap();
        match path.delete_edge(1).unwrap() {
            Deletion::Split { near_u, near_v } => {
                assert_eq!(near_u.ids(), ["a".to_string(), "b".to_string()]);
                assert_eq!(near_v.ids(), ["c".to_string()]);
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn attach_loops_keeps_pm_genus() {
        let g = MetrizedGraph::from_named(&["p", "q"], &[("p", "q", r(1, 1))]).unwrap();
        let pg = PmGraph::new(g, vec![1, 2]).unwrap();
        let g0 = pg.attach_loops(&r(1, 10)).unwrap();
        assert_eq!(g0.pm_genus(), pg.pm_genus());
        assert!(g0.has_zero_polarization());
        assert_eq!(g0.graph().edge_count(), 4);
    }

    #[test]
    fn join_renames_collisions() {
        let a = banana();
        let j = a.one_point_join("q", &a, "p").unwrap();
        assert_eq!(j.vertex_count(), 3);
        assert_eq!(j.ids()[2], "q'");
        assert_eq!(j.genus(), 4);
    }
}
