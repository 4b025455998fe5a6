//! Bridges, edge connectivity and cut points.

use super::MetrizedGraph;
use crate::scalar::Scalar;

/// Combinatorial summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    /// Indices of bridge edges.
    pub bridges: Vec<usize>,
    /// Minimum number of edges whose removal disconnects the graph; `None`
    /// for a single vertex, which cannot be disconnected.
    pub edge_connectivity: Option<usize>,
    /// No point of the metric space disconnects it when removed.
    pub irreducible: bool,
}

impl Structure {
    pub fn bridgeless(&self) -> bool {
        self.bridges.is_empty()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Number of connected components on `n` vertices.
pub(crate) fn component_count(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let labels = component_labels(n, edges);
    let mut seen: Vec<usize> = labels.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Component label per vertex (the smallest vertex index of its component).
pub(crate) fn component_labels(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for (a, b) in edges {
        uf.union(a, b);
    }
    (0..n).map(|i| uf.find(i)).collect()
}

impl<S: Scalar> MetrizedGraph<S> {
    /// Component labels of the graph with edge `skip` removed.
    pub(crate) fn labels_without_edge(&self, skip: usize) -> Vec<usize> {
        component_labels(
            self.vertex_count(),
            self.edges.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, e)| (e.u, e.v)),
        )
    }

    /// Indices of bridge edges (edges whose removal disconnects the graph).
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.u].push((e.v, k));
                adj[e.v].push((e.u, k));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut clock = 0;
        // iterative DFS: (vertex, parent edge, next adjacency position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        while let Some(&mut (x, via, ref mut pos)) = stack.last_mut() {
            if *pos < adj[x].len() {
                let (y, k) = adj[x][*pos];
                *pos += 1;
                if k == via {
                    continue;
                }
                if disc[y] == usize::MAX {
                    clock += 1;
                    disc[y] = clock;
                    low[y] = clock;
                    stack.push((y, k, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] > disc[parent] {
                        out.push(via);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Minimum edge cut by Stoer-Wagner on edge multiplicities; loops are
    /// ignored. `None` for a single vertex.
    pub fn edge_connectivity(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n < 2 {
            return None;
        }
        let mut w = vec![vec![0usize; n]; n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            w[e.u][e.v] += 1;
            w[e.v][e.u] += 1;
        }
        let mut active: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        while active.len() > 1 {
            let mut weight = vec![0usize; n];
            let mut added = vec![false; n];
            let mut prev = active[0];
            let mut last = active[0];
            for step in 0..active.len() {
                let next =
                    *active.iter().filter(|&&x| !added[x]).max_by_key(|&&x| (weight[x], std::cmp::Reverse(x))).unwrap();
                added[next] = true;
                if step == active.len() - 1 {
                    best = best.min(weight[next]);
                }
                prev = last;
                last = next;
                for &y in &active {
                    if !added[y] {
                        weight[y] += w[next][y];
                    }
                }
            }
            // merge `last` into `prev`
            for &y in &active {
                w[prev][y] += w[last][y];
                w[y][prev] = w[prev][y];
            }
            w[prev][prev] = 0;
            active.retain(|&x| x != last);
        }
        Some(best)
    }

    /// True when no single point disconnects the metric space: there are no
    /// bridges and removing any vertex leaves one piece.
    pub fn is_irreducible(&self) -> bool {
        if !self.is_bridgeless() {
            return false;
        }
        let n = self.vertex_count();
        (0..n).all(|p| self.pieces_without_vertex(p) <= 1)
    }

    /// Connected pieces of the space after deleting vertex `p`: components
    /// of the remaining vertices, plus one open interval per loop at `p`.
    fn pieces_without_vertex(&self, p: usize) -> usize {
        let n = self.vertex_count();
        let labels = component_labels(n, self.edges.iter().filter(|e| !e.touches(p)).map(|e| (e.u, e.v)));
        let mut roots: Vec<usize> = (0..n).filter(|&x| x != p).map(|x| labels[x]).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = self.edges.iter().filter(|e| e.is_loop() && e.u == p).count();
        roots.len() + loops
    }

    pub fn structure(&self) -> Structure {
        Structure {
            bridges: self.bridges(),
            edge_connectivity: self.edge_connectivity(),
            irreducible: self.is_irreducible(),
        }
    }
}
