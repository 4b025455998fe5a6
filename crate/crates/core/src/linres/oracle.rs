//! Resistances by spanning tree enumeration.
//!
//! `r(p, q) = F(p, q) / T` where `T` sums the conductance products of all
//! spanning trees and `F(p, q)` those of all two-tree spanning forests that
//! separate `p` from `q`. Exponential, so limited to small graphs.

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Largest number of non-loop edges the oracle accepts.
pub const ORACLE_EDGE_CAP: usize = 14;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    r
}

/// All pairwise resistances of `g` by enumeration.
pub fn oracle_matrix<S: Scalar>(g: &MetrizedGraph<S>) -> Result<Matrix<S>> {
    let edges: Vec<_> = g.edges().iter().filter(|e| !e.is_loop()).collect();
    if edges.len() > ORACLE_EDGE_CAP {
        return Err(Error::TooLarge { edges: edges.len(), cap: ORACLE_EDGE_CAP });
    }
    let n = g.vertex_count();
    let mut out = Matrix::zeros(n);
    if n == 1 {
        return Ok(out);
    }
    let conductance: Vec<S> = edges.iter().map(|e| S::one() / e.len.clone()).collect();
    let mut trees = S::zero();
    let mut forests = Matrix::<S>::zeros(n);
    let mut parent = vec![0; n];
    for mask in 0u32..(1 << edges.len()) {
        let size = mask.count_ones() as usize;
        if size + 1 != n && size + 2 != n {
            continue;
        }
        parent.iter_mut().enumerate().for_each(|(i, p)| *p = i);
        let mut weight = S::one();
        let mut acyclic = true;
        for (k, e) in edges.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
            weight = weight * conductance[k].clone();
        }
        if !acyclic {
            continue;
        }
        if size + 1 == n {
            trees = trees + weight;
        } else {
            let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
            for x in 0..n {
                for y in 0..x {
                    if roots[x] != roots[y] {
                        forests[(x, y)] = forests[(x, y)].clone() + weight.clone();
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..x {
            let r = forests[(x, y)].clone() / trees.clone();
            out[(x, y)] = r.clone();
            out[(y, x)] = r;
        }
    }
    Ok(out)
}

/// Resistance between two named vertices by enumeration.
pub fn resistance_oracle<S: Scalar>(g: &MetrizedGraph<S>, p: &str, q: &str) -> Result<S> {
    let (p, q) = (g.index_of(p)?, g.index_of(q)?);
    Ok(oracle_matrix(g)?[(p, q)].clone())
}
