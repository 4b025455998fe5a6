//! Discrete Laplacian, its pseudo-inverse and effective resistances.

mod circuit;
mod oracle;

pub use circuit::{edge_circuit_data, CircuitContext, EdgeCircuit};
pub use oracle::{oracle_matrix, resistance_oracle, ORACLE_EDGE_CAP};

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Laplacian of a graph on an optimal vertex set (no loops, no parallel
/// edges): off-diagonal entries `-1/L` for an edge of length `L`, rows
/// summing to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Laplacian<S> {
    pub matrix: Matrix<S>,
    pub ids: Vec<String>,
}

/// Moore-Penrose inverse of a [`Laplacian`].
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoInverse<S> {
    pub matrix: Matrix<S>,
    pub ids: Vec<String>,
}

impl<S: Scalar> PseudoInverse<S> {
    /// `l+(x,x) - 2 l+(x,y) + l+(y,y)`.
    pub fn resistance(&self, x: usize, y: usize) -> S {
        let m = &self.matrix;
        m[(x, x)].clone() + m[(y, y)].clone() - S::from_i64(2) * m[(x, y)].clone()
    }

    pub fn trace(&self) -> S {
        self.matrix.trace()
    }
}

pub fn build_laplacian<S: Scalar>(g: &MetrizedGraph<S>) -> Result<Laplacian<S>> {
    if !g.is_optimal() {
        return Err(Error::NotOptimal("graph has a loop or parallel edges; normalize it first".into()));
    }
    Ok(Laplacian { matrix: conductance_laplacian(g), ids: g.ids().to_vec() })
}

/// Laplacian with parallel conductances added up and loops dropped. Equal
/// to the usual Laplacian on an optimal vertex set; on other vertex sets it
/// still gives the right resistances between the given vertices.
fn conductance_laplacian<S: Scalar>(g: &MetrizedGraph<S>) -> Matrix<S> {
    let n = g.vertex_count();
    let mut m = Matrix::<S>::zeros(n);
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let c = S::one() / e.len.clone();
        m[(e.u, e.v)] = m[(e.u, e.v)].clone() - c.clone();
        m[(e.v, e.u)] = m[(e.v, e.u)].clone() - c.clone();
        m[(e.u, e.u)] = m[(e.u, e.u)].clone() + c.clone();
        m[(e.v, e.v)] = m[(e.v, e.v)].clone() + c;
    }
    m
}

/// `(L + J/v)^-1 - J/v` where `J` is the all-ones matrix.
fn pinv_of<S: Scalar>(lap: &Matrix<S>) -> Result<Matrix<S>> {
    let n = lap.dim();
    let j = Matrix::filled(n, S::one() / S::from_usize(n));
    Ok(lap.add(&j).inverse()?.sub(&j))
}

pub fn pseudo_inverse<S: Scalar>(lap: &Laplacian<S>) -> Result<PseudoInverse<S>> {
    Ok(PseudoInverse { matrix: pinv_of(&lap.matrix)?, ids: lap.ids.clone() })
}

/// Effective resistance between every pair of vertices of `g`, in vertex
/// order. Loops and parallel edges are handled directly.
pub fn resistance_matrix<S: Scalar>(g: &MetrizedGraph<S>) -> Matrix<S> {
    let pinv = pinv_of(&conductance_laplacian(g)).expect("Laplacian of a connected graph plus J/v is invertible");
    let n = g.vertex_count();
    let mut r = Matrix::zeros(n);
    for x in 0..n {
        for y in 0..x {
            let v = pinv[(x, x)].clone() + pinv[(y, y)].clone() - S::from_i64(2) * pinv[(x, y)].clone();
            r[(x, y)] = v.clone();
            r[(y, x)] = v;
        }
    }
    r
}

/// `j_z(x, y) = (r(x,z) + r(y,z) - r(x,y)) / 2`: the potential at `x`
/// when unit current enters at `y` and leaves at the grounded `z`.
pub fn voltage<S: Scalar>(g: &MetrizedGraph<S>, z: &str, x: &str, y: &str) -> Result<S> {
    let (z, x, y) = (g.index_of(z)?, g.index_of(x)?, g.index_of(y)?);
    let r = resistance_matrix(g);
    Ok(voltage_from(&r, z, x, y))
}

pub(crate) fn voltage_from<S: Scalar>(r: &Matrix<S>, z: usize, x: usize, y: usize) -> S {
    (r[(x, z)].clone() + r[(y, z)].clone() - r[(x, y)].clone()) / S::from_i64(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn triangle() -> MetrizedGraph<Rational> {
        MetrizedGraph::from_named(&["a", "b", "c"], &[("a", "b", q(1, 3)), ("b", "c", q(1, 3)), ("c", "a", q(1, 3))])
            .unwrap()
    }

    #[test]
    fn triangle_pseudo_inverse() {
        let lap = build_laplacian(&triangle()).unwrap();
        let pinv = pseudo_inverse(&lap).unwrap();
        // L = 3(3I - J), so L+ = (3I - J)/27.
        assert_eq!(pinv.matrix[(0, 0)], q(2, 27));
        assert_eq!(pinv.matrix[(0, 1)], q(-1, 27));
        assert_eq!(pinv.resistance(0, 1), q(2, 9));
        assert_eq!(pinv.trace(), q(2, 9));
    }

    #[test]
    fn laplacian_needs_optimal_vertices() {
        let g = MetrizedGraph::from_named(&["p"], &[("p", "p", q(1, 1))]).unwrap();
        assert!(matches!(build_laplacian(&g), Err(Error::NotOptimal(_))));
    }

    #[test]
    fn parallel_edges_combine() {
        let g =
            MetrizedGraph::from_named(&["p", "q"], &[("p", "q", q(1, 1)), ("p", "q", q(1, 2)), ("q", "q", q(5, 1))])
                .unwrap();
        let r = resistance_matrix(&g);
        assert_eq!(r[(0, 1)], q(1, 3));
        assert_eq!(r[(0, 0)], q(0, 1));
    }

    #[test]
    fn voltage_on_a_path() {
        let g = MetrizedGraph::from_named(&["a", "b", "c"], &[("a", "b", q(1, 1)), ("b", "c", q(2, 1))]).unwrap();
        // ground at a, current in at c: potential at b is r(a,b).
        assert_eq!(voltage(&g, "a", "b", "c").unwrap(), q(1, 1));
        assert_eq!(voltage(&g, "c", "a", "a").unwrap(), q(3, 1));
    }
}
