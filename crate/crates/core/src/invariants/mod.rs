//! Tau, theta, epsilon, a, phi and lambda of polarized metrized graphs.
//!
//! Each of tau, theta, phi and lambda can be computed along several
//! independent routes. [`invariant_report`] evaluates every applicable route
//! and fails loudly if any two disagree.

mod analysis;
mod report;

pub use analysis::Analysis;
pub use report::{invariant_report, Depth, InvariantReport, MethodValue};

use std::fmt;

use crate::error::Result;
use crate::graph::{MetrizedGraph, PmGraph};
use crate::scalar::Scalar;

macro_rules! methods {
    ($(#[$doc:meta])* $name:ident { $($(#[$vdoc:meta])* $variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name { $($(#[$vdoc])* $variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl std::str::FromStr for $name {
            type Err = crate::error::Error;
            fn from_str(s: &str) -> Result<Self> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|m| m.name() == s)
                    .ok_or_else(|| crate::error::Error::InvalidArgument(format!("unknown method {s:?}")))
            }
        }
    };
}

methods! {
    /// Ways of computing tau.
    TauMethod {
        /// Sum over edges of the circuit data; works with bridges.
        Edges => "edges",
        /// Laplacian pseudo-inverse on the normalized vertex set.
        Laplacian => "laplacian",
        /// Resistances from a base vertex plus stem terms; bridgeless only.
        Crossterm => "crossterm",
        /// Sums over all single-edge contractions; bridgeless only.
        Contraction => "contraction",
    }
}

methods! {
    /// Ways of computing theta.
    ThetaMethod {
        /// Double sum of canonical weights against resistances.
        Definition => "definition",
        /// Edge sums plus tau; bridgeless, zero polarization.
        Second => "second",
        /// Contraction sums; bridgeless, zero polarization.
        Third => "third",
        /// Contraction sums weighted by valence minus three.
        Fourth => "fourth",
    }
}

methods! {
    /// Ways of computing phi.
    PhiRoute {
        /// From tau, theta and the total length.
        TauTheta => "tau_theta",
        /// Polarization and stem sums; bridgeless.
        Direct => "direct",
        /// Contraction sums with valence minus four; bridgeless, zero polarization.
        Contraction => "contraction",
        /// Contraction sums with valence minus three.
        ContractionCubic => "contraction_cubic",
    }
}

methods! {
    /// Ways of computing lambda.
    LambdaRoute {
        TauTheta => "tau_theta",
        Direct => "direct",
        Contraction => "contraction",
        ContractionCubic => "contraction_cubic",
    }
}

/// Tau of a metrized graph, based at its first vertex where relevant.
pub fn tau<S: Scalar>(g: &MetrizedGraph<S>, method: TauMethod) -> Result<S> {
    Analysis::from_graph(g.clone()).tau(method)
}

/// Theta of a pm-graph.
pub fn theta<S: Scalar>(pg: &PmGraph<S>, method: ThetaMethod) -> Result<S> {
    Analysis::new(pg.clone()).theta(method)
}

pub fn epsilon<S: Scalar>(pg: &PmGraph<S>) -> Result<S> {
    Analysis::new(pg.clone()).epsilon()
}

/// The invariant `a`.
pub fn a_invariant<S: Scalar>(pg: &PmGraph<S>) -> Result<S> {
    Analysis::new(pg.clone()).a()
}

pub fn phi<S: Scalar>(pg: &PmGraph<S>, route: PhiRoute) -> Result<S> {
    Analysis::new(pg.clone()).phi(route)
}

pub fn lambda<S: Scalar>(pg: &PmGraph<S>, route: LambdaRoute) -> Result<S> {
    Analysis::new(pg.clone()).lambda(route)
}

/// The pair `(x, y)` on the vertex set of `g`, based at its first vertex.
pub fn xy<S: Scalar>(g: &MetrizedGraph<S>) -> (S, S) {
    analysis::xy_at(&crate::linres::CircuitContext::new(g), 0)
}

/// `(sum L/(L+R) - genus, sum R/(L+R) - (v - 1))`; both vanish.
pub fn genus_identity_residual<S: Scalar>(g: &MetrizedGraph<S>) -> (S, S) {
    analysis::genus_residual(&crate::linres::CircuitContext::new(g))
}

/// Predicted change of each invariant when `q(p)` loops of length `eps`
/// are attached at every vertex and the polarization is dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopShift<S> {
    pub tau: S,
    pub theta: S,
    pub epsilon: S,
    pub a: S,
    pub phi: S,
    pub lambda: S,
}

pub fn loop_attachment_shift<S: Scalar>(pg: &PmGraph<S>, eps: &S) -> LoopShift<S> {
    let g = S::from_i64(pg.pm_genus() as i64);
    let m = eps.clone() * S::from_i64(pg.total_q() as i64);
    let n = |k: i64| S::from_i64(k);
    LoopShift {
        tau: m.clone() / n(12),
        theta: S::zero(),
        epsilon: m.clone() * (g.clone() - n(1)) / (n(3) * g.clone()),
        a: m.clone() * (n(2) * g.clone() - n(1)) / (n(12) * g.clone() * g.clone()),
        phi: m.clone() * (g.clone() - n(1)) / (n(6) * g.clone()),
        lambda: m * g.clone() / (n(8) * g + n(4)),
    }
}

#[cfg(test)]
mod tests;
