use std::sync::OnceLock;

use super::{LambdaRoute, PhiRoute, TauMethod, ThetaMethod};
use crate::error::{Error, Result};
use crate::graph::{MetrizedGraph, PmGraph};
use crate::linres::{build_laplacian, pseudo_inverse, CircuitContext, EdgeCircuit, PseudoInverse};
use crate::scalar::Scalar;

/// Cached evaluation state for one pm-graph.
///
/// Holds the resistance data of the graph as given and, on demand, of its
/// normalized vertex set (needed by the Laplacian and contraction routes).
pub struct Analysis<S> {
    q: Vec<u32>,
    ctx: CircuitContext<S>,
    normalized: OnceLock<Normalized<S>>,
    tau: OnceLock<S>,
    theta: OnceLock<S>,
    sums: OnceLock<ContractionSums<S>>,
}

struct Normalized<S> {
    q: Vec<u32>,
    ctx: CircuitContext<S>,
    pinv: PseudoInverse<S>,
}

fn n<S: Scalar>(k: i64) -> S {
    S::from_i64(k)
}

impl<S: Scalar> Analysis<S> {
    pub fn new(pg: PmGraph<S>) -> Self {
        let q = pg.polarization().to_vec();
        Self::build(pg.graph(), q)
    }

    /// Analysis of a bare metrized graph (zero polarization, no
    /// effectiveness check); only tau and resistance data are meaningful.
    pub fn from_graph(g: MetrizedGraph<S>) -> Self {
        let q = vec![0; g.vertex_count()];
        Self::build(&g, q)
    }

    fn build(g: &MetrizedGraph<S>, q: Vec<u32>) -> Self {
        Analysis {
            q,
            ctx: CircuitContext::new(g),
            normalized: OnceLock::new(),
            tau: OnceLock::new(),
            theta: OnceLock::new(),
            sums: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &MetrizedGraph<S> {
        self.ctx.graph()
    }

    pub fn context(&self) -> &CircuitContext<S> {
        &self.ctx
    }

    pub fn pm_genus(&self) -> u64 {
        self.graph().genus() as u64 + self.q.iter().map(|&x| x as u64).sum::<u64>()
    }

    fn normalized(&self) -> &Normalized<S> {
        self.normalized.get_or_init(|| {
            let g = self.graph().normalize_vertex_set();
            let mut q = self.q.clone();
            q.resize(g.vertex_count(), 0);
            let lap = build_laplacian(&g).expect("normalized vertex set is optimal");
            let pinv = pseudo_inverse(&lap).expect("Laplacian pseudo-inverse exists for connected graphs");
            Normalized { q, ctx: CircuitContext::new(&g), pinv }
        })
    }

    fn require_bridgeless(&self, method: &str) -> Result<()> {
        if self.ctx.is_bridgeless() {
            Ok(())
        } else {
            Err(Error::precondition(method, "graph has a bridge"))
        }
    }

    fn require_zero_polarization(&self, method: &str) -> Result<()> {
        if self.q.iter().all(|&x| x == 0) {
            Ok(())
        } else {
            Err(Error::precondition(method, "polarization is not identically zero"))
        }
    }

    /// Normalized context for contraction routes: bridgeless, at least three vertices.
    fn contraction_context(&self, method: &str) -> Result<&CircuitContext<S>> {
        self.require_bridgeless(method)?;
        let nctx = &self.normalized().ctx;
        if nctx.graph().vertex_count() < 3 {
            return Err(Error::precondition(method, "fewer than three vertices after normalizing"));
        }
        Ok(nctx)
    }

    fn sums(&self, method: &str) -> Result<&ContractionSums<S>> {
        self.require_zero_polarization(method)?;
        let nctx = self.contraction_context(method)?;
        Ok(self.sums.get_or_init(|| ContractionSums::new(nctx)))
    }

    /// Tau based at the first vertex.
    pub fn tau(&self, method: TauMethod) -> Result<S> {
        self.tau_at(method, 0)
    }

    /// Tau based at vertex `base`; only the edge and crossterm routes use the base.
    pub fn tau_at(&self, method: TauMethod, base: usize) -> Result<S> {
        if base >= self.graph().vertex_count() {
            return Err(Error::VertexOutOfRange(base));
        }
        match method {
            TauMethod::Edges => Ok(tau_edges_at(&self.ctx, base)),
            TauMethod::Laplacian => {
                let nz = self.normalized();
                Ok(tau_laplacian(nz.ctx.graph(), &nz.pinv))
            }
            TauMethod::Crossterm => {
                self.require_bridgeless("tau crossterm")?;
                Ok(tau_crossterm_at(&self.ctx, base))
            }
            TauMethod::Contraction => {
                let nctx = self.contraction_context("tau contraction")?;
                Ok(tau_contraction(nctx))
            }
        }
    }

    fn primary_tau(&self) -> S {
        self.tau.get_or_init(|| tau_edges_at(&self.ctx, 0)).clone()
    }

    fn primary_theta(&self) -> S {
        self.theta
            .get_or_init(|| {
                let nz = self.normalized();
                theta_definition(nz.ctx.graph(), &nz.q, &nz.pinv)
            })
            .clone()
    }

    pub fn theta(&self, method: ThetaMethod) -> Result<S> {
        let name = format!("theta {method}");
        match method {
            ThetaMethod::Definition => Ok(self.primary_theta()),
            ThetaMethod::Second => {
                self.require_bridgeless(&name)?;
                self.require_zero_polarization(&name)?;
                Ok(theta_second(&self.ctx))
            }
            ThetaMethod::Third | ThetaMethod::Fourth => {
                let sums = self.sums(&name)?;
                Ok(if method == ThetaMethod::Third { sums.theta_third() } else { sums.theta_fourth() })
            }
        }
    }

    pub fn epsilon(&self) -> Result<S> {
        let g = n::<S>(self.pm_genus() as i64);
        Ok((n::<S>(4) * g.clone() - n(4)) * self.primary_tau() / g.clone() + self.primary_theta() / (n::<S>(2) * g))
    }

    pub fn a(&self) -> Result<S> {
        let g = n::<S>(self.pm_genus() as i64);
        let g2 = g.clone() * g.clone();
        Ok((n::<S>(2) * g - n(1)) * self.primary_tau() / g2.clone() + self.primary_theta() / (n::<S>(8) * g2))
    }

    pub fn phi(&self, route: PhiRoute) -> Result<S> {
        let g = n::<S>(self.pm_genus() as i64);
        let len = self.graph().total_length();
        let name = format!("phi {route}");
        match route {
            PhiRoute::TauTheta => Ok((n::<S>(5) * g.clone() - n(2)) * self.primary_tau() / g.clone()
                + self.primary_theta() / (n::<S>(4) * g)
                - len / n(4)),
            PhiRoute::Direct => {
                self.require_bridgeless(&name)?;
                let extra = self.polarized_stem_terms();
                Ok((n::<S>(2) * g.clone() + n(1)) * self.primary_tau() / g.clone() - len / (n::<S>(4) * g.clone())
                    + extra / (n::<S>(2) * g))
            }
            PhiRoute::Contraction | PhiRoute::ContractionCubic => {
                let sums = self.sums(&name)?;
                Ok(if route == PhiRoute::Contraction { sums.phi_valence4() } else { sums.phi_valence3() })
            }
        }
    }

    pub fn lambda(&self, route: LambdaRoute) -> Result<S> {
        let g = n::<S>(self.pm_genus() as i64);
        let len = self.graph().total_length();
        let name = format!("lambda {route}");
        let d = n::<S>(16) * g.clone() + n(8);
        match route {
            LambdaRoute::TauTheta => Ok((n::<S>(3) * g.clone() - n(3)) * self.primary_tau()
                / (n::<S>(4) * g.clone() + n(2))
                + self.primary_theta() / d.clone()
                + (g + n(1)) * len / d),
            LambdaRoute::Direct => {
                self.require_bridgeless(&name)?;
                let extra = self.polarized_stem_terms();
                let d = n::<S>(8) * g.clone() + n(4);
                Ok(g * len / d.clone() + extra / d)
            }
            LambdaRoute::Contraction | LambdaRoute::ContractionCubic => {
                let sums = self.sums(&name)?;
                Ok(if route == LambdaRoute::Contraction { sums.lambda_valence4() } else { sums.lambda_valence3() })
            }
        }
    }

    /// `sum_{p,x} K(p) q(x) r(p,x) + sum_p K(p) stem_sum(p)` on the given vertex set.
    fn polarized_stem_terms(&self) -> S {
        let val = self.ctx.valences();
        let k: Vec<i64> = val.iter().zip(&self.q).map(|(&v, &w)| v as i64 - 2 + 2 * w as i64).collect();
        let mut total = S::zero();
        for (p, &kp) in k.iter().enumerate() {
            if kp == 0 {
                continue;
            }
            let mut inner = stem_sum(&self.ctx, p);
            for (x, &qx) in self.q.iter().enumerate() {
                if qx != 0 {
                    inner = inner + n::<S>(qx as i64) * self.ctx.resistance(p, x);
                }
            }
            total = total + n::<S>(kp) * inner;
        }
        total
    }

    /// `(x, y)` on the given vertex set based at `base`.
    pub fn xy_at(&self, base: usize) -> (S, S) {
        xy_at(&self.ctx, base)
    }
}

/// `(L, complement, arm_u, arm_v, stem)` for each non-bridge edge.
fn cycles<S: Scalar>(ctx: &CircuitContext<S>, p: usize) -> impl Iterator<Item = (S, S, S, S, S)> + '_ {
    ctx.graph().edges().iter().enumerate().filter_map(move |(k, e)| match ctx.circuit(k, p) {
        EdgeCircuit::Cycle { complement, arm_u, arm_v, stem } => Some((e.len.clone(), complement, arm_u, arm_v, stem)),
        EdgeCircuit::Bridge { .. } => None,
    })
}

fn bridge_length<S: Scalar>(ctx: &CircuitContext<S>) -> S {
    ctx.graph().edges().iter().enumerate().filter(|(k, _)| ctx.is_bridge(*k)).map(|(_, e)| e.len.clone()).sum()
}

fn tau_edges_at<S: Scalar>(ctx: &CircuitContext<S>, p: usize) -> S {
    let cyc: S = cycles(ctx, p)
        .map(|(l, r, au, av, _)| {
            let s = l.clone() + r;
            let d = au - av;
            (l.clone() * l.clone() * l.clone() + n::<S>(3) * l * d.clone() * d) / (s.clone() * s)
        })
        .sum();
    (cyc + n::<S>(3) * bridge_length(ctx)) / n(12)
}

fn stem_sum<S: Scalar>(ctx: &CircuitContext<S>, p: usize) -> S {
    cycles(ctx, p).map(|(l, r, _, _, stem)| l.clone() * stem / (l + r)).sum()
}

fn middle_sum<S: Scalar>(ctx: &CircuitContext<S>, p: usize) -> S {
    cycles(ctx, p).map(|(l, r, au, av, stem)| (au * av + r.clone() * stem) / (l + r)).sum()
}

/// `sum_x (valence(x) - shift) f(x)`.
fn valence_weighted<S: Scalar>(ctx: &CircuitContext<S>, shift: i64, f: impl Fn(usize) -> S) -> S {
    ctx.valences()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v as i64 != shift)
        .map(|(x, &v)| n::<S>(v as i64 - shift) * f(x))
        .sum()
}

/// `sum L R / (L + R)` with bridges contributing `L`.
fn sum_lr<S: Scalar>(ctx: &CircuitContext<S>) -> S {
    let cyc: S = cycles(ctx, 0).map(|(l, r, ..)| l.clone() * r.clone() / (l + r)).sum();
    cyc + bridge_length(ctx)
}

fn tau_crossterm_at<S: Scalar>(ctx: &CircuitContext<S>, p: usize) -> S {
    let len = ctx.graph().total_length();
    len / n(12) - valence_weighted(ctx, 2, |x| ctx.resistance(p, x)) / n(6) + stem_sum(ctx, p) / n(3)
}

fn tau_laplacian<S: Scalar>(g: &MetrizedGraph<S>, pinv: &PseudoInverse<S>) -> S {
    let m = &pinv.matrix;
    let mut total = S::zero();
    for e in g.edges() {
        let l = e.len.clone();
        let gap = l.clone() - pinv.resistance(e.u, e.v);
        let tilt = m[(e.u, e.u)].clone() - m[(e.v, e.v)].clone();
        total = total + gap.clone() * gap / (n::<S>(12) * l.clone()) + tilt.clone() * tilt / (n::<S>(4) * l);
    }
    total + pinv.trace() / S::from_usize(g.vertex_count())
}

fn theta_definition<S: Scalar>(g: &MetrizedGraph<S>, q: &[u32], pinv: &PseudoInverse<S>) -> S {
    let k: Vec<(usize, i64)> = g
        .valences()
        .iter()
        .zip(q)
        .map(|(&v, &w)| v as i64 - 2 + 2 * w as i64)
        .enumerate()
        .filter(|(_, k)| *k != 0)
        .collect();
    let mut total = S::zero();
    for (i, &(x, kx)) in k.iter().enumerate() {
        for &(y, ky) in &k[..i] {
            total = total + n::<S>(2 * kx * ky) * pinv.resistance(x, y);
        }
    }
    total
}

fn theta_second<S: Scalar>(ctx: &CircuitContext<S>) -> S {
    let g = ctx.graph();
    let genus = n::<S>(g.genus() as i64);
    let v = S::from_usize(g.vertex_count());
    (n::<S>(2) * genus - n(2)) * sum_lr(ctx)
        + n::<S>(2) * valence_weighted(ctx, 2, |x| middle_sum(ctx, x))
        + n::<S>(2) * valence_weighted(ctx, 4, |x| stem_sum(ctx, x))
        + n::<S>(12) * v.clone() * tau_edges_at(ctx, 0)
        - v * g.total_length()
}

fn tau_contraction<S: Scalar>(ctx: &CircuitContext<S>) -> S {
    let v2 = S::from_usize(ctx.graph().vertex_count()) - n(2);
    ctx.graph().total_length() / n(12) - valence_weighted(ctx, 2, |x| middle_sum(ctx, x)) / (n::<S>(6) * v2.clone())
        + contraction_term(ctx) / (n::<S>(3) * v2)
}

/// `sum_i R_i / (L_i + R_i) * contraction_sum(i)`.
fn contraction_term<S: Scalar>(ctx: &CircuitContext<S>) -> S {
    ctx.graph()
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_loop())
        .map(|(i, e)| {
            let r = ctx.deleted_resistance(i, e.u, e.v);
            r.clone() / (e.len.clone() + r) * ctx.contraction_sum(i)
        })
        .sum()
}

/// The building blocks shared by the contraction routes on a normalized,
/// bridgeless graph with zero polarization.
struct ContractionSums<S> {
    genus: S,
    len: S,
    tau: S,
    lr: S,
    contraction: S,
    stem3: S,
    stem4: S,
}

impl<S: Scalar> ContractionSums<S> {
    fn new(ctx: &CircuitContext<S>) -> Self {
        let stems: Vec<S> = (0..ctx.graph().vertex_count()).map(|x| stem_sum(ctx, x)).collect();
        ContractionSums {
            genus: n(ctx.graph().genus() as i64),
            len: ctx.graph().total_length(),
            tau: tau_edges_at(ctx, 0),
            lr: sum_lr(ctx),
            contraction: contraction_term(ctx),
            stem3: valence_weighted(ctx, 3, |x| stems[x].clone()),
            stem4: valence_weighted(ctx, 4, |x| stems[x].clone()),
        }
    }

    fn theta_third(&self) -> S {
        let g = self.genus.clone();
        n::<S>(-2) * self.len.clone()
            + n::<S>(24) * self.tau.clone()
            + (n::<S>(2) * g - n(2)) * self.lr.clone()
            + n::<S>(4) * self.contraction.clone()
            + n::<S>(2) * self.stem4.clone()
    }

    fn theta_fourth(&self) -> S {
        let g3 = self.genus.clone() - n(3);
        g3.clone() * self.len.clone() / n(2) - n::<S>(6) * g3 * self.tau.clone()
            + (self.genus.clone() - n(1)) * self.lr.clone()
            + n::<S>(2) * self.contraction.clone()
            + n::<S>(2) * self.stem3.clone()
    }

    fn phi_valence4(&self) -> S {
        let g = self.genus.clone();
        (n::<S>(5) * g.clone() + n(4)) / g.clone() * self.tau.clone()
            - (g.clone() + n(2)) / (n::<S>(4) * g.clone()) * self.len.clone()
            + (g.clone() - n(1)) / (n::<S>(2) * g.clone()) * self.lr.clone()
            + self.contraction.clone() / g.clone()
            + self.stem4.clone() / (n::<S>(2) * g)
    }

    fn phi_valence3(&self) -> S {
        let g = self.genus.clone();
        (n::<S>(7) * g.clone() + n(5)) / (n::<S>(2) * g.clone()) * self.tau.clone()
            - (g.clone() + n(3)) / (n::<S>(8) * g.clone()) * self.len.clone()
            + (g.clone() - n(1)) / (n::<S>(4) * g.clone()) * self.lr.clone()
            + self.contraction.clone() / (n::<S>(2) * g.clone())
            + self.stem3.clone() / (n::<S>(2) * g)
    }

    fn lambda_valence4(&self) -> S {
        let g = self.genus.clone();
        let d = n::<S>(8) * g.clone() + n(4);
        (n::<S>(3) * g.clone() + n(3)) / (n::<S>(4) * g.clone() + n(2)) * self.tau.clone()
            + (g.clone() - n(1)) / (n::<S>(16) * g.clone() + n(8)) * self.len.clone()
            + (g.clone() - n(1)) / d.clone() * self.lr.clone()
            + self.contraction.clone() / (n::<S>(4) * g + n(2))
            + self.stem4.clone() / d
    }

    fn lambda_valence3(&self) -> S {
        let g = self.genus.clone();
        let d = n::<S>(8) * g.clone() + n(4);
        (n::<S>(3) * g.clone() + n(3)) / d.clone() * self.tau.clone()
            + (n::<S>(3) * g.clone() - n(1)) / (n::<S>(16) * (n::<S>(2) * g.clone() + n(1))) * self.len.clone()
            + (g - n(1)) / (n::<S>(16) * self.genus.clone() + n(8)) * self.lr.clone()
            + self.contraction.clone() / d.clone()
            + self.stem3.clone() / d
    }
}

pub(crate) fn xy_at<S: Scalar>(ctx: &CircuitContext<S>, p: usize) -> (S, S) {
    let (mut x, mut y) = (S::zero(), S::zero());
    let q34 = S::ratio(3, 4);
    let q14 = S::ratio(1, 4);
    for (l, r, au, av, _) in cycles(ctx, p) {
        let s2 = (l.clone() + r.clone()) * (l.clone() + r.clone());
        let lr2 = l.clone() * r.clone() * r.clone() / s2.clone();
        let d = au - av;
        let skew = l.clone() * d.clone() * d / s2.clone();
        x = x + l.clone() * l * r / s2 + q34.clone() * lr2.clone() - q34.clone() * skew.clone();
        y = y + q14.clone() * lr2 + q34.clone() * skew;
    }
    (x, y + bridge_length(ctx))
}

pub(crate) fn genus_residual<S: Scalar>(ctx: &CircuitContext<S>) -> (S, S) {
    let g = ctx.graph();
    let bridges = g.edges().iter().enumerate().filter(|(k, _)| ctx.is_bridge(*k)).count();
    let (mut a, mut b) = (S::zero(), S::from_usize(bridges));
    for (l, r, ..) in cycles(ctx, 0) {
        let s = l.clone() + r.clone();
        a = a + l / s.clone();
        b = b + r / s;
    }
    (a - S::from_usize(g.genus()), b - S::from_usize(g.vertex_count() - 1))
}
