//! Identity suite: every relation between the invariants that must hold
//! exactly, evaluated on one pm-graph.

use crate::bounds::{bound_suite, Basis};
use crate::error::{Error, Result};
use crate::graph::{Deletion, PmGraph};
use crate::invariants::{
    genus_identity_residual, invariant_report, loop_attachment_shift, Analysis, Depth, InvariantReport, TauMethod,
};
use crate::linres::{
    build_laplacian, oracle_matrix, pseudo_inverse, resistance_matrix, CircuitContext, EdgeCircuit, ORACLE_EDGE_CAP,
};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl VerifyItem {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        VerifyItem { name: name.into(), passed, detail: detail.into() }
    }
}

pub fn all_passed(items: &[VerifyItem]) -> bool {
    items.iter().all(|i| i.passed)
}

/// Runs the whole suite. Disagreements between routes are reported as
/// failed items; malformed input is an error.
pub fn verify_graph<S: Scalar>(pg: &PmGraph<S>) -> Result<Vec<VerifyItem>> {
    let scale = pg.total_length();
    let mut items = Vec::new();

    let report = match invariant_report(pg, Depth::Full) {
        Ok(r) => {
            items.push(VerifyItem::new("cross_formula", true, format!("{} route values agree", r.audit.len())));
            r
        }
        Err(e @ Error::Disagreement { .. }) => {
            items.push(VerifyItem::new("cross_formula", false, e.to_string()));
            invariant_report(pg, Depth::Primary)?
        }
        Err(e) => return Err(e),
    };

    let g = pg.graph();
    let (ra, rb) = genus_identity_residual(g);
    let zero = S::zero();
    items.push(VerifyItem::new(
        "genus_identity",
        ra.close(&zero, &S::one()) && rb.close(&zero, &S::one()),
        format!("residuals {} and {}", ra.render(), rb.render()),
    ));

    items.push(xy_identities(pg, &scale));
    items.push(moore_penrose(pg)?);
    items.push(oracle(pg, &scale)?);
    items.push(circuits(pg, &scale)?);
    items.push(normalize_invariance(pg, &report, &scale)?);
    items.push(loop_shift(pg, &report, &scale)?);

    // tau vanishes only on a point; phi is positive from pm-genus 2 on
    let has_length = scale.is_positive();
    let positive = !report.tau.is_negative()
        && report.tau.is_positive() == has_length
        && !report.epsilon.is_negative()
        && (pg.pm_genus() < 2 || !has_length || report.phi.is_positive());
    items.push(VerifyItem::new(
        "positivity",
        positive,
        format!("tau {} epsilon {} phi {}", report.tau.render(), report.epsilon.render(), report.phi.render()),
    ));

    let checks = bound_suite(pg)?;
    let failed: Vec<&str> =
        checks.iter().filter(|c| c.basis == Basis::Proved && c.satisfied() == Some(false)).map(|c| c.name).collect();
    let applied = checks.iter().filter(|c| c.basis == Basis::Proved && c.applicable()).count();
    items.push(VerifyItem::new(
        "proved_bounds",
        failed.is_empty(),
        if failed.is_empty() {
            format!("{applied} applicable proved bounds hold")
        } else {
            format!("violated: {}", failed.join(", "))
        },
    ));
    Ok(items)
}

/// `tau = l/12 - x/6 + y/6` and `x + y = sum L R/(L + R)` at every base.
fn xy_identities<S: Scalar>(pg: &PmGraph<S>, scale: &S) -> VerifyItem {
    let an = Analysis::from_graph(pg.graph().clone());
    let ctx = an.context();
    let g = pg.graph();
    let tau = an.tau(TauMethod::Edges).expect("edge route always applies");
    let lr: S = (0..g.edge_count())
        .map(|k| match ctx.circuit(k, 0) {
            EdgeCircuit::Bridge { .. } => g.edges()[k].len.clone(),
            EdgeCircuit::Cycle { complement, .. } => {
                let l = g.edges()[k].len.clone();
                l.clone() * complement.clone() / (l + complement)
            }
        })
        .sum();
    let mut bad = Vec::new();
    for p in 0..g.vertex_count() {
        let (x, y) = an.xy_at(p);
        let predicted = scale.clone() / S::from_i64(12) - x.clone() / S::from_i64(6) + y.clone() / S::from_i64(6);
        if !predicted.close(&tau, scale) || !(x + y).close(&lr, scale) {
            bad.push(g.id(p).to_string());
        }
    }
    VerifyItem::new(
        "xy_identities",
        bad.is_empty(),
        if bad.is_empty() {
            format!("hold at all {} base vertices", g.vertex_count())
        } else {
            format!("fail at {}", bad.join(", "))
        },
    )
}

fn moore_penrose<S: Scalar>(pg: &PmGraph<S>) -> Result<VerifyItem> {
    let normalized = pg.graph().normalize_vertex_set();
    let lap = build_laplacian(&normalized)?;
    let pinv = pseudo_inverse(&lap)?;
    let (l, p) = (&lap.matrix, &pinv.matrix);
    let lp = l.mul(p);
    let n = l.dim();
    let scale = S::one();
    let ok = l.mul(p).mul(l).close(l, &scale)
        && p.mul(l).mul(p).close(p, &scale)
        && lp.is_symmetric_close(&scale)
        && p.mul(l).is_symmetric_close(&scale)
        && (0..n).all(|i| p.row(i).iter().cloned().sum::<S>().close(&S::zero(), &scale));
    let r = resistance_matrix(&normalized);
    let resist = (0..n).all(|x| (0..n).all(|y| pinv.resistance(x, y).close(&r[(x, y)], &normalized.total_length())));
    Ok(VerifyItem::new(
        "moore_penrose",
        ok && resist,
        format!("{n} x {n} Laplacian; pseudo-inverse identities {ok}, resistances {resist}"),
    ))
}

fn oracle<S: Scalar>(pg: &PmGraph<S>, scale: &S) -> Result<VerifyItem> {
    match oracle_matrix(pg.graph()) {
        Ok(m) => {
            let ok = m.close(&resistance_matrix(pg.graph()), scale);
            Ok(VerifyItem::new("spanning_tree_oracle", ok, "resistances match tree and forest counts"))
        }
        Err(Error::TooLarge { edges, .. }) => Ok(VerifyItem::new(
            "spanning_tree_oracle",
            true,
            format!("skipped: {edges} edges above the cap of {ORACLE_EDGE_CAP}"),
        )),
        Err(e) => Err(e),
    }
}

/// Rank-one deletion and contraction updates against direct solves, and
/// the Y-network relations.
fn circuits<S: Scalar>(pg: &PmGraph<S>, scale: &S) -> Result<VerifyItem> {
    let g = pg.graph();
    let ctx = CircuitContext::new(g);
    let n = g.vertex_count();
    let mut bad = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        if !ctx.is_bridge(k) {
            if let Deletion::Connected(h) = g.delete_edge(k)? {
                let r = resistance_matrix(&h);
                if !(0..n).all(|x| (0..n).all(|y| ctx.deleted_resistance(k, x, y).close(&r[(x, y)], scale))) {
                    bad.push(format!("delete {k}"));
                }
            }
            for p in 0..n {
                if let EdgeCircuit::Cycle { complement, arm_u, arm_v, stem } = ctx.circuit(k, p) {
                    let sum_ok = (arm_u.clone() + arm_v.clone()).close(&complement, scale);
                    let nonneg = [&arm_u, &arm_v, &stem].iter().all(|x| !x.is_negative() || x.close(&S::zero(), scale));
                    if !sum_ok || !nonneg {
                        bad.push(format!("circuit {k}@{}", g.id(p)));
                    }
                }
            }
        }
        let h = g.contract_edge(k)?;
        let r = resistance_matrix(&h);
        let at = |x: usize| h.index_of(g.id(if x == e.v { e.u } else { x }));
        for x in 0..n {
            for y in 0..n {
                if !ctx.contracted_resistance(k, x, y).close(&r[(at(x)?, at(y)?)], scale) {
                    bad.push(format!("contract {k}"));
                }
            }
        }
    }
    bad.dedup();
    Ok(VerifyItem::new(
        "circuit_updates",
        bad.is_empty(),
        if bad.is_empty() { format!("{} edges", g.edge_count()) } else { bad.join(", ") },
    ))
}

fn same_invariants<S: Scalar>(a: &InvariantReport<S>, b: &InvariantReport<S>, scale: &S) -> bool {
    a.fields().iter().zip(b.fields()).all(|((_, x), (_, y))| x.close(&y, scale))
}

/// Subdividing edges or suppressing valence-two vertices changes nothing.
fn normalize_invariance<S: Scalar>(pg: &PmGraph<S>, report: &InvariantReport<S>, scale: &S) -> Result<VerifyItem> {
    let normalized = invariant_report(&pg.normalize_vertex_set(), Depth::Primary)?;
    let suppressed = invariant_report(&pg.suppress_vertices(), Depth::Primary)?;
    let ok = same_invariants(report, &normalized, scale) && same_invariants(report, &suppressed, scale);
    Ok(VerifyItem::new("vertex_set_invariance", ok, "normalized and suppressed vertex sets"))
}

/// Attaching `q(p)` small loops in place of the polarization shifts each
/// invariant by a known multiple of the added length.
fn loop_shift<S: Scalar>(pg: &PmGraph<S>, report: &InvariantReport<S>, scale: &S) -> Result<VerifyItem> {
    if pg.has_zero_polarization() {
        return Ok(VerifyItem::new("loop_attachment", true, "skipped: polarization is zero"));
    }
    let eps = scale.clone() / S::from_i64(7);
    let shifted = invariant_report(&pg.attach_loops(&eps)?, Depth::Primary)?;
    let d = loop_attachment_shift(pg, &eps);
    let pairs = [
        (&report.tau, &shifted.tau, &d.tau),
        (&report.theta, &shifted.theta, &d.theta),
        (&report.epsilon, &shifted.epsilon, &d.epsilon),
        (&report.a, &shifted.a, &d.a),
        (&report.phi, &shifted.phi, &d.phi),
        (&report.lambda, &shifted.lambda, &d.lambda),
    ];
    let ok = pairs.iter().all(|(before, after, delta)| ((*before).clone() + (*delta).clone()).close(after, scale));
    Ok(VerifyItem::new("loop_attachment", ok, format!("loops of length {}", eps.render())))
}

impl<S: Scalar> Matrix<S> {
    fn is_symmetric_close(&self, scale: &S) -> bool {
        self.close(&self.transpose(), scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, FamilySpec};
    use crate::graph::MetrizedGraph;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn assert_all(items: &[VerifyItem]) {
        for i in items {
            assert!(i.passed, "{}: {}", i.name, i.detail);
        }
    }

    #[test]
    fn families_pass() {
        for spec in [
            FamilySpec::CompleteEqual { vertices: 4, total: q(1, 1) },
            FamilySpec::Genus3Beta { lengths: std::array::from_fn(|_| q(1, 6)) },
            FamilySpec::Necklace { vertices: 3, multiplicity: 2, total: q(1, 1) },
            FamilySpec::Bouquet { lengths: vec![q(1, 2), q(1, 3)] },
        ] {
            assert_all(&verify_graph(&make_family(&spec).unwrap()).unwrap());
        }
    }

    #[test]
    fn polarized_graph_with_bridge_passes() {
        let g = MetrizedGraph::from_named(
            &["a", "b", "c", "d"],
            &[("a", "b", q(1, 2)), ("b", "c", q(1, 3)), ("c", "a", q(1, 4)), ("c", "d", q(2, 5)), ("a", "a", q(1, 7))],
        )
        .unwrap();
        let pg = PmGraph::new(g, vec![0, 1, 0, 2]).unwrap();
        let items = verify_graph(&pg).unwrap();
        assert_all(&items);
        assert!(items.iter().any(|i| i.name == "loop_attachment" && !i.detail.starts_with("skipped")));
    }

    #[test]
    fn float_backend_passes() {
        let pg = make_family(&FamilySpec::CompleteEqual { vertices: 5, total: q(1, 1) }).unwrap();
        assert_all(&verify_graph(&pg.convert::<f64>()).unwrap());
    }
}
