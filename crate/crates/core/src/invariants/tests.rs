use super::*;
use crate::families::{family_reference, make_family, FamilySpec};
use crate::graph::{Edge, MetrizedGraph, PmGraph};
use crate::linres::{oracle_matrix, resistance_matrix};
use crate::scalar::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Tau as a quarter of the integral of the squared slope of `x -> r(p, x)`.
/// Along an edge that function is quadratic, so its values at both ends and
/// the midpoint (found by actually subdividing) determine the integral.
fn tau_by_integration(g: &MetrizedGraph<Rational>, p: usize) -> Rational {
    let mut total = q(0, 1);
    for (k, e) in g.edges().iter().enumerate() {
        let mut ids = g.ids().to_vec();
        ids.push("mid".into());
        let m = ids.len() - 1;
        let half = e.len.clone() / q(2, 1);
        let mut edges: Vec<Edge<Rational>> =
            g.edges().iter().enumerate().filter(|(j, _)| *j != k).map(|(_, e)| e.clone()).collect();
        edges.push(Edge { u: e.u, v: m, len: half.clone() });
        edges.push(Edge { u: m, v: e.v, len: half });
        let h = MetrizedGraph::new(ids, edges).unwrap();
        let r = resistance_matrix(&h);
        let (f0, f1, f2) = (r[(p, e.u)].clone(), r[(p, m)].clone(), r[(p, e.v)].clone());
        let l = e.len.clone();
        // f(x) = f0 + alpha x + beta x^2 / 2 on [0, L]
        let beta = q(4, 1) * (f0.clone() - q(2, 1) * f1.clone() + f2.clone()) / (l.clone() * l.clone());
        let alpha = (f2 - f0) / l.clone() - beta.clone() * l.clone() / q(2, 1);
        let integral = alpha.clone() * alpha.clone() * l.clone()
            + alpha * beta.clone() * l.clone() * l.clone()
            + beta.clone() * beta * l.clone() * l.clone() * l / q(3, 1);
        total += integral;
    }
    total / q(4, 1)
}

fn theta_by_enumeration(pg: &PmGraph<Rational>) -> Rational {
    let r = oracle_matrix(pg.graph()).unwrap();
    let k = pg.canonical_weights();
    let mut total = q(0, 1);
    for x in 0..k.len() {
        for y in 0..k.len() {
            total += Rational::from_i64(k[x] * k[y]) * r[(x, y)].clone();
        }
    }
    total
}

fn families() -> Vec<FamilySpec<Rational>> {
    vec![
        FamilySpec::Circle { length: q(3, 2) },
        FamilySpec::Bouquet { lengths: vec![q(1, 2), q(1, 3), q(1, 7)] },
        FamilySpec::Banana { lengths: vec![q(1, 3), q(1, 3), q(1, 3)] },
        FamilySpec::Banana { lengths: vec![q(1, 2), q(2, 3), q(1, 5), q(3, 4)] },
        FamilySpec::CompleteEqual { vertices: 4, total: q(1, 1) },
        FamilySpec::CompleteEqual { vertices: 5, total: q(2, 1) },
        FamilySpec::Necklace { vertices: 3, multiplicity: 2, total: q(1, 1) },
        FamilySpec::Necklace { vertices: 4, multiplicity: 3, total: q(1, 1) },
        FamilySpec::Genus3Gamma { lengths: [q(1, 2), q(1, 3), q(1, 5), q(2, 7), q(3, 4), q(1, 9)] },
        FamilySpec::Genus3Beta { lengths: [q(1, 2), q(1, 3), q(1, 5), q(2, 7), q(3, 4), q(1, 9)] },
    ]
}

#[test]
fn tau_routes_match_integration() {
    for spec in families() {
        let pg = make_family(&spec).unwrap();
        let g = pg.graph();
        let expected = tau_by_integration(g, 0);
        for &m in TauMethod::ALL {
            assert_eq!(tau(g, m).unwrap(), expected, "{} via {m}", spec.kind());
        }
    }
}

#[test]
fn theta_routes_match_enumeration() {
    for spec in families() {
        let pg = make_family(&spec).unwrap();
        let expected = theta_by_enumeration(&pg);
        for &m in ThetaMethod::ALL {
            assert_eq!(theta(&pg, m).unwrap(), expected, "{} via {m}", spec.kind());
        }
    }
}

#[test]
fn families_match_closed_forms() {
    for spec in families() {
        let pg = make_family(&spec).unwrap();
        let report = invariant_report(&pg, Depth::Full).unwrap();
        let reference = family_reference(&spec).unwrap();
        let rows = crate::families::compare_reference(&pg, &reference, &report).unwrap();
        for row in rows {
            assert!(row.matches, "{} {}: expected {} got {}", spec.kind(), row.quantity, row.expected, row.computed);
        }
    }
}

#[test]
fn k4_values() {
    let pg = make_family(&FamilySpec::CompleteEqual { vertices: 4, total: q(1, 1) }).unwrap();
    let r = invariant_report(&pg, Depth::Full).unwrap();
    assert_eq!(r.tau, q(5, 96));
    assert_eq!(r.theta, q(1, 1));
    assert_eq!(r.epsilon, q(11, 36));
    assert_eq!(r.a, q(37, 864));
    assert_eq!(r.phi, q(17, 288));
    assert_eq!(r.lambda, q(25, 224));
}

#[test]
fn bridges_add_a_quarter_of_their_length() {
    let loops =
        MetrizedGraph::from_named(&["a", "b"], &[("a", "a", q(1, 2)), ("a", "b", q(1, 3)), ("b", "b", q(1, 5))])
            .unwrap();
    let expected = q(1, 24) + q(1, 12) + q(1, 60);
    assert_eq!(tau(&loops, TauMethod::Edges).unwrap(), expected);
    assert_eq!(tau(&loops, TauMethod::Laplacian).unwrap(), expected);
    assert_eq!(tau_by_integration(&loops, 1), expected);
    assert!(tau(&loops, TauMethod::Crossterm).is_err());
}

#[test]
fn polarized_routes_agree() {
    let g = MetrizedGraph::from_named(
        &["a", "b", "c"],
        &[("a", "b", q(1, 2)), ("b", "c", q(1, 3)), ("c", "a", q(1, 4)), ("a", "b", q(1, 6))],
    )
    .unwrap();
    let pg = PmGraph::new(g, vec![1, 0, 2]).unwrap();
    let report = invariant_report(&pg, Depth::Full).unwrap();
    assert!(report.audit.iter().any(|m| m.invariant == "phi" && m.method == "direct"));
    assert!(report.audit.iter().any(|m| m.invariant == "lambda" && m.method == "direct"));
    assert_eq!(report.theta, theta_by_enumeration(&pg));
    // phi = 3 g a - (epsilon + length) / 4
    let g = Rational::from_i64(pg.pm_genus() as i64);
    let lhs = q(3, 1) * g * report.a.clone() - (report.epsilon.clone() + report.total_length.clone()) / q(4, 1);
    assert_eq!(report.phi, lhs);
}
