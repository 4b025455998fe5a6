//! Lower bounds for phi and lambda, the related inequalities, and the
//! effective Bogomolov constants derived from them.
//!
//! Every check is phrased as `lhs >= rhs`; `margin = lhs - rhs`.

mod search;

pub use search::{
    graph_hash, random_pm_graph, random_search, Extreme, SearchConfig, SearchHit, SearchSummary, RECHECK_THRESHOLD,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::PmGraph;
use crate::invariants::{invariant_report, Depth, InvariantReport};
use crate::linres::{build_laplacian, pseudo_inverse};
use crate::scalar::{sqrt_approx, Rational, Scalar};

/// Where an inequality comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Proved for every graph it applies to.
    Proved,
    /// Quoted from outside work; checked empirically here.
    Cited,
    /// A variant with no proof (edge counts in place of lengths).
    Unproven,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Proved => "proved",
            Basis::Cited => "cited",
            Basis::Unproven => "unproven",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<S> {
    Inapplicable { reason: String },
    Evaluated { lhs: S, rhs: S, margin: S, satisfied: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck<S> {
    pub name: &'static str,
    pub basis: Basis,
    pub outcome: Outcome<S>,
}

impl<S: Scalar> BoundCheck<S> {
    pub fn applicable(&self) -> bool {
        matches!(self.outcome, Outcome::Evaluated { .. })
    }

    /// `Some(false)` only for an evaluated, violated inequality.
    pub fn satisfied(&self) -> Option<bool> {
        match &self.outcome {
            Outcome::Evaluated { satisfied, .. } => Some(*satisfied),
            Outcome::Inapplicable { .. } => None,
        }
    }

    pub fn margin(&self) -> Option<&S> {
        match &self.outcome {
            Outcome::Evaluated { margin, .. } => Some(margin),
            Outcome::Inapplicable { .. } => None,
        }
    }

    pub fn convert<T: Scalar>(&self) -> BoundCheck<T> {
        let c = |x: &S| T::from_rational(&x.to_rational());
        BoundCheck {
            name: self.name,
            basis: self.basis,
            outcome: match &self.outcome {
                Outcome::Inapplicable { reason } => Outcome::Inapplicable { reason: reason.clone() },
                Outcome::Evaluated { lhs, rhs, margin, satisfied } => {
                    Outcome::Evaluated { lhs: c(lhs), rhs: c(rhs), margin: c(margin), satisfied: *satisfied }
                }
            },
        }
    }
}

/// Coefficient `t(g)` of the sharpest known `phi >= t(g) * length` for
/// irreducible graphs of pm-genus `g >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiCoefficient<S> {
    Exact(S),
    /// `(892 - 11 sqrt(79)) / 14580`, for genus three.
    GenusThree,
}

pub fn phi_coefficient<S: Scalar>(genus: u64) -> Result<PhiCoefficient<S>> {
    match genus {
        0 | 1 => Err(Error::InvalidArgument("phi coefficient needs pm-genus at least 2".into())),
        2 => Ok(PhiCoefficient::Exact(S::ratio(1, 27))),
        3 => Ok(PhiCoefficient::GenusThree),
        g => {
            let g = g as i64;
            Ok(PhiCoefficient::Exact(S::ratio((g - 1) * (g - 1), 2 * g * (7 * g + 5))))
        }
    }
}

impl<S: Scalar> PhiCoefficient<S> {
    /// The value itself; for genus three a rational lower approximation
    /// within 1e-40 on the exact backend.
    pub fn value(&self) -> S {
        match self {
            PhiCoefficient::Exact(t) => t.clone(),
            PhiCoefficient::GenusThree => {
                if S::EXACT {
                    let r = (Rational::from_i64(892) - Rational::from_i64(11) * sqrt_approx(79))
                        / Rational::from_i64(14580);
                    S::from_rational(&r)
                } else {
                    S::from_rational(&Rational::from_float((892.0 - 11.0 * 79f64.sqrt()) / 14580.0).unwrap())
                }
            }
        }
    }

    /// Decides `u >= t * w` for `w >= 0`, exactly when the backend is exact.
    pub fn dominated_by(&self, u: &S, w: &S) -> bool {
        match self {
            PhiCoefficient::Exact(t) => *u >= t.clone() * w.clone(),
            PhiCoefficient::GenusThree if !S::EXACT => *u >= self.value() * w.clone(),
            PhiCoefficient::GenusThree => {
                if w.is_zero() {
                    return !u.is_negative();
                }
                // u/w >= (892 - 11 sqrt 79)/14580  <=>  s >= -11 sqrt 79, s = 14580 u/w - 892
                let s = Rational::from_i64(14580) * u.to_rational() / w.to_rational() - Rational::from_i64(892);
                !s.is_negative() || s.clone() * s <= Rational::from_i64(121 * 79)
            }
        }
    }
}

/// Everything the bound predicates look at.
struct Inputs<S> {
    report: InvariantReport<S>,
    genus: u64,
    len: S,
    bridgeless: bool,
    irreducible: bool,
    zero_q: bool,
    /// Statistics of the minimal vertex set.
    v: usize,
    e: usize,
    min_valence: usize,
    connectivity: Option<usize>,
    equal_lengths: bool,
    banana: bool,
    complete4: bool,
    /// `Some(n)` when the given vertex set is loop-free, simple,
    /// `n`-regular with equal lengths.
    regular: Option<usize>,
    constant_q: bool,
    trace_pair: (S, S),
}

impl<S: Scalar> Inputs<S> {
    fn new(pg: &PmGraph<S>) -> Result<Self> {
        let report = invariant_report(pg, Depth::Primary)?;
        let minimal = pg.suppress_vertices();
        let mg = minimal.graph();
        let structure = mg.structure();
        let val = mg.valences();
        let equal = |g: &crate::graph::MetrizedGraph<S>| g.edges().windows(2).all(|w| w[0].len == w[1].len);
        let given = pg.graph();
        let given_val = given.valences();
        let regular =
            (given.is_optimal() && equal(given) && given_val.windows(2).all(|w| w[0] == w[1])).then(|| given_val[0]);
        let normalized = given.normalize_vertex_set();
        let lap = build_laplacian(&normalized)?;
        let pinv = pseudo_inverse(&lap)?;
        Ok(Inputs {
            genus: pg.pm_genus(),
            len: pg.total_length(),
            bridgeless: structure.bridgeless(),
            irreducible: structure.irreducible,
            zero_q: pg.has_zero_polarization(),
            v: mg.vertex_count(),
            e: mg.edge_count(),
            min_valence: val.iter().copied().min().unwrap_or(0),
            connectivity: structure.edge_connectivity,
            equal_lengths: equal(mg),
            banana: mg.vertex_count() == 2 && mg.edge_count() >= 3 && !mg.has_loops(),
            complete4: mg.vertex_count() == 4 && mg.edge_count() == 6 && mg.is_optimal(),
            regular,
            constant_q: pg.polarization().windows(2).all(|w| w[0] == w[1]),
            trace_pair: (pinv.trace(), lap.matrix.trace()),
            report,
        })
    }
}

fn k<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

struct Suite<S> {
    checks: Vec<BoundCheck<S>>,
    /// Total length; float margins within tolerance of it count as zero.
    scale: S,
}

impl<S: Scalar> Suite<S> {
    fn skip(&mut self, name: &'static str, basis: Basis, reason: &str) {
        self.checks.push(BoundCheck { name, basis, outcome: Outcome::Inapplicable { reason: reason.to_string() } });
    }

    /// Adds `lhs >= rhs` when `when` is `Ok`, otherwise records why not.
    fn add(
        &mut self,
        name: &'static str,
        basis: Basis,
        when: std::result::Result<(), &str>,
        f: impl FnOnce() -> (S, S),
    ) {
        match when {
            Err(reason) => self.skip(name, basis, reason),
            Ok(()) => {
                let (lhs, rhs) = f();
                let margin = lhs.clone() - rhs.clone();
                let satisfied = !margin.is_negative() || (!S::EXACT && lhs.close(&rhs, &self.scale));
                self.checks.push(BoundCheck {
                    name,
                    basis,
                    outcome: Outcome::Evaluated { lhs, rhs, margin, satisfied },
                });
            }
        }
    }

    /// Adds `lhs >= rest + t(g) * weight`.
    fn add_with_coefficient(
        &mut self,
        name: &'static str,
        basis: Basis,
        when: std::result::Result<(), &str>,
        genus: u64,
        f: impl FnOnce() -> (S, S, S),
    ) {
        if let Err(reason) = when {
            return self.skip(name, basis, reason);
        }
        let t = match phi_coefficient::<S>(genus) {
            Ok(t) => t,
            Err(_) => return self.skip(name, basis, "pm-genus below 2"),
        };
        let (lhs, rest, weight) = f();
        let rhs = rest.clone() + t.value() * weight.clone();
        let margin = lhs.clone() - rhs.clone();
        let satisfied = t.dominated_by(&(lhs.clone() - rest), &weight) || (!S::EXACT && lhs.close(&rhs, &self.scale));
        self.checks.push(BoundCheck { name, basis, outcome: Outcome::Evaluated { lhs, rhs, margin, satisfied } });
    }
}

fn need(ok: bool, reason: &'static str) -> std::result::Result<(), &'static str> {
    if ok {
        Ok(())
    } else {
        Err(reason)
    }
}

/// Evaluates every known inequality on `pg`.
pub fn bound_suite<S: Scalar>(pg: &PmGraph<S>) -> Result<Vec<BoundCheck<S>>> {
    let inp = Inputs::new(pg)?;
    let r = &inp.report;
    let mut s = Suite { checks: Vec::new(), scale: pg.total_length() };
    let gb = inp.genus;
    let g = k::<S>(gb as i64);
    let l = inp.len.clone();
    let (tau, theta, phi, lambda) = (r.tau.clone(), r.theta.clone(), r.phi.clone(), r.lambda.clone());
    let (x, y) = (r.x.clone(), r.y.clone());
    let v = S::from_usize(inp.v);
    let e = S::from_usize(inp.e);
    let bridgeless = need(inp.bridgeless, "graph has a bridge");
    let g2 = need(gb >= 2, "pm-genus below 2");
    let simple = bridgeless.and(need(inp.zero_q, "polarization is not zero"));

    s.add("zhang_lower", Basis::Proved, bridgeless.and(g2), || {
        (k::<S>(12) * tau.clone() + theta.clone() / (g.clone() - k(1)), l.clone())
    });
    s.add("zhang_conj_lhs", Basis::Proved, bridgeless, || {
        (r.epsilon.clone(), (g.clone() - k(1)) / (g.clone() + k(1)) * (l.clone() - k::<S>(4) * g.clone() * r.a.clone()))
    });
    let irreducible = need(inp.irreducible, "graph is reducible");
    s.add_with_coefficient("zhang_conj_rhs", Basis::Proved, irreducible.and(g2), gb, || {
        // 12 g a - (1 + 4t) l >= epsilon
        (k::<S>(12) * g.clone() * r.a.clone() - l.clone(), r.epsilon.clone(), k::<S>(4) * l.clone())
    });
    s.add_with_coefficient("phi_t", Basis::Proved, irreducible.and(g2), gb, || (phi.clone(), S::zero(), l.clone()));
    s.add("phi_t3_weak", Basis::Proved, irreducible.and(need(gb == 3, "pm-genus is not 3")), || {
        (phi.clone(), l.clone() / k(30))
    });

    // delta bounds, by length and (when different) by count
    let delta_rest = |d: &dyn Fn(u64) -> S| -> S {
        (1..=gb / 2).map(|i| S::from_i64(2 * (i * (gb - i)) as i64) / g.clone() * d(i)).sum()
    };
    let lambda_delta = |d: &dyn Fn(u64) -> S| -> S {
        g.clone() * d(0) / (k::<S>(8) * g.clone() + k(4))
            + (1..=gb / 2)
                .map(|i| S::from_i64((i * (gb - i)) as i64) / (k::<S>(2) * g.clone() + k(1)) * d(i))
                .sum::<S>()
    };
    let by_len = |i: u64| r.deltas.length.get(&i).cloned().unwrap_or_else(S::zero);
    let by_count = |i: u64| S::from_usize(r.deltas.count.get(&i).copied().unwrap_or(0));
    s.add_with_coefficient("phi_delta", Basis::Proved, g2, gb, || (phi.clone(), delta_rest(&by_len), by_len(0)));
    s.add("lambda_delta", Basis::Proved, Ok(()), || (lambda.clone(), lambda_delta(&by_len)));
    let counts_differ = r.deltas.length.iter().any(|(i, len)| *len != by_count(*i));
    let differ = need(counts_differ, "counts equal lengths");
    s.add_with_coefficient("phi_delta_count", Basis::Unproven, differ.and(g2), gb, || {
        (phi.clone(), delta_rest(&by_count), by_count(0))
    });
    s.add("lambda_delta_count", Basis::Unproven, differ, || (lambda.clone(), lambda_delta(&by_count)));

    s.add("lambda_floor", Basis::Proved, bridgeless, || {
        (lambda.clone(), g.clone() * l.clone() / (k::<S>(8) * g.clone() + k(4)))
    });

    // phi lower bounds for bridgeless graphs (minimal vertex set)
    s.add("phi_i", Basis::Proved, bridgeless, || {
        (phi.clone(), (k::<S>(2) * g.clone() + k(1)) * tau.clone() / g.clone() - l.clone() / (k::<S>(4) * g.clone()))
    });
    s.add("phi_ii", Basis::Proved, simple, || {
        (phi.clone(), (g.clone() - k(1)) * l.clone() / (k::<S>(12) * g.clone() * (g.clone() + k(1))))
    });
    s.add("phi_iii", Basis::Proved, simple, || {
        (
            phi.clone(),
            (k::<S>(4) * e.clone() - k::<S>(5) * v.clone()) * l.clone() / (k::<S>(4) * g.clone() * (v.clone() + k(6))),
        )
    });
    s.add("phi_iv", Basis::Proved, simple, || {
        (phi.clone(), (g.clone() - k(1)) * l.clone() / (k::<S>(4) * g.clone() * (g.clone() + k(2))))
    });
    let cubic = need(inp.min_valence >= 3, "a vertex has valence below 3");
    s.add("phi_v", Basis::Proved, simple.and(need(inp.equal_lengths, "edge lengths differ")).and(cubic), || {
        let tg1 = k::<S>(2) * g.clone() + k(1);
        let num = tg1.clone() * g.clone() * g.clone() * v.clone()
            + k::<S>(6) * tg1 * (v.clone() - k(1)) * (v.clone() - k(1))
            - k::<S>(3) * e.clone() * e.clone() * v.clone();
        (phi.clone(), num / (k::<S>(12) * g.clone() * v.clone() * e.clone() * e.clone()) * l.clone())
    });
    let conn = S::from_usize(inp.connectivity.unwrap_or(0));
    s.add(
        "phi_vi",
        Basis::Proved,
        simple.and(need(inp.connectivity.is_some_and(|c| c >= 4), "edge connectivity below 4")),
        || {
            let tg1 = k::<S>(2) * g.clone() + k(1);
            let dent = S::one() - k::<S>(4) / conn.clone();
            let rhs = tg1.clone() / (k::<S>(12) * g.clone()) * dent.clone() * dent * l.clone()
                + k::<S>(4) * tg1 * (conn.clone() - k(2)) * l.clone()
                    / (g.clone() * (v.clone() + k(6)) * conn.clone() * conn.clone())
                - l.clone() / (k::<S>(4) * g.clone());
            (phi.clone(), rhs)
        },
    );

    // main results: at least three vertices, valence at least 4 (resp. 3)
    let three = need(inp.v >= 3, "fewer than three vertices");
    let quartic = need(inp.min_valence >= 4, "a vertex has valence below 4");
    let m1 = simple.and(three).and(quartic);
    s.add("main1_vertices", Basis::Proved, m1, || {
        let num = k::<S>(2) * g.clone() * g.clone() * (v.clone() + k(10))
            - k::<S>(2) * g.clone() * (k::<S>(5) * v.clone() + k(2))
            - k::<S>(19) * v.clone()
            - k(16);
        let den = k::<S>(4) * g.clone() * (k::<S>(5) * g.clone() + k(4)) * (v.clone() + k(6));
        (phi.clone(), num / den * l.clone())
    });
    s.add("main1_genus", Basis::Proved, m1, || {
        let num = (k::<S>(2) * g.clone() * g.clone() + k::<S>(10) * g.clone() - k(3)) * (g.clone() - k(1));
        let den = k::<S>(4) * g.clone() * (g.clone() + k(5)) * (k::<S>(5) * g.clone() + k(4));
        (phi.clone(), num / den * l.clone())
    });
    let conn1 = need(
        inp.connectivity.is_some()
            && conn.clone() * (k::<S>(2) * g.clone() + k(7)) >= k::<S>(4) * (k::<S>(5) * g.clone() + k(4)),
        "edge connectivity below 4(5g+4)/(2g+7)",
    );
    s.add("main1_connectivity", Basis::Proved, m1.and(conn1), || {
        let c = conn.clone();
        let num = (g.clone() - k(1)) * c.clone() * c.clone() * (v.clone() + k(6))
            - k::<S>(4) * v.clone() * (k::<S>(2) * g.clone() + k(7)) * c.clone()
            + k::<S>(8) * v.clone() * (k::<S>(5) * g.clone() + k(4));
        (phi.clone(), num / (k::<S>(6) * g.clone() * (v.clone() + k(6)) * c.clone() * c) * l.clone())
    });
    s.add("main1_connectivity_genus", Basis::Proved, m1.and(conn1), || {
        let c = conn.clone();
        let dent = S::one() - k::<S>(4) / c.clone();
        let rhs = (g.clone() - k(1)) / (k::<S>(6) * g.clone()) * dent.clone() * dent
            + k::<S>(2) * (g.clone() - k(1)) * (c.clone() + k::<S>(2) * g.clone() - k(4))
                / (g.clone() * (g.clone() + k(5)) * c.clone() * c);
        (phi.clone(), rhs * l.clone())
    });
    let m2 = simple.and(three).and(cubic);
    s.add("main2_vertices", Basis::Proved, m2, || {
        let num = g.clone() * g.clone() * (v.clone() + k(14))
            - k::<S>(2) * g.clone() * (k::<S>(3) * v.clone() + k(2))
            - k::<S>(7) * v.clone()
            - k(10);
        let den = k::<S>(2) * g.clone() * (k::<S>(7) * g.clone() + k(5)) * (v.clone() + k(6));
        (phi.clone(), num / den * l.clone())
    });
    s.add("main2_genus", Basis::Proved, m2, || {
        let g1 = g.clone() - k(1);
        (phi.clone(), g1.clone() * g1 / (k::<S>(2) * g.clone() * (k::<S>(7) * g.clone() + k(5))) * l.clone())
    });
    let conn2 = need(
        inp.connectivity.is_some() && conn.clone() * (g.clone() + k(2)) >= k::<S>(7) * g.clone() + k(5),
        "edge connectivity below (7g+5)/(g+2)",
    );
    s.add("main2_connectivity", Basis::Proved, m2.and(conn2), || {
        let c = conn.clone();
        let num = (g.clone() - k(1)) * (v.clone() + k(6)) * c.clone() * c.clone()
            - k::<S>(8) * v.clone() * (g.clone() + k(2)) * c.clone()
            + k::<S>(4) * v.clone() * (k::<S>(7) * g.clone() + k(5));
        (phi.clone(), num / (k::<S>(6) * g.clone() * (v.clone() + k(6)) * c.clone() * c) * l.clone())
    });
    s.add("main2_connectivity_genus", Basis::Proved, m2.and(conn2), || {
        let c = conn.clone();
        let dent = S::one() - k::<S>(4) / c.clone();
        let g1 = g.clone() - k(1);
        let rhs = g1.clone() / (k::<S>(6) * g.clone()) * dent.clone() * dent
            + k::<S>(2) * g1.clone() * g1 / (g.clone() * (g.clone() + k(2)) * c.clone() * c);
        (phi.clone(), rhs * l.clone())
    });

    // x and y
    let v3 = simple.and(three);
    s.add("phi_xy_valence3", Basis::Proved, v3.and(cubic), || {
        let rhs = (g.clone() - k(1)) * l.clone() / (k::<S>(6) * g.clone())
            - (g.clone() + k(2)) * x.clone() / (k::<S>(3) * g.clone())
            + (k::<S>(5) * g.clone() + k(1)) * y.clone() / (k::<S>(6) * g.clone());
        (phi.clone(), rhs)
    });
    s.add("phi_xy_valence4", Basis::Proved, v3.and(quartic), || {
        let rhs = (g.clone() - k(1)) * l.clone() / (k::<S>(6) * g.clone())
            - (k::<S>(2) * g.clone() + k(7)) * x.clone() / (k::<S>(6) * g.clone())
            + (k::<S>(8) * g.clone() + k(1)) * y.clone() / (k::<S>(6) * g.clone());
        (phi.clone(), rhs)
    });
    s.add("lambda_xy_valence3", Basis::Proved, v3.and(cubic), || {
        let d = k::<S>(8) * g.clone() + k(4);
        (lambda.clone(), (g.clone() * l.clone() + g.clone() * y.clone() - x.clone()) / d)
    });
    s.add("lambda_xy_valence4", Basis::Proved, v3.and(quartic), || {
        let d = k::<S>(8) * g.clone() + k(4);
        (
            lambda.clone(),
            g.clone() * l.clone() / d + (g.clone() * y.clone() - x.clone()) / (k::<S>(4) * g.clone() + k(2)),
        )
    });

    // regular graphs with equal edge lengths, on the given vertex set
    let reg = inp.regular;
    s.add(
        "lm_regular",
        Basis::Proved,
        need(reg.is_some(), "not a regular simple graph with equal lengths")
            .and(need(inp.constant_q, "polarization not constant")),
        || {
            let n = S::from_usize(reg.unwrap_or(0));
            let vv = S::from_usize(pg.graph().vertex_count());
            let num = vv.clone() * vv.clone() * vv.clone() * (n.clone() * n.clone() + k::<S>(2) * n.clone() - k(14))
                - vv.clone() * vv.clone() * (k::<S>(16) * n.clone() - k(68))
                + k::<S>(6) * vv.clone() * (k::<S>(2) * n.clone() - k(15))
                + k(36);
            (phi.clone(), num / (k::<S>(6) * n.clone() * n * vv.clone() * vv.clone() * vv) * l.clone())
        },
    );
    s.add(
        "regular_equal",
        Basis::Proved,
        need(reg.is_some_and(|n| n >= 3), "not a regular simple graph of valence at least 3 with equal lengths")
            .and(simple)
            .and(need(pg.graph().vertex_count() >= 3, "fewer than three vertices")),
        || {
            let nn = reg.unwrap_or(0) as i64;
            let n = k::<S>(nn);
            let vv = S::from_usize(pg.graph().vertex_count());
            let v2 = vv.clone() * vv.clone();
            let v3 = v2.clone() * vv.clone();
            let rhs = if nn == 3 {
                (k::<S>(4) * v3.clone() * vv.clone() - k::<S>(8) * v3.clone() + k::<S>(91) * v2.clone()
                    - k::<S>(222) * vv.clone()
                    + k(144))
                    / (k::<S>(54) * v3 * (vv + k(2)))
            } else {
                let num = v3.clone()
                    * vv.clone()
                    * (n.clone() * n.clone() - k::<S>(4) * n.clone() + k(10))
                    * (n.clone() - k(2))
                    + k::<S>(4) * v3.clone() * (n.clone() * n.clone() - n.clone() - k(11))
                    - v2.clone() * (k::<S>(74) * n.clone() - k(364))
                    + k::<S>(12) * vv.clone() * (k::<S>(5) * n.clone() - k(43))
                    + k(216);
                num / (k::<S>(6) * n.clone() * n.clone() * v3 * (vv * (n - k(2)) + k(2)))
            };
            (phi.clone(), rhs * l.clone())
        },
    );

    s.add("banana_phi", Basis::Proved, simple.and(need(inp.banana, "minimal graph is not a banana")), || {
        let g1 = g.clone() + k(1);
        (phi.clone(), g.clone() * (g.clone() - k(1)) / (k::<S>(6) * g1.clone() * g1) * l.clone())
    });
    s.add(
        "beta_13x23y",
        Basis::Proved,
        simple.and(need(inp.complete4, "minimal graph is not a complete graph on four vertices")),
        || {
            // the direction its proof establishes; the reverse fails at equal lengths
            (l.clone() + k::<S>(23) * y.clone(), k::<S>(13) * x.clone())
        },
    );

    // quoted inequalities
    s.add("xy_region_sum", Basis::Cited, bridgeless, || (l.clone(), x.clone() + y.clone()));
    s.add(
        "xy_region_connectivity",
        Basis::Cited,
        bridgeless.and(need(inp.connectivity.is_some(), "single vertex")),
        || (x.clone(), (conn.clone() - k(1)) * y.clone()),
    );
    let genus_plain = S::from_usize(pg.graph().genus());
    s.add("xy_region_genus", Basis::Cited, bridgeless, || (genus_plain.clone() * y.clone(), x.clone()));
    s.add("xy_region_parabola", Basis::Cited, bridgeless, || {
        let sxy = x.clone() + y.clone();
        (y.clone() * l.clone(), (v.clone() + k(6)) * sxy.clone() * sxy / (k::<S>(4) * v.clone()))
    });
    s.add("tau_upper", Basis::Cited, Ok(()), || (l.clone() / k(4), tau.clone()));
    s.add("tau_upper_bridgeless", Basis::Cited, bridgeless, || (l.clone() / k(12), tau.clone()));
    s.add("theta_upper", Basis::Cited, g2, || {
        let g1 = g.clone() - k(1);
        (k::<S>(8) * g1.clone() * g1 * tau.clone(), theta.clone())
    });
    s.add("trace_inequality", Basis::Cited, Ok(()), || {
        let n1 = S::from_usize(pg.graph().normalize_vertex_set().vertex_count()) - k(1);
        let (tp, tl) = inp.trace_pair.clone();
        if tl.is_zero() {
            (S::zero(), S::zero())
        } else {
            (tp, n1.clone() * n1 / tl)
        }
    });
    Ok(s.checks)
}

/// Effective Bogomolov constants of a fibration from its singular fibers.
#[derive(Clone, Debug, PartialEq)]
pub struct Bogomolov<S> {
    /// Lower bound `r0` for the radius in the effective Bogomolov conjecture.
    pub r0: S,
    /// Lower bound for the admissible self-intersection `a`.
    pub a_bound: S,
}

/// `r0` and the `a` bound from summed `delta_i` (by length).
pub fn bogomolov_from_deltas<S: Scalar>(deltas: &BTreeMap<u64, S>, genus: u64, smooth: bool) -> Result<Bogomolov<S>> {
    if genus < 2 {
        return Err(Error::InvalidArgument("genus must be at least 2".into()));
    }
    let g = S::from_i64(genus as i64);
    if smooth {
        return Ok(Bogomolov { r0: k::<S>(12) * (g.clone() - k(1)), a_bound: k::<S>(3) / (g - k(1)) });
    }
    let t = phi_coefficient::<S>(genus)?.value();
    let d = |i: u64| deltas.get(&i).cloned().unwrap_or_else(S::zero);
    let bracket =
        t * d(0) + (1..=genus / 2).map(|i| S::from_i64(2 * (i * (genus - i)) as i64) / g.clone() * d(i)).sum::<S>();
    let g1 = g.clone() - k(1);
    let tg1 = k::<S>(2) * g + k(1);
    Ok(Bogomolov {
        r0: k::<S>(2) * g1.clone() * g1 / tg1.clone() * bracket.clone(),
        a_bound: bracket / (k::<S>(2) * tg1),
    })
}

/// `r0` and the `a` bound for a fibration whose singular fibers have the
/// given dual pm-graphs, each of pm-genus `genus`.
pub fn effective_bogomolov<S: Scalar>(components: &[PmGraph<S>], genus: u64, smooth: bool) -> Result<Bogomolov<S>> {
    let mut deltas: BTreeMap<u64, S> = BTreeMap::new();
    for pg in components {
        if pg.pm_genus() != genus {
            return Err(Error::InvalidArgument(format!("component has pm-genus {} instead of {genus}", pg.pm_genus())));
        }
        for (i, len) in pg.type_deltas().length {
            let slot = deltas.entry(i).or_insert_with(S::zero);
            *slot = slot.clone() + len;
        }
    }
    bogomolov_from_deltas(&deltas, genus, smooth)
}
