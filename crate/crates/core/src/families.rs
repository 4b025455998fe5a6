//! Standard graph families and their closed-form invariants.

use crate::error::{Error, Result};
use crate::graph::{Edge, MetrizedGraph, PmGraph};
use crate::invariants::InvariantReport;
use crate::scalar::Scalar;

/// Parameters of a family member. All members have zero polarization.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec<S> {
    /// One vertex with one loop.
    Circle { length: S },
    /// One vertex with one loop per length.
    Bouquet { lengths: Vec<S> },
    /// Two vertices joined by one edge per length.
    Banana { lengths: Vec<S> },
    /// Complete graph on `vertices` vertices, all edges of equal length.
    CompleteEqual { vertices: usize, total: S },
    /// Cycle on `vertices` vertices with every edge replaced by
    /// `multiplicity` parallel edges, all of equal length.
    Necklace { vertices: usize, multiplicity: usize, total: S },
    /// Cubic genus-3 graph on `p, q, s, t`: `a = pq`, `b = st`, `c, d`
    /// parallel between `p` and `s`, `e, f` parallel between `q` and `t`.
    Genus3Gamma { lengths: [S; 6] },
    /// Complete graph on `p, q, s, t`: `a = pq`, `b = ps`, `c = pt`,
    /// `d = qs`, `e = qt`, `f = st`.
    Genus3Beta { lengths: [S; 6] },
}

impl<S: Scalar> FamilySpec<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Circle { .. } => "circle",
            FamilySpec::Bouquet { .. } => "bouquet",
            FamilySpec::Banana { .. } => "banana",
            FamilySpec::CompleteEqual { .. } => "complete_equal",
            FamilySpec::Necklace { .. } => "necklace",
            FamilySpec::Genus3Gamma { .. } => "genus3_gamma",
            FamilySpec::Genus3Beta { .. } => "genus3_beta",
        }
    }

    /// Same family member in another backend.
    pub fn convert<T: Scalar>(&self) -> FamilySpec<T> {
        let c = |x: &S| T::from_rational(&x.to_rational());
        let six = |l: &[S; 6]| [c(&l[0]), c(&l[1]), c(&l[2]), c(&l[3]), c(&l[4]), c(&l[5])];
        match self {
            FamilySpec::Circle { length } => FamilySpec::Circle { length: c(length) },
            FamilySpec::Bouquet { lengths } => FamilySpec::Bouquet { lengths: lengths.iter().map(c).collect() },
            FamilySpec::Banana { lengths } => FamilySpec::Banana { lengths: lengths.iter().map(c).collect() },
            FamilySpec::CompleteEqual { vertices, total } => {
                FamilySpec::CompleteEqual { vertices: *vertices, total: c(total) }
            }
            FamilySpec::Necklace { vertices, multiplicity, total } => {
                FamilySpec::Necklace { vertices: *vertices, multiplicity: *multiplicity, total: c(total) }
            }
            FamilySpec::Genus3Gamma { lengths } => FamilySpec::Genus3Gamma { lengths: six(lengths) },
            FamilySpec::Genus3Beta { lengths } => FamilySpec::Genus3Beta { lengths: six(lengths) },
        }
    }
}

fn bad(msg: &str) -> Error {
    Error::InvalidArgument(msg.to_string())
}

fn graph<S: Scalar>(ids: Vec<String>, edges: Vec<(usize, usize, S)>) -> Result<PmGraph<S>> {
    let edges = edges.into_iter().map(|(u, v, len)| Edge { u, v, len }).collect();
    PmGraph::simple(MetrizedGraph::new(ids, edges)?)
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub fn make_family<S: Scalar>(spec: &FamilySpec<S>) -> Result<PmGraph<S>> {
    match spec {
        FamilySpec::Circle { length } => graph(names(&["p"]), vec![(0, 0, length.clone())]),
        FamilySpec::Bouquet { lengths } => {
            if lengths.is_empty() {
                return Err(bad("bouquet needs at least one loop"));
            }
            graph(names(&["p"]), lengths.iter().map(|l| (0, 0, l.clone())).collect())
        }
        FamilySpec::Banana { lengths } => {
            if lengths.len() < 2 {
                return Err(bad("banana needs at least two edges"));
            }
            graph(names(&["p", "q"]), lengths.iter().map(|l| (0, 1, l.clone())).collect())
        }
        FamilySpec::CompleteEqual { vertices, total } => {
            let v = *vertices;
            if v < 3 {
                return Err(bad("complete graph needs at least three vertices"));
            }
            let len = total.clone() / S::from_usize(v * (v - 1) / 2);
            let mut edges = Vec::new();
            for i in 0..v {
                for j in i + 1..v {
                    edges.push((i, j, len.clone()));
                }
            }
            graph((1..=v).map(|i| format!("p{i}")).collect(), edges)
        }
        FamilySpec::Necklace { vertices, multiplicity, total } => {
            let (v, m) = (*vertices, *multiplicity);
            if v < 3 || m < 1 {
                return Err(bad("necklace needs at least three vertices and multiplicity one"));
            }
            let len = total.clone() / S::from_usize(v * m);
            let mut edges = Vec::new();
            for i in 0..v {
                for _ in 0..m {
                    edges.push((i, (i + 1) % v, len.clone()));
                }
            }
            graph((1..=v).map(|i| format!("p{i}")).collect(), edges)
        }
        FamilySpec::Genus3Gamma { lengths: [a, b, c, d, e, f] } => graph(
            names(&["p", "q", "s", "t"]),
            vec![
                (0, 1, a.clone()),
                (2, 3, b.clone()),
                (0, 2, c.clone()),
                (0, 2, d.clone()),
                (1, 3, e.clone()),
                (1, 3, f.clone()),
            ],
        ),
        FamilySpec::Genus3Beta { lengths: [a, b, c, d, e, f] } => graph(
            names(&["p", "q", "s", "t"]),
            vec![
                (0, 1, a.clone()),
                (0, 2, b.clone()),
                (0, 3, c.clone()),
                (1, 2, d.clone()),
                (1, 3, e.clone()),
                (2, 3, f.clone()),
            ],
        ),
    }
}

/// Known values of a family member; `None` where no closed form is known.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceValues<S> {
    pub tau: Option<S>,
    pub theta: Option<S>,
    pub phi: Option<S>,
    pub lambda: Option<S>,
    /// `x` and `y` on the minimal vertex set.
    pub x: Option<S>,
    pub y: Option<S>,
    /// Closed-form resistances between named vertices.
    pub resistances: Vec<(String, String, S)>,
}

impl<S> Default for ReferenceValues<S> {
    fn default() -> Self {
        ReferenceValues { tau: None, theta: None, phi: None, lambda: None, x: None, y: None, resistances: Vec::new() }
    }
}

fn k<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

pub fn family_reference<S: Scalar>(spec: &FamilySpec<S>) -> Result<ReferenceValues<S>> {
    make_family(spec)?;
    let mut out = ReferenceValues::default();
    match spec {
        FamilySpec::Circle { length } => {
            out.tau = Some(length.clone() / k(12));
            out.theta = Some(S::zero());
            out.phi = Some(S::zero());
            out.lambda = Some(length.clone() / k(12));
            out.x = Some(S::zero());
            out.y = Some(S::zero());
        }
        FamilySpec::Bouquet { lengths } => {
            let len: S = lengths.iter().cloned().sum();
            let g = S::from_usize(lengths.len());
            out.tau = Some(len.clone() / k(12));
            out.theta = Some(S::zero());
            out.phi = Some((g.clone() - k(1)) * len.clone() / (k::<S>(6) * g.clone()));
            out.lambda = Some(g.clone() * len / (k::<S>(8) * g + k(4)));
            out.x = Some(S::zero());
            out.y = Some(S::zero());
        }
        FamilySpec::Banana { lengths } => {
            let len: S = lengths.iter().cloned().sum();
            let e = S::from_usize(lengths.len());
            let g = e.clone() - k(1);
            let s: S = lengths.iter().map(|l| S::one() / l.clone()).sum();
            let two_g1 = k::<S>(2) * g.clone() + k(1);
            out.tau = Some(len.clone() / k(12) - (e.clone() - k(2)) / (k::<S>(6) * s.clone()));
            out.theta = Some(k::<S>(2) * (e.clone() - k(2)) * (e.clone() - k(2)) / s.clone());
            out.phi = Some(
                (g.clone() - k(1)) * len.clone() / (k::<S>(6) * g.clone())
                    - (g.clone() - k(1)) * two_g1 / (k::<S>(6) * g.clone() * s.clone()),
            );
            out.lambda = Some(g.clone() * len / (k::<S>(8) * g.clone() + k(4)));
            if lengths.len() > 2 {
                out.x = Some(g / s.clone());
                out.y = Some(S::one() / s.clone());
            }
            out.resistances.push(("p".into(), "q".into(), S::one() / s));
        }
        FamilySpec::CompleteEqual { vertices, total } => {
            let v = S::from_usize(*vertices);
            let l = total.clone();
            let one_m = S::one() - k::<S>(2) / v.clone();
            out.tau =
                Some((one_m.clone() * one_m / k(12) + k::<S>(2) / (v.clone() * v.clone() * v.clone())) * l.clone());
            let v3 = v.clone() - k(3);
            out.theta = Some(k::<S>(4) * v3.clone() * v3.clone() / v.clone() * l.clone());
            if *vertices > 3 {
                let v2 = v.clone() * v.clone();
                out.phi = Some(
                    (v.clone() - k(2)) * v3 * (v2.clone() + k::<S>(6) * v.clone() - k(6))
                        / (k::<S>(6) * v2.clone() * v.clone() * (v.clone() - k(1)))
                        * l.clone(),
                );
                out.lambda = Some(
                    (v2.clone() * v.clone() + v2.clone() - k::<S>(12) * v.clone() + k(18)) * (v.clone() - k(2))
                        / (k::<S>(8) * v2.clone() * (v2 - k::<S>(3) * v + k(3)))
                        * l,
                );
            }
            let e = S::from_usize(vertices * (vertices - 1) / 2);
            let r = (S::from_usize(*vertices) - k(1)) / (e.clone() * e) * total.clone();
            out.resistances.push(("p1".into(), "p2".into(), r));
        }
        FamilySpec::Necklace { vertices, multiplicity, total } => {
            let v = S::from_usize(*vertices);
            let m = S::from_usize(*multiplicity);
            let l = total.clone();
            let m1 = m.clone() - k(1);
            let m2 = m.clone() * m.clone();
            out.tau = Some(
                ((m1.clone() * m1.clone() + k(1)) / (k::<S>(12) * m2.clone())
                    + m1.clone() / (k::<S>(6) * v.clone() * m2.clone()))
                    * l.clone(),
            );
            out.theta = Some(
                k::<S>(2) * m1.clone() * m1.clone() * (v.clone() * v.clone() - k(1)) / (k::<S>(3) * m2.clone())
                    * l.clone(),
            );
            let v2 = v.clone() - k(2);
            out.phi = Some(
                m1.clone() * (v2.clone() * v2 + m.clone() * v.clone() - k(1)) / (k::<S>(6) * m2.clone() * v.clone())
                    * l.clone(),
            );
            let num = v.clone() * v.clone() * m1.clone() * m1.clone()
                + k::<S>(3) * v.clone() * m1.clone() * (m2.clone() - m.clone() + k(1))
                + k::<S>(5) * m2.clone()
                - k::<S>(4) * m
                + k(2);
            let den = k::<S>(12) * m2.clone() * (k::<S>(2) * m1 * v.clone() + k(3));
            out.lambda = Some(num / den * l.clone());
            for i in 1..*vertices {
                let i_s = S::from_usize(i);
                let r = i_s.clone() * (v.clone() - i_s) * l.clone() / (m2.clone() * v.clone() * v.clone());
                out.resistances.push((format!("p{vertices}"), format!("p{i}"), r));
            }
        }
        FamilySpec::Genus3Gamma { lengths } => gamma_reference(lengths, &mut out),
        FamilySpec::Genus3Beta { lengths } => beta_reference(lengths, &mut out),
    }
    Ok(out)
}

fn gamma_reference<S: Scalar>(lengths: &[S; 6], out: &mut ReferenceValues<S>) {
    let [a, b, c, d, e, f] = lengths.clone();
    let len: S = lengths.iter().cloned().sum();
    let ab = a.clone() + b.clone();
    let cd = c.clone() + d.clone();
    let ef = e.clone() + f.clone();
    let big_m = (cd.clone() * ab.clone() + c.clone() * d.clone()) * ef.clone() + cd.clone() * e.clone() * f.clone();
    // recurring pieces
    let pair = c.clone() * d.clone() * ef.clone() + cd.clone() * e.clone() * f.clone();
    let cross = a.clone() * b.clone() * cd.clone() * ef.clone();
    let all4 = c.clone() * d.clone() * e.clone() * f.clone();

    out.tau = Some(
        len.clone() / k(12) - (ab.clone() * pair.clone() + k::<S>(2) * all4.clone()) / (k::<S>(6) * big_m.clone()),
    );
    out.theta = Some(
        (k::<S>(6) * ab.clone() * pair.clone() + k::<S>(8) * cross.clone() + k::<S>(8) * all4.clone()) / big_m.clone(),
    );
    out.phi = Some(
        len.clone() / k(9)
            - (k::<S>(2) * ab.clone() * pair.clone() - k::<S>(6) * cross.clone() + k::<S>(7) * all4.clone())
                / (k::<S>(9) * big_m.clone()),
    );
    out.lambda = Some(
        k::<S>(3) * len / k(28)
            + (k::<S>(4) * cross.clone() + ab.clone() * pair.clone()) / (k::<S>(28) * big_m.clone()),
    );
    out.x = Some((k::<S>(2) * ab.clone() * pair.clone() + cross.clone() + k::<S>(3) * all4.clone()) / big_m.clone());
    out.y = Some((ab.clone() * pair + cross + all4) / big_m.clone());

    let m = big_m;
    let r = |num: S| num / m.clone();
    let res = vec![
        (
            "p",
            "q",
            r(a.clone()
                * ((b.clone() * cd.clone() + c.clone() * d.clone()) * ef.clone() + e.clone() * f.clone() * cd.clone())),
        ),
        (
            "p",
            "t",
            r((b.clone() * c.clone() + b.clone() * d.clone() + c.clone() * d.clone())
                * (a.clone() * e.clone() + a.clone() * f.clone() + e.clone() * f.clone())),
        ),
        ("p", "s", r(c.clone() * d.clone() * ((ab.clone() + f.clone()) * e.clone() + ab.clone() * f.clone()))),
        ("q", "t", r(((ab.clone() + d.clone()) * c.clone() + ab.clone() * d.clone()) * e.clone() * f.clone())),
        (
            "q",
            "s",
            r((a.clone() * cd.clone() + c.clone() * d.clone()) * (b.clone() * ef.clone() + e.clone() * f.clone())),
        ),
        (
            "s",
            "t",
            r(b.clone()
                * (a.clone() * cd.clone() * ef.clone()
                    + c.clone() * d.clone() * ef.clone()
                    + e.clone() * f.clone() * cd)),
        ),
    ];
    out.resistances = res.into_iter().map(|(x, y, v)| (x.to_string(), y.to_string(), v)).collect();
}

fn beta_reference<S: Scalar>(lengths: &[S; 6], out: &mut ReferenceValues<S>) {
    let [a, b, c, d, e, f] = lengths.clone();
    let len: S = lengths.iter().cloned().sum();
    let p = |xs: &[&S]| xs.iter().fold(S::one(), |acc, x| acc * (*x).clone());
    let (a, b, c, d, e, f) = (&a, &b, &c, &d, &e, &f);
    let big_n = [
        p(&[a, b, d]),
        p(&[a, c, d]),
        p(&[b, c, d]),
        p(&[a, b, e]),
        p(&[a, c, e]),
        p(&[b, c, e]),
        p(&[b, d, e]),
        p(&[c, d, e]),
        p(&[a, b, f]),
        p(&[a, c, f]),
        p(&[b, c, f]),
        p(&[a, d, f]),
        p(&[c, d, f]),
        p(&[a, e, f]),
        p(&[b, e, f]),
        p(&[d, e, f]),
    ]
    .into_iter()
    .sum::<S>();
    let cdef = p(&[c, d, e, f]);
    let tau_num = cdef.clone()
        + b.clone()
            * (c.clone() * d.clone() * (k::<S>(2) * e.clone() + f.clone())
                + (c.clone() + d.clone()) * e.clone() * f.clone())
        + a.clone()
            * (c.clone() * d.clone() * (e.clone() + k::<S>(2) * f.clone())
                + (c.clone() + d.clone()) * e.clone() * f.clone())
        + a.clone()
            * b.clone()
            * (c.clone() * (d.clone() + e.clone() + f.clone())
                + d.clone() * e.clone()
                + d.clone() * f.clone()
                + k::<S>(2) * e.clone() * f.clone());
    out.tau = Some(len.clone() / k(12) - tau_num / (k::<S>(6) * big_n.clone()));

    let six = k::<S>(6);
    let eight = k::<S>(8);
    let theta_num = six.clone() * cdef.clone()
        + b.clone()
            * (eight.clone() * p(&[c, d, e])
                + six.clone() * (c.clone() * d.clone() + c.clone() * e.clone() + d.clone() * e.clone()) * f.clone())
        + a.clone()
            * (c.clone()
                * (six.clone() * d.clone() * e.clone()
                    + (eight.clone() * d.clone() + six.clone() * e.clone()) * f.clone())
                + six.clone() * p(&[d, e, f])
                + b.clone()
                    * (six.clone() * c.clone() * (d.clone() + e.clone() + f.clone())
                        + six.clone() * d.clone() * e.clone()
                        + (six.clone() * d.clone() + eight * e.clone()) * f.clone()));
    out.theta = Some(theta_num / big_n.clone());

    let y_num = [
        p(&[a, b, c, d]),
        p(&[a, b, c, e]),
        p(&[a, b, d, e]),
        p(&[a, c, d, e]),
        p(&[b, c, d, e]),
        p(&[a, b, c, f]),
        p(&[a, b, d, f]),
        p(&[a, c, d, f]),
        p(&[b, c, d, f]),
        p(&[a, b, e, f]),
        p(&[a, c, e, f]),
        p(&[b, c, e, f]),
        p(&[a, d, e, f]),
        p(&[b, d, e, f]),
        p(&[c, d, e, f]),
    ]
    .into_iter()
    .sum::<S>();
    let y = y_num / big_n.clone();
    let x = k::<S>(2) * y.clone() + (p(&[b, c, d, e]) + p(&[a, c, d, f]) + p(&[a, b, e, f])) / big_n.clone();
    out.phi = Some(len.clone() / k(9) - k::<S>(5) * x.clone() / k(9) + k::<S>(8) * y.clone() / k(9));
    let lambda_num = cdef
        + b.clone() * (p(&[d, e, f]) + c.clone() * (d.clone() * f.clone() + e.clone() * f.clone()))
        + a.clone()
            * (p(&[d, e, f])
                + c.clone() * (d.clone() * e.clone() + e.clone() * f.clone())
                + b.clone()
                    * (d.clone() * e.clone()
                        + d.clone() * f.clone()
                        + c.clone() * (d.clone() + e.clone() + f.clone())));
    out.lambda = Some(k::<S>(3) * len / k(28) + lambda_num / (k::<S>(28) * big_n));
    out.x = Some(x);
    out.y = Some(y);
}

/// One line of a reference comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceRow<S> {
    pub quantity: String,
    pub expected: S,
    pub computed: S,
    pub matches: bool,
}

/// Compares closed forms with a computed report and the graph's resistances.
pub fn compare_reference<S: Scalar>(
    pg: &PmGraph<S>,
    reference: &ReferenceValues<S>,
    report: &InvariantReport<S>,
) -> Result<Vec<ReferenceRow<S>>> {
    let scale = report.total_length.clone();
    let mut rows = Vec::new();
    let mut push = |name: String, expected: &Option<S>, computed: &S| {
        if let Some(e) = expected {
            rows.push(ReferenceRow {
                matches: e.close(computed, &scale),
                quantity: name,
                expected: e.clone(),
                computed: computed.clone(),
            });
        }
    };
    push("tau".into(), &reference.tau, &report.tau);
    push("theta".into(), &reference.theta, &report.theta);
    push("phi".into(), &reference.phi, &report.phi);
    push("lambda".into(), &reference.lambda, &report.lambda);
    push("x".into(), &reference.x, &report.x);
    push("y".into(), &reference.y, &report.y);
    let r = crate::linres::resistance_matrix(pg.graph());
    for (u, v, val) in &reference.resistances {
        let (i, j) = (pg.graph().index_of(u)?, pg.graph().index_of(v)?);
        push(format!("r({u},{v})"), &Some(val.clone()), &r[(i, j)]);
    }
    Ok(rows)
}
