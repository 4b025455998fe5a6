use super::{Analysis, LambdaRoute, PhiRoute, TauMethod, ThetaMethod};
use crate::error::{Error, Result};
use crate::graph::{PmGraph, TypeDeltas};
use crate::scalar::Scalar;

/// How many routes to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    /// One route per invariant.
    Primary,
    /// Every applicable route, cross-checked.
    Full,
}

/// One route's value, kept for the audit trail.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodValue<S> {
    pub invariant: &'static str,
    pub method: String,
    pub value: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport<S> {
    pub total_length: S,
    pub genus: usize,
    pub pm_genus: u64,
    pub tau: S,
    pub theta: S,
    pub epsilon: S,
    pub a: S,
    pub phi: S,
    pub lambda: S,
    /// `x` and `y` on the minimal vertex set.
    pub x: S,
    pub y: S,
    pub deltas: TypeDeltas<S>,
    pub audit: Vec<MethodValue<S>>,
}

impl<S: Scalar> InvariantReport<S> {
    /// Named scalar fields in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, S)> {
        vec![
            ("total_length", self.total_length.clone()),
            ("tau", self.tau.clone()),
            ("theta", self.theta.clone()),
            ("epsilon", self.epsilon.clone()),
            ("a", self.a.clone()),
            ("phi", self.phi.clone()),
            ("lambda", self.lambda.clone()),
            ("x", self.x.clone()),
            ("y", self.y.clone()),
        ]
    }
}

/// Skips routes whose preconditions fail; other errors propagate.
fn applicable<S>(r: Result<S>) -> Result<Option<S>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Precondition { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

struct Audit<S> {
    entries: Vec<MethodValue<S>>,
    scale: S,
}

impl<S: Scalar> Audit<S> {
    fn push(&mut self, invariant: &'static str, method: String, value: S) -> Result<()> {
        if let Some(first) = self.entries.iter().find(|m| m.invariant == invariant) {
            if !first.value.close(&value, &self.scale) {
                return Err(Error::Disagreement {
                    invariant: invariant.to_string(),
                    first: first.method.clone(),
                    first_value: first.value.render(),
                    second: method,
                    second_value: value.render(),
                });
            }
        }
        self.entries.push(MethodValue { invariant, method, value });
        Ok(())
    }
}

/// Evaluates every invariant. With [`Depth::Full`] all applicable routes
/// are run and any disagreement is an error.
pub fn invariant_report<S: Scalar>(pg: &PmGraph<S>, depth: Depth) -> Result<InvariantReport<S>> {
    let an = Analysis::new(pg.clone());
    let total_length = pg.total_length();
    let mut audit = Audit { entries: Vec::new(), scale: total_length.clone() };

    let tau = an.tau(TauMethod::Edges)?;
    let theta = an.theta(ThetaMethod::Definition)?;
    let phi = an.phi(PhiRoute::TauTheta)?;
    let lambda = an.lambda(LambdaRoute::TauTheta)?;
    audit.push("tau", TauMethod::Edges.to_string(), tau.clone())?;
    audit.push("theta", ThetaMethod::Definition.to_string(), theta.clone())?;
    audit.push("phi", PhiRoute::TauTheta.to_string(), phi.clone())?;
    audit.push("lambda", LambdaRoute::TauTheta.to_string(), lambda.clone())?;

    if depth == Depth::Full {
        for &m in &TauMethod::ALL[1..] {
            if let Some(v) = applicable(an.tau(m))? {
                audit.push("tau", m.to_string(), v)?;
            }
        }
        for base in 1..pg.graph().vertex_count() {
            let id = pg.graph().id(base);
            for m in [TauMethod::Edges, TauMethod::Crossterm] {
                if let Some(v) = applicable(an.tau_at(m, base))? {
                    audit.push("tau", format!("{m}@{id}"), v)?;
                }
            }
        }
        for &m in &ThetaMethod::ALL[1..] {
            if let Some(v) = applicable(an.theta(m))? {
                audit.push("theta", m.to_string(), v)?;
            }
        }
        for &r in &PhiRoute::ALL[1..] {
            if let Some(v) = applicable(an.phi(r))? {
                audit.push("phi", r.to_string(), v)?;
            }
        }
        for &r in &LambdaRoute::ALL[1..] {
            if let Some(v) = applicable(an.lambda(r))? {
                audit.push("lambda", r.to_string(), v)?;
            }
        }
    }

    let minimal = pg.suppress_vertices();
    let (x, y) = super::xy(minimal.graph());
    Ok(InvariantReport {
        genus: pg.graph().genus(),
        pm_genus: pg.pm_genus(),
        epsilon: an.epsilon()?,
        a: an.a()?,
        tau,
        theta,
        phi,
        lambda,
        x,
        y,
        deltas: pg.type_deltas(),
        audit: audit.entries,
        total_length,
    })
}
