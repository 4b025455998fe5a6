//! Seeded random search for instances where the bounds are nearly tight.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{bound_suite, Basis, BoundCheck};
use crate::error::{Error, Result};
use crate::graph::{Edge, MetrizedGraph, PmGraph};
use crate::scalar::{Rational, Scalar};

/// Float margins below this (relative to total length) are recomputed exactly.
pub const RECHECK_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Inclusive range of pm-genus.
    pub genus: (u64, u64),
    /// Inclusive range of vertex counts before suppression.
    pub vertices: (usize, usize),
    /// Inclusive range of edge counts.
    pub edges: (usize, usize),
    /// Edge lengths are drawn from `{1/grid, 2/grid, ..., 1}`.
    pub grid: u32,
    /// Chance that a sample carries some positive polarization.
    pub polarized_fraction: f64,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            genus: (2, 5),
            vertices: (1, 8),
            edges: (1, 14),
            grid: 12,
            polarized_fraction: 0.25,
            samples: 100,
            seed: 0,
            threads: None,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.genus.0 < 1 || self.genus.0 > self.genus.1 {
            return bad("genus range must satisfy 1 <= min <= max");
        }
        if self.vertices.0 < 1 || self.vertices.0 > self.vertices.1 {
            return bad("vertex range must satisfy 1 <= min <= max");
        }
        if self.edges.0 > self.edges.1 {
            return bad("edge range is empty");
        }
        if self.grid == 0 {
            return bad("length grid must be positive");
        }
        if !(0.0..=1.0).contains(&self.polarized_fraction) {
            return bad("polarized fraction must lie in [0, 1]");
        }
        // smallest possible graph: genus g needs g edges on one vertex
        let feasible = (self.genus.0..=self.genus.1).any(|g| self.shape_range(g).is_some());
        if !feasible {
            return bad("no graph satisfies the genus, vertex and edge ranges together");
        }
        Ok(())
    }

    /// Vertex counts compatible with plain genus `g`: `e = v + g - 1`.
    fn shape_range(&self, g: u64) -> Option<(usize, usize)> {
        let g = g as usize;
        let lo = self.vertices.0.max((self.edges.0 + 1).saturating_sub(g));
        let hi = self.vertices.1.min((self.edges.1 + 1).saturating_sub(g));
        (g >= 1 && lo <= hi && lo >= 1).then_some((lo, hi))
    }
}

/// Draws a bridgeless pm-graph: a cycle plus ears, lengths on the grid.
pub fn random_pm_graph(cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Result<PmGraph<Rational>> {
    cfg.validate()?;
    loop {
        let pm_genus = rng.random_range(cfg.genus.0..=cfg.genus.1);
        let polar =
            if pm_genus > 1 && rng.random_bool(cfg.polarized_fraction) { rng.random_range(1..pm_genus) } else { 0 };
        let g = pm_genus - polar;
        let Some((lo, hi)) = cfg.shape_range(g) else { continue };
        let v = rng.random_range(lo..=hi);
        return Ok(build(cfg, rng, g as usize, v, polar as u32));
    }
}

fn build(cfg: &SearchConfig, rng: &mut ChaCha8Rng, g: usize, v: usize, polar: u32) -> PmGraph<Rational> {
    // interior vertex counts: first the base cycle, then one per ear
    let mut sizes = vec![0usize; g];
    sizes[0] = 1;
    for _ in 1..v {
        let slot = rng.random_range(0..g);
        sizes[slot] += 1;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut count = sizes[0];
    for i in 0..sizes[0] {
        pairs.push((i, (i + 1) % sizes[0]));
    }
    for &m in &sizes[1..] {
        let a = rng.random_range(0..count);
        let b = rng.random_range(0..count);
        let mut prev = a;
        for _ in 0..m {
            pairs.push((prev, count));
            prev = count;
            count += 1;
        }
        pairs.push((prev, b));
    }
    let edges: Vec<Edge<Rational>> = pairs
        .into_iter()
        .map(|(u, v)| Edge { u, v, len: Rational::ratio(rng.random_range(1..=cfg.grid) as i64, cfg.grid as i64) })
        .collect();
    let ids = (0..count).map(|i| format!("v{i}")).collect();
    let graph = MetrizedGraph::new(ids, edges).expect("ear construction is connected with positive lengths");
    let mut q = vec![0u32; count];
    for _ in 0..polar {
        q[rng.random_range(0..count)] += 1;
    }
    PmGraph::new(graph, q).expect("bridgeless graphs have valence at least two everywhere")
}

/// Short stable fingerprint of a pm-graph.
pub fn graph_hash<S: Scalar>(pg: &PmGraph<S>) -> String {
    let g = pg.graph();
    let mut h = Sha256::new();
    for (id, q) in g.ids().iter().zip(pg.polarization()) {
        h.update(format!("{id}:{q};"));
    }
    for e in g.edges() {
        h.update(format!("{}-{}:{};", g.id(e.u), g.id(e.v), e.len.to_rational()));
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct SearchHit<S> {
    pub index: usize,
    pub hash: String,
    pub graph: PmGraph<Rational>,
    pub checks: Vec<BoundCheck<S>>,
    /// True when near-zero float margins were recomputed exactly.
    pub rechecked: bool,
    /// Smallest `margin / length` over applicable proved bounds.
    pub worst: Option<(&'static str, f64)>,
}

impl<S> SearchHit<S> {
    pub fn id(&self) -> String {
        format!("s{}-{}", self.index, self.hash)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extreme {
    pub normalized_margin: f64,
    pub sample: usize,
    pub hash: String,
}

#[derive(Clone, Debug)]
pub struct SearchSummary<S> {
    /// Samples ordered by worst normalized margin, then hash.
    pub hits: Vec<SearchHit<S>>,
    /// Tightest instance seen for each bound.
    pub per_bound: BTreeMap<&'static str, Extreme>,
    /// `(sample, bound)` for every violated proved bound (after the exact recheck).
    pub violations: Vec<(usize, &'static str)>,
}

fn normalized(check: &BoundCheck<impl Scalar>, len: f64) -> Option<f64> {
    check.margin().map(|m| m.to_f64() / len)
}

fn evaluate<S: Scalar>(index: usize, pg: PmGraph<Rational>) -> Result<SearchHit<S>> {
    let len = pg.total_length().to_f64();
    let mut checks = bound_suite(&pg.convert::<S>())?;
    let mut rechecked = false;
    if !S::EXACT && checks.iter().any(|c| normalized(c, len).is_some_and(|m| m < RECHECK_THRESHOLD)) {
        checks = bound_suite(&pg)?.iter().map(BoundCheck::convert).collect();
        rechecked = true;
    }
    let worst = checks
        .iter()
        .filter(|c| c.basis == Basis::Proved)
        .filter_map(|c| normalized(c, len).map(|m| (c.name, m)))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(SearchHit { index, hash: graph_hash(&pg), graph: pg, checks, rechecked, worst })
}

/// Samples `cfg.samples` graphs and evaluates the bound suite on each.
/// Sample `i` uses stream `i` of a generator seeded with `cfg.seed`, so the
/// result does not depend on scheduling.
pub fn random_search<S: Scalar>(cfg: &SearchConfig) -> Result<SearchSummary<S>> {
    cfg.validate()?;
    let run = || -> Result<Vec<SearchHit<S>>> {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(i as u64);
                evaluate(i, random_pm_graph(cfg, &mut rng)?)
            })
            .collect()
    };
    let mut hits = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let mut per_bound: BTreeMap<&'static str, Extreme> = BTreeMap::new();
    let mut violations = Vec::new();
    for hit in &hits {
        let len = hit.graph.total_length().to_f64();
        for c in &hit.checks {
            if c.basis == Basis::Proved && c.satisfied() == Some(false) {
                violations.push((hit.index, c.name));
            }
            if let Some(m) = normalized(c, len) {
                let slot = per_bound.entry(c.name).or_insert(Extreme {
                    normalized_margin: f64::INFINITY,
                    sample: hit.index,
                    hash: hit.hash.clone(),
                });
                if m < slot.normalized_margin {
                    *slot = Extreme { normalized_margin: m, sample: hit.index, hash: hit.hash.clone() };
                }
            }
        }
    }
    let key = |h: &SearchHit<S>| h.worst.map_or(f64::INFINITY, |w| w.1);
    hits.sort_by(|a, b| key(a).total_cmp(&key(b)).then_with(|| a.hash.cmp(&b.hash)));
    Ok(SearchSummary { hits, per_bound, violations })
}
