//! Directed diameter: exact all-pairs BFS, or certified pivot bounds when
//! n²k table lookups would exceed the work budget.

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::schreier::{Reach, SchreierGraph};

/// Default work budget in table lookups.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

/// Default number of pivots for [`pivot_bounds`].
pub const DEFAULT_PIVOTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    AllPairs,
    PivotBounds,
}

/// Diameter bounds for one graph.
///
/// A disconnected graph carries `connected == false` and no numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub lower: Option<u32>,
    pub upper: Option<u32>,
    pub exact: Option<u32>,
    pub method: Method,
    pub pivots_used: usize,
    pub connected: bool,
}

impl DiameterReport {
    fn disconnected(method: Method) -> Self {
        DiameterReport { lower: None, upper: None, exact: None, method, pivots_used: 0, connected: false }
    }

    fn exact(d: u32) -> Self {
        DiameterReport {
            lower: Some(d),
            upper: Some(d),
            exact: Some(d),
            method: Method::AllPairs,
            pivots_used: 0,
            connected: true,
        }
    }
}

/// n·n·k, saturating.
pub fn all_pairs_work(graph: &SchreierGraph) -> u64 {
    let n = graph.degree() as u64;
    n.saturating_mul(n).saturating_mul(graph.k() as u64)
}

fn bfs_cutoff(graph: &SchreierGraph) -> u32 {
    u32::try_from(graph.degree()).unwrap_or(u32::MAX)
}

/// Max eccentricity over all sources, by n BFS runs.
pub fn exact_diameter(graph: &SchreierGraph, budget: u64) -> Result<DiameterReport> {
    exact_diameter_with(graph, budget, Exec::default())
}

pub fn exact_diameter_with(graph: &SchreierGraph, budget: u64, exec: Exec) -> Result<DiameterReport> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let work = all_pairs_work(graph);
    if work > budget {
        return Err(Error::BudgetExceeded { required: work, budget });
    }
    let cutoff = bfs_cutoff(graph);
    let diam = par::try_max_range(exec, graph.degree(), |w| match graph.eccentricity(w as u32, cutoff) {
        Reach::Within(e) => Ok(e),
        Reach::NotWithinCutoff => Err(Error::Disconnected),
    })?;
    Ok(DiameterReport::exact(diam.unwrap_or(0)))
}

/// Sandwich bounds from BFS trees rooted at a few pivots.
///
/// For a pivot ω every pair satisfies d(x, y) ≤ d(x, ω) + d(ω, y), so
/// diam ≤ ecc_rev(ω) + ecc(ω). The lower bound is the largest eccentricity
/// seen, including those of the BFS-farthest vertices (double sweep).
/// The first pivot is point 0; the rest are uniform.
pub fn pivot_bounds<R: RngCore + ?Sized>(
    graph: &SchreierGraph,
    pivot_count: usize,
    rng: &mut R,
) -> Result<DiameterReport> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = graph.degree() as u32;
    let mut pivots = vec![0u32];
    pivots.extend((1..pivot_count.max(1)).map(|_| rng.random_range(0..n)));
    let reverse = graph.reverse();
    let cutoff = bfs_cutoff(graph);

    let per_pivot = par::map_range(Exec::default(), pivots.len(), |i| {
        let p = pivots[i];
        let fwd = graph.bfs_from(p, cutoff);
        let bwd = reverse.bfs_from(p, cutoff);
        let (Some(f), Some(b)) = (fwd.eccentricity.radius(), bwd.eccentricity.radius()) else {
            return Err(Error::Disconnected);
        };
        // farthest-to-pivot vertex, forward; farthest-from-pivot vertex, backward
        let sweep_f = graph.eccentricity(bwd.farthest, cutoff).radius().unwrap_or(0);
        let sweep_b = reverse.eccentricity(fwd.farthest, cutoff).radius().unwrap_or(0);
        Ok((f.max(b).max(sweep_f).max(sweep_b), f + b))
    });
    let mut lower = 0u32;
    let mut upper = u32::MAX;
    for r in per_pivot {
        let (lo, up) = r?;
        lower = lower.max(lo);
        upper = upper.min(up);
    }
    Ok(DiameterReport {
        lower: Some(lower),
        upper: Some(upper),
        exact: (lower == upper).then_some(lower),
        method: Method::PivotBounds,
        pivots_used: pivots.len(),
        connected: true,
    })
}

/// Exact when n²k fits the budget, otherwise pivot bounds.
pub fn auto_diameter<R: RngCore + ?Sized>(
    graph: &SchreierGraph,
    budget: u64,
    pivot_count: usize,
    rng: &mut R,
) -> DiameterReport {
    let method = if all_pairs_work(graph) <= budget { Method::AllPairs } else { Method::PivotBounds };
    if !graph.is_connected() {
        return DiameterReport::disconnected(method);
    }
    let report = match method {
        Method::AllPairs => exact_diameter(graph, budget),
        Method::PivotBounds => pivot_bounds(graph, pivot_count, rng),
    };
    report.unwrap_or_else(|_| DiameterReport::disconnected(method))
}
