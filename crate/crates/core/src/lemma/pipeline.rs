use rand::RngCore;
use serde::Serialize;

use super::image_of_set;
use super::trace::{growth_trace_with, GrowthMode, GrowthTrace, TraceOptions};
use crate::action::ActionInstance;
use crate::diameter::{auto_diameter, DiameterReport, DEFAULT_BUDGET, DEFAULT_PIVOTS};
use crate::error::{Error, Result, Stage};
use crate::random::{invert_multiset, sample_multiset, GeneratorMultiset};
use crate::schreier::SchreierGraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineOptions {
    /// Proceed when k < (ln n)^(1+ε) or when the growth schedules are
    /// infeasible at this size.
    pub allow_unmet: bool,
    /// Schedule constant for the growth phase.
    pub c: Option<f64>,
    /// Work budget for the cross-check diameter.
    pub budget: u64,
    pub pivots: usize,
    /// Cap on generators × n for the union graph (4 bytes each, twice
    /// over once reverse tables are built).
    pub max_table_entries: u64,
}

/// 2^29 table entries, 2 GiB per direction.
pub const DEFAULT_MAX_TABLE_ENTRIES: u64 = 1 << 29;

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            allow_unmet: false,
            c: None,
            budget: DEFAULT_BUDGET,
            pivots: DEFAULT_PIVOTS,
            max_table_entries: DEFAULT_MAX_TABLE_ENTRIES,
        }
    }
}

/// One run of grow, fill, and double.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub k: usize,
    pub epsilon: f64,
    /// k ≥ (ln n)^(1+ε)
    pub k_condition_met: bool,
    pub growth: GrowthTrace,
    pub backward_growth: GrowthTrace,
    pub fill_count: usize,
    pub backward_fill_count: usize,
    /// t + 1: every point is reached by a word of this length from ω.
    pub fill_radius: u32,
    pub backward_fill_radius: u32,
    /// Certified upper bound on the diameter of the union multiset.
    pub doubling_diameter_bound: u32,
    /// 2·⌊k/4⌋ + both fill counts.
    pub elements_consumed: usize,
    pub budget_ok: bool,
    pub cross_check: DiameterReport,
}

fn fill_count(n: usize, sphere: usize) -> usize {
    let m = n as f64 / sphere as f64;
    ((4.0 * m * (n as f64).ln()).ceil() as usize).max(1)
}

fn check_tables(n: usize, generators: usize, options: PipelineOptions) -> Result<()> {
    let required = (n as u64).saturating_mul(generators as u64);
    if required > options.max_table_entries {
        return Err(Error::BudgetExceeded { required, budget: options.max_table_entries });
    }
    Ok(())
}

/// Grows a sphere of radius t from ω with ⌊k/4⌋ elements, fills Ω at
/// radius t + 1 with fresh elements, repeats on inverted elements, and
/// concludes diam ≤ 2(t + 1) for the union of everything drawn.
///
/// The certificate relies only on the two observed covers, so it is sound
/// whatever the growth phase achieved; the bookkeeping then says whether the
/// draw stayed within k elements.
pub fn theorem_pipeline<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    omega: u32,
    k: usize,
    epsilon: f64,
    rng: &mut R,
    options: PipelineOptions,
) -> Result<PipelineReport> {
    let n = instance.degree();
    let k_condition_met = k as f64 >= (n as f64).ln().powf(1.0 + epsilon);
    if !k_condition_met && !options.allow_unmet {
        return Err(Error::PreconditionUnmet(format!("need k >= (ln n)^(1+epsilon), k={k}, n={n}")));
    }
    let quarter = k / 4;
    if quarter == 0 {
        return Err(Error::PreconditionUnmet(format!("need k >= 4, got {k}")));
    }
    let trace_opts = TraceOptions { c: options.c, allow_infeasible: options.allow_unmet };
    let grow_eps = epsilon / 2.0;
    let growth_failed = |e: Error| match e {
        e @ (Error::ScheduleInfeasible(_) | Error::PreconditionUnmet(_)) => e,
        e => Error::PipelineStageFailed { stage: Stage::Growth, reason: e.to_string() },
    };

    let a1 = sample_multiset(instance, quarter, rng)?;
    let fwd = growth_trace_with(instance, omega, &a1, grow_eps, GrowthMode::Prop1, trace_opts).map_err(growth_failed)?;
    let f1 = fill_count(n, fwd.sphere.len());
    check_tables(n, 2 * quarter + f1, options)?;
    let b1 = sample_multiset(instance, f1, rng)?;
    let covered = image_of_set(instance, &fwd.sphere, b1.elements());
    if !covered.is_full() {
        return Err(Error::PipelineStageFailed {
            stage: Stage::Fill,
            reason: format!("forward fill reached {} of {n} points with {f1} elements", covered.len()),
        });
    }

    let a2 = sample_multiset(instance, quarter, rng)?;
    let a2_inv = invert_multiset(instance, &a2)?;
    let bwd =
        growth_trace_with(instance, omega, &a2_inv, grow_eps, GrowthMode::Prop1, trace_opts).map_err(growth_failed)?;
    let f2 = fill_count(n, bwd.sphere.len());
    check_tables(n, 2 * quarter + f1 + f2, options)?;
    let b2 = sample_multiset(instance, f2, rng)?;
    let covered = image_of_set(instance, &bwd.sphere, invert_multiset(instance, &b2)?.elements());
    if !covered.is_full() {
        return Err(Error::PipelineStageFailed {
            stage: Stage::Fill,
            reason: format!("backward fill reached {} of {n} points with {f2} elements", covered.len()),
        });
    }

    let fill_radius = fwd.trace.radius + 1;
    let backward_fill_radius = bwd.trace.radius + 1;
    let certificate = fill_radius + backward_fill_radius;
    // consume the draws while materializing: fill multisets can be large
    let tables = [a1, b1, a2, b2]
        .into_iter()
        .flat_map(GeneratorMultiset::into_elements)
        .map(|g| instance.materialize(&g))
        .collect::<Result<Vec<_>>>()?;
    let graph = SchreierGraph::from_tables(n, tables)?;
    let cross_check = auto_diameter(&graph, options.budget, options.pivots, rng);
    match cross_check.lower {
        Some(lower) if lower <= certificate => {}
        _ => {
            return Err(Error::PipelineStageFailed {
                stage: Stage::Doubling,
                reason: format!("certificate {certificate} contradicts {cross_check:?}"),
            })
        }
    }
    let elements_consumed = 2 * quarter + f1 + f2;
    Ok(PipelineReport {
        k,
        epsilon,
        k_condition_met,
        growth: fwd.trace,
        backward_growth: bwd.trace,
        fill_count: f1,
        backward_fill_count: f2,
        fill_radius,
        backward_fill_radius,
        doubling_diameter_bound: certificate,
        elements_consumed,
        budget_ok: elements_consumed <= k,
        cross_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_action, FamilySpec};
    use crate::random::SeededRng;

    fn allow() -> PipelineOptions {
        PipelineOptions { allow_unmet: true, ..PipelineOptions::default() }
    }

    #[test]
    fn certificate_bounds_exact_diameter() {
        let inst = build_action(FamilySpec::SymmetricNatural { n: 128 }).unwrap();
        let mut rng = SeededRng::new(1);
        for _ in 0..5 {
            let r = theorem_pipeline(&inst, 0, 24, 0.5, &mut rng, allow()).unwrap();
            let exact = r.cross_check.exact.unwrap();
            assert!(exact <= r.doubling_diameter_bound, "{r:?}");
            assert_eq!(r.elements_consumed, 2 * 6 + r.fill_count + r.backward_fill_count);
            assert_eq!(r.budget_ok, r.elements_consumed <= 24);
        }
    }

    #[test]
    fn k_condition_is_enforced_without_flag() {
        let inst = build_action(FamilySpec::CyclicRegular { m: 1000 }).unwrap();
        assert!(matches!(
            theorem_pipeline(&inst, 0, 8, 0.5, &mut SeededRng::new(2), PipelineOptions::default()),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn disconnected_union_fails_at_fill() {
        // On Z_2 each fill draws 6 shifts; all of them are 0 with
        // probability 1/64, leaving the union disconnected.
        let inst = build_action(FamilySpec::CyclicRegular { m: 2 }).unwrap();
        let mut fill_failures = 0;
        for seed in 0..400 {
            match theorem_pipeline(&inst, 0, 4, 0.5, &mut SeededRng::new(seed), allow()) {
                Err(Error::PipelineStageFailed { stage: Stage::Fill, .. }) => fill_failures += 1,
                Ok(r) => {
                    assert!(r.cross_check.connected);
                    assert!(r.cross_check.exact.unwrap() <= r.doubling_diameter_bound);
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(fill_failures > 0);
    }

    #[test]
    fn oversized_union_is_refused() {
        let inst = build_action(FamilySpec::SymmetricNatural { n: 4096 }).unwrap();
        let opts = PipelineOptions { max_table_entries: 1 << 20, ..allow() };
        assert!(matches!(
            theorem_pipeline(&inst, 0, 24, 0.5, &mut SeededRng::new(3), opts),
            Err(Error::BudgetExceeded { budget, .. }) if budget == 1 << 20
        ));
    }
}
