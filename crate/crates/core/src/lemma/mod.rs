//! Exact and Monte Carlo checks of the growth and covering bounds, plus the
//! proof schedules that chain them into a diameter certificate.
//!
//! "With high probability" has no meaning at a fixed n, so every Monte Carlo
//! verifier reports the empirical frequency, the analytic bound, and a 3σ
//! acceptance margin.

mod counting;
mod growth;
mod pipeline;
mod schedule;
mod trace;

use rand::RngCore;
use serde::Serialize;

pub use counting::{double_count_check, DoubleCount};
pub use growth::{
    exact_cover_probability, explicit_growth_check, fill_check, one_step_growth_check, FillCheck,
};
pub use pipeline::{theorem_pipeline, PipelineOptions, PipelineReport, DEFAULT_MAX_TABLE_ENTRIES};
pub use schedule::{best_effort_schedule, minimal_feasible_schedule, proof_schedule, ProofSchedule};
pub use trace::{growth_trace, growth_trace_with, GrowthMode, GrowthOutcome, GrowthTrace, TraceOptions};

use crate::action::ActionInstance;
use crate::par::{self, Exec};
use crate::random::{derive_trial_seed, SeededRng};
use crate::schreier::PointSet;

/// Whether a verifier refuses to run when its hypothesis fails.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Preconditions {
    #[default]
    Enforce,
    /// Run anyway and report `precondition_met == false`.
    AllowUnmet,
}

/// Empirical frequency of an event against an analytic lower bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub empirical: f64,
    pub analytic_bound: f64,
    pub successes: u64,
    pub trials: u64,
    /// sqrt(p̂(1 - p̂)/trials)
    pub std_error: f64,
    /// empirical ≥ analytic_bound − 3·std_error
    pub satisfied: bool,
    pub precondition_met: bool,
}

impl BoundCheck {
    pub fn new(successes: u64, trials: u64, analytic_bound: f64, precondition_met: bool) -> Self {
        let empirical = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        let std_error = if trials == 0 { 0.0 } else { (empirical * (1.0 - empirical) / trials as f64).sqrt() };
        BoundCheck {
            empirical,
            analytic_bound,
            successes,
            trials,
            std_error,
            satisfied: empirical >= analytic_bound - 3.0 * std_error,
            precondition_met,
        }
    }

    /// Binomial standard error of a frequency over `trials` draws when the
    /// true probability is `p`.
    pub fn null_sigma(p: f64, trials: u64) -> f64 {
        (p * (1.0 - p) / trials as f64).sqrt()
    }

    /// |empirical − p| ≤ z·σ, with σ taken under the reference probability
    /// `p` so that a frequency of exactly 0 or 1 is still testable.
    pub fn consistent_with(&self, p: f64, z: f64) -> bool {
        (self.empirical - p).abs() <= z * Self::null_sigma(p, self.trials) + 1e-12
    }
}

/// Counts the trials (seeded by `derive_trial_seed(master, i)`) where `event`
/// holds.
pub(crate) fn count_trials<F>(trials: u64, master: u64, event: F) -> u64
where
    F: Fn(&mut SeededRng) -> bool + Sync + Send,
{
    par::sum_range(Exec::default(), trials as usize, |i| {
        let mut rng = SeededRng::new(derive_trial_seed(master, i as u64));
        event(&mut rng) as u64
    })
}

/// Like [`count_trials`] for two events observed on the same draw.
pub(crate) fn tally_trials<F>(trials: u64, master: u64, events: F) -> [u64; 2]
where
    F: Fn(&mut SeededRng) -> [bool; 2] + Sync + Send,
{
    let seen = par::map_range(Exec::default(), trials as usize, |i| {
        events(&mut SeededRng::new(derive_trial_seed(master, i as u64)))
    });
    seen.iter().fold([0, 0], |[a, b], [x, y]| [a + *x as u64, b + *y as u64])
}

pub(crate) fn master_seed<R: RngCore + ?Sized>(rng: &mut R) -> u64 {
    rng.next_u64()
}

/// X^g for every g in `elements`, unioned. Acts point by point when X is
/// small, materializes the generators otherwise.
pub(crate) fn image_of_set(
    instance: &ActionInstance,
    x: &PointSet,
    elements: &[crate::action::GroupElement],
) -> PointSet {
    let n = instance.degree();
    let mut out = PointSet::new(n);
    if x.len().saturating_mul(16) >= n {
        for g in elements {
            let table = instance.materialize(g).expect("element of this family");
            for p in x.iter() {
                out.insert(table[p as usize]);
            }
        }
    } else {
        let pts: Vec<u32> = x.iter().collect();
        for g in elements {
            for &p in &pts {
                out.insert(instance.act_unchecked(g, p));
            }
        }
    }
    out
}
