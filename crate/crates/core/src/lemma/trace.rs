use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::Serialize;

use super::image_of_set;
use super::schedule::{best_effort_schedule, minimal_feasible_schedule, proof_schedule, ProofSchedule};
use crate::action::{ActionInstance, GroupElement};
use crate::error::{Error, Result};
use crate::random::{sample_multiset, GeneratorMultiset};
use crate::schreier::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthMode {
    /// D blocks of h elements, exponent d = 2/ε, target n/k^(2/ε).
    Lemma6,
    /// Lemma6 on k/2 elements, then ⌊6/ε³⌋ blocks of ⌊k^(ε²)⌋ elements with
    /// d = 1/(2ε), target n/k^(ε/2).
    Prop1,
}

impl fmt::Display for GrowthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthMode::Lemma6 => "lemma6",
            GrowthMode::Prop1 => "prop1",
        })
    }
}

impl FromStr for GrowthMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma6" => Ok(GrowthMode::Lemma6),
            "prop1" => Ok(GrowthMode::Prop1),
            _ => Err(Error::PreconditionUnmet(format!("unknown growth mode `{s}`, expected lemma6 or prop1"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TraceOptions {
    /// Schedule constant; the smallest feasible one when `None`.
    pub c: Option<f64>,
    /// Run a best-effort schedule instead of failing when the schedule's
    /// inequalities cannot hold at this size.
    pub allow_infeasible: bool,
}

/// Sphere sizes along a block schedule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthTrace {
    pub mode: GrowthMode,
    /// `stages[0]` is 1 (the start point); `stages[i]` is |X_i| after block i.
    pub stages: Vec<usize>,
    /// Block sizes, one per stage after the first.
    pub blocks: Vec<usize>,
    /// First block i (1-based) of the certifying phase whose size condition
    /// |X_(i−1)| ≤ n/b^d failed. Such a failure certifies
    /// |X_(i−1)| > n/b^d ≥ target.
    pub failure_stage: Option<usize>,
    pub final_size: usize,
    pub target: f64,
    pub reached_target: bool,
    /// Number of blocks applied, i.e. the word length of the final sphere.
    pub radius: u32,
    pub elements_used: usize,
    /// Whether the schedule inequalities held without truncation.
    pub feasible: bool,
    pub infeasibility: Option<String>,
}

/// A trace together with the final sphere.
#[derive(Clone, Debug)]
pub struct GrowthOutcome {
    pub trace: GrowthTrace,
    pub sphere: PointSet,
}

/// Samples A ~ μ(k) and traces its growth from `omega`.
pub fn growth_trace<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    omega: u32,
    k: usize,
    epsilon: f64,
    mode: GrowthMode,
    rng: &mut R,
    options: TraceOptions,
) -> Result<GrowthTrace> {
    let a = sample_multiset(instance, k, rng)?;
    growth_trace_with(instance, omega, &a, epsilon, mode, options).map(|o| o.trace)
}

fn lemma6_schedule(ln_n: f64, k: u64, epsilon: f64, options: TraceOptions) -> Result<(ProofSchedule, Option<String>)> {
    let fallback = |why: String| {
        if options.allow_infeasible {
            Ok((best_effort_schedule(ln_n, k, epsilon), Some(why)))
        } else {
            Err(Error::ScheduleInfeasible(why))
        }
    };
    if k < 2 {
        return fallback(format!("need k >= 2 elements for the block schedule, have {k}"));
    }
    match options.c {
        Some(c) => {
            let s = proof_schedule(ln_n, k, epsilon, c)?;
            if s.feasible_growth {
                Ok((s, None))
            } else if options.allow_infeasible {
                let why = format!("h^(D/2) > n fails (D={}, h={}, C={c})", s.d, s.h);
                Ok((s, Some(why)))
            } else {
                Err(Error::ScheduleInfeasible(format!("h^(D/2) > n fails (D={}, h={}, C={c})", s.d, s.h)))
            }
        }
        None => match minimal_feasible_schedule(ln_n, k, epsilon)? {
            Some(s) => Ok((s, None)),
            None => fallback(format!("h^(D/2) > n fails for every D <= k (k={k}, ln n={ln_n:.3})")),
        },
    }
}

struct Stager<'a> {
    instance: &'a ActionInstance,
    ln_n: f64,
    x: PointSet,
    stages: Vec<usize>,
    blocks: Vec<usize>,
}

impl Stager<'_> {
    /// Applies `count` consecutive blocks of `b` elements, checking
    /// |X| ≤ n/b^d before each. Returns the first failing stage index.
    fn run(&mut self, elements: &[GroupElement], b: usize, count: usize, d: f64) -> Option<usize> {
        let mut failure = None;
        let limit = self.ln_n - d * (b as f64).ln();
        for block in elements.chunks_exact(b).take(count) {
            if failure.is_none() && (self.x.len() as f64).ln() > limit {
                failure = Some(self.stages.len());
            }
            self.x = image_of_set(self.instance, &self.x, block);
            self.stages.push(self.x.len());
            self.blocks.push(b);
        }
        failure
    }
}

/// Traces the growth of the given multiset from `omega`.
///
/// The multiset is cut in draw order per the mode's schedule; unused elements
/// are discarded.
pub fn growth_trace_with(
    instance: &ActionInstance,
    omega: u32,
    a: &GeneratorMultiset,
    epsilon: f64,
    mode: GrowthMode,
    options: TraceOptions,
) -> Result<GrowthOutcome> {
    let n = instance.degree();
    if omega as usize >= n {
        return Err(Error::PointOutOfRange { point: omega as u64, degree: n });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::PreconditionUnmet(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if a.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    let k = a.k();
    let ln_n = (n as f64).ln();
    let ln_k = (k as f64).ln();
    let mut st = Stager { instance, ln_n, x: PointSet::singleton(n, omega), stages: vec![1], blocks: vec![] };
    let elements = a.elements();

    let (failure_stage, target, elements_used, infeasibility) = match mode {
        GrowthMode::Lemma6 => {
            let (s, why) = lemma6_schedule(ln_n, k as u64, epsilon, options)?;
            let (d, h) = (s.d as usize, s.h as usize);
            let failure = st.run(elements, h, d, 2.0 / epsilon);
            (failure, (ln_n - 2.0 / epsilon * ln_k).exp(), d * h, why)
        }
        GrowthMode::Prop1 => {
            let a0 = k / 2;
            let c2 = (6.0 / epsilon.powi(3)).floor() as usize;
            let b = ((epsilon * epsilon * ln_k).exp().floor() as usize).max(1);
            let mut why = None;
            let blocks = if a0 + c2.saturating_mul(b) <= k {
                c2
            } else if options.allow_infeasible {
                why = Some(format!("k/2 + C2*k^(eps^2) <= k fails ({a0} + {c2}*{b} > {k})"));
                (k - a0) / b
            } else {
                return Err(Error::ScheduleInfeasible(format!(
                    "k/2 + C2*k^(eps^2) <= k fails ({a0} + {c2}*{b} > {k})"
                )));
            };
            let (s, why0) = lemma6_schedule(ln_n, a0 as u64, epsilon, options)?;
            let (d, h) = (s.d as usize, s.h.min(a0 as u64) as usize);
            if h > 0 {
                st.run(&elements[..a0], h, d, 2.0 / epsilon);
            }
            let failure = st.run(&elements[a0..], b, blocks, 1.0 / (2.0 * epsilon));
            let why = match (why0, why) {
                (Some(x), Some(y)) => Some(format!("{x}; {y}")),
                (x, y) => x.or(y),
            };
            (failure, (ln_n - epsilon / 2.0 * ln_k).exp(), d * h + blocks * b, why)
        }
    };

    let final_size = st.x.len();
    let trace = GrowthTrace {
        mode,
        radius: (st.stages.len() - 1) as u32,
        blocks: st.blocks,
        stages: st.stages,
        failure_stage,
        final_size,
        target,
        reached_target: final_size as f64 >= target,
        elements_used,
        feasible: infeasibility.is_none(),
        infeasibility,
    };
    Ok(GrowthOutcome { trace, sphere: st.x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_action, FamilySpec};
    use crate::random::SeededRng;

    fn allow() -> TraceOptions {
        TraceOptions { c: None, allow_infeasible: true }
    }

    #[test]
    fn lemma6_trace_is_monotone_and_bounded() {
        let inst = build_action(FamilySpec::SymmetricNatural { n: 10_000 }).unwrap();
        let mut rng = SeededRng::new(1);
        for _ in 0..5 {
            let t = growth_trace(&inst, 0, 28, 0.5, GrowthMode::Lemma6, &mut rng, allow()).unwrap();
            assert!(t.stages.windows(2).all(|w| w[0] <= w[1]));
            assert!(t.stages.iter().all(|&s| s <= 10_000));
            assert!(!t.feasible);
            assert_eq!(t.final_size, *t.stages.last().unwrap());
            assert_eq!(t.elements_used, t.blocks.iter().sum::<usize>());
            assert!(t.elements_used <= 28);
        }
        let strict = TraceOptions::default();
        assert!(matches!(
            growth_trace(&inst, 0, 28, 0.5, GrowthMode::Lemma6, &mut rng, strict),
            Err(Error::ScheduleInfeasible(_))
        ));
    }

    #[test]
    fn feasible_lemma6_with_many_elements() {
        // k >= n: one block already covers a large fraction
        let inst = build_action(FamilySpec::CyclicRegular { m: 50 }).unwrap();
        let t = growth_trace(&inst, 3, 5000, 0.5, GrowthMode::Lemma6, &mut SeededRng::new(2), TraceOptions::default())
            .unwrap();
        assert!(t.feasible);
        assert!(t.radius <= 2);
        assert!(t.stages[1] > 25);
    }

    #[test]
    fn prop1_requires_budget_or_flag() {
        let inst = build_action(FamilySpec::CyclicRegular { m: 4096 }).unwrap();
        let mut rng = SeededRng::new(3);
        assert!(matches!(
            growth_trace(&inst, 0, 40, 0.5, GrowthMode::Prop1, &mut rng, TraceOptions::default()),
            Err(Error::ScheduleInfeasible(m)) if m.contains("k/2")
        ));
        let t = growth_trace(&inst, 0, 40, 0.5, GrowthMode::Prop1, &mut rng, allow()).unwrap();
        assert!(t.elements_used <= 40);
        assert!((t.target - 4096.0 / 40f64.powf(0.25)).abs() < 1e-6);
    }

    #[test]
    fn failure_stage_certifies_size() {
        let inst = build_action(FamilySpec::SymmetricNatural { n: 64 }).unwrap();
        let mut rng = SeededRng::new(4);
        for _ in 0..20 {
            let a = sample_multiset(&inst, 600, &mut rng).unwrap();
            let o = growth_trace_with(&inst, 0, &a, 0.5, GrowthMode::Lemma6, allow()).unwrap();
            let t = o.trace;
            if let Some(i) = t.failure_stage {
                let b = t.blocks[i - 1] as f64;
                assert!(t.stages[i - 1] as f64 > 64.0 / b.powf(4.0));
            }
            assert_eq!(o.sphere.len(), t.final_size);
        }
    }
}
