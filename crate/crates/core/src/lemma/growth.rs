use rand::RngCore;
use serde::Serialize;

use super::{count_trials, image_of_set, master_seed, tally_trials, BoundCheck, Preconditions};
use crate::action::{ActionInstance, GroupElement};
use crate::error::{Error, Result};
use crate::random::SeededRng;
use crate::schreier::PointSet;

/// Largest degree for which [`fill_check`] attempts the exact cover probability.
pub const EXACT_COVER_MAX_DEGREE: usize = 20;
/// Largest group [`fill_check`] enumerates for the exact cover probability.
pub const EXACT_COVER_MAX_ORDER: u64 = 1 << 20;

fn check_degree(instance: &ActionInstance, x: &PointSet) -> Result<()> {
    if x.degree() != instance.degree() {
        return Err(Error::PreconditionUnmet(format!(
            "point set has degree {}, action has degree {}",
            x.degree(),
            instance.degree()
        )));
    }
    Ok(())
}

fn draw(instance: &ActionInstance, k: usize, rng: &mut SeededRng) -> Vec<GroupElement> {
    (0..k).map(|_| instance.sample_uniform(rng)).collect()
}

fn gate(met: bool, policy: Preconditions, what: impl FnOnce() -> String) -> Result<()> {
    if met || policy == Preconditions::AllowUnmet {
        Ok(())
    } else {
        Err(Error::PreconditionUnmet(what()))
    }
}

/// Frequency of |X^A| ≥ k(|X| − r) for A ~ μ(k), against (1 − 1/s)^k.
///
/// Requires n ≥ k·s·|X|²/r with r, s > 0. The bound is vacuous for s < 1,
/// which is also reported as an unmet precondition.
#[allow(clippy::too_many_arguments)]
pub fn one_step_growth_check<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    x: &PointSet,
    k: usize,
    r: f64,
    s: f64,
    trials: u64,
    rng: &mut R,
    policy: Preconditions,
) -> Result<BoundCheck> {
    check_degree(instance, x)?;
    if k == 0 {
        return Err(Error::EmptyGeneratorSet);
    }
    let n = instance.degree() as f64;
    let size = x.len() as f64;
    let met = r > 0.0 && s >= 1.0 && n >= k as f64 * s * size * size / r;
    gate(met, policy, || format!("need n >= k*s*|X|^2/r with r > 0, s >= 1 (n={n}, k={k}, s={s}, |X|={size}, r={r})"))?;

    let threshold = k as f64 * (size - r);
    let master = master_seed(rng);
    let hits = count_trials(trials, master, |t| {
        let a = draw(instance, k, t);
        image_of_set(instance, x, &a).len() as f64 >= threshold
    });
    let bound = if s >= 1.0 { (1.0 - 1.0 / s).powi(k as i32) } else { 0.0 };
    Ok(BoundCheck::new(hits, trials, bound, met))
}

/// Frequency of |X^A| ≥ √k·|X| for A ~ μ(k), against (1 − 2/k^(d−1))^k.
///
/// Requires k ≥ 4, d ≥ 2 and |X| ≤ n/k^d.
pub fn explicit_growth_check<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    x: &PointSet,
    k: usize,
    d: f64,
    trials: u64,
    rng: &mut R,
    policy: Preconditions,
) -> Result<BoundCheck> {
    check_degree(instance, x)?;
    if k == 0 {
        return Err(Error::EmptyGeneratorSet);
    }
    let n = instance.degree() as f64;
    let kf = k as f64;
    let size = x.len() as f64;
    let met = k >= 4 && d >= 2.0 && size.ln() <= n.ln() - d * kf.ln();
    gate(met, policy, || format!("need k >= 4, d >= 2, |X| <= n/k^d (n={n}, k={k}, d={d}, |X|={size})"))?;

    let threshold = kf.sqrt() * size;
    let master = master_seed(rng);
    let hits = count_trials(trials, master, |t| {
        let a = draw(instance, k, t);
        image_of_set(instance, x, &a).len() as f64 >= threshold
    });
    let bound = (1.0 - 2.0 / kf.powf(d - 1.0)).max(0.0).powi(k as i32);
    Ok(BoundCheck::new(hits, trials, bound, met))
}

/// Outcome of [`fill_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FillCheck {
    /// n/|X|
    pub m: f64,
    /// k ≥ 4m·ln n
    pub lemma_precondition_met: bool,
    /// P(X^B = Ω) against 1 − 2^(−k/m).
    pub cover: BoundCheck,
    /// 1 − n(1 − |X|/n)^k, valid for every transitive action.
    pub union_bound: f64,
    /// Exact P(X^B = Ω) by inclusion-exclusion, for small enumerable actions.
    pub exact_cover: Option<f64>,
    /// Frequency of point 0 missing from X^B; `analytic_bound` holds the exact
    /// miss probability (1 − |X|/n)^k and `satisfied` is the two-sided 3σ test.
    pub point_miss: BoundCheck,
}

/// Frequency of X^B = Ω for B ~ μ(k).
pub fn fill_check<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    x: &PointSet,
    k: usize,
    trials: u64,
    rng: &mut R,
) -> Result<FillCheck> {
    check_degree(instance, x)?;
    if x.is_empty() {
        return Err(Error::PreconditionUnmet("fill needs |X| >= 1".into()));
    }
    if k == 0 {
        return Err(Error::EmptyGeneratorSet);
    }
    let n = instance.degree();
    let nf = n as f64;
    let m = nf / x.len() as f64;
    let met = k as f64 >= 4.0 * m * nf.ln();
    let miss = (1.0 - 1.0 / m).powi(k as i32);

    let master = master_seed(rng);
    let [covered, missed] = tally_trials(trials, master, |t| {
        let image = image_of_set(instance, x, &draw(instance, k, t));
        [image.is_full(), !image.contains(0)]
    });

    let exact_cover = if n <= EXACT_COVER_MAX_DEGREE
        && instance.order().exact.is_some_and(|o| o <= EXACT_COVER_MAX_ORDER)
    {
        Some(exact_cover_probability(instance, x, k, EXACT_COVER_MAX_ORDER)?)
    } else {
        None
    };
    Ok(FillCheck {
        m,
        lemma_precondition_met: met,
        cover: BoundCheck::new(covered, trials, 1.0 - (-(k as f64) / m).exp2(), met),
        union_bound: 1.0 - nf * miss,
        exact_cover,
        point_miss: {
            let mut check = BoundCheck::new(missed, trials, miss, true);
            check.satisfied = check.consistent_with(miss, 3.0);
            check
        },
    })
}

/// P(X^B = Ω) for B ~ μ(k), exactly.
///
/// Inclusion-exclusion over the uncovered set U:
/// P = Σ_U (−1)^|U| q(U)^k with q(U) = P_g(X^g ∩ U = ∅), where q is
/// obtained from a subset-sum transform over the images X^g of all g ∈ G.
pub fn exact_cover_probability(instance: &ActionInstance, x: &PointSet, k: usize, budget: u64) -> Result<f64> {
    check_degree(instance, x)?;
    let n = instance.degree();
    if n > EXACT_COVER_MAX_DEGREE {
        return Err(Error::BudgetExceeded { required: 1u64 << n.min(63), budget: 1 << EXACT_COVER_MAX_DEGREE });
    }
    let group = instance.enumerate_group(budget)?;
    let full = (1usize << n) - 1;
    let mut zeta = vec![0u64; 1 << n];
    for g in &group {
        let mask = x.iter().fold(0usize, |acc, p| acc | 1 << instance.act_unchecked(g, p));
        zeta[mask] += 1;
    }
    // zeta[T] = #{g : X^g ⊆ T}
    for bit in 0..n {
        for t in 0..=full {
            if t & (1 << bit) != 0 {
                zeta[t] += zeta[t ^ (1 << bit)];
            }
        }
    }
    let order = group.len() as f64;
    let total: f64 = (0..=full)
        .map(|u| {
            let q = zeta[full ^ u] as f64 / order;
            let term = q.powi(k as i32);
            if (u as u32).count_ones() % 2 == 0 { term } else { -term }
        })
        .sum();
    Ok(total.clamp(0.0, 1.0))
}
