use serde::Serialize;

use crate::error::{Error, Result};

/// Block schedule for iterated growth: D blocks of h elements each.
///
/// Works on ln n rather than n so that astronomically large degrees are fine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofSchedule {
    pub c: f64,
    pub d: u64,
    pub h: u64,
    /// h·D ≤ k
    pub feasible_hd: bool,
    /// h^(D/2) > n with the floored D and h.
    pub feasible_growth: bool,
    /// (k ln k / (C ln n))^C > k², the unfloored form of the same condition.
    pub smooth_condition: bool,
    /// 1 − 2D/h^(2/ε − 1), may be negative.
    pub probability_floor: f64,
    pub epsilon: f64,
    pub k: u64,
    pub ln_n: f64,
}

fn check_inputs(ln_n: f64, k: u64, epsilon: f64) -> Result<()> {
    if k < 2 || !(ln_n >= std::f64::consts::LN_2) || !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::PreconditionUnmet(format!(
            "schedule needs k >= 2, n >= 2, 0 < epsilon < 1 (k={k}, ln n={ln_n}, epsilon={epsilon})"
        )));
    }
    Ok(())
}

fn growth_holds(d: u64, h: u64, ln_n: f64) -> bool {
    // strict, so equality h^D = n^2 must not pass on rounding noise
    h >= 1 && d as f64 / 2.0 * (h as f64).ln() > ln_n * (1.0 + 1e-13)
}

fn assemble(ln_n: f64, k: u64, epsilon: f64, c: f64, d: u64) -> Result<ProofSchedule> {
    if d == 0 {
        return Err(Error::DegenerateSchedule { d, h: 0 });
    }
    let h = k / d;
    if h == 0 {
        return Err(Error::DegenerateSchedule { d, h });
    }
    let lk = (k as f64).ln();
    Ok(ProofSchedule {
        c,
        d,
        h,
        feasible_hd: h * d <= k,
        feasible_growth: growth_holds(d, h, ln_n),
        smooth_condition: c * (k as f64 * lk / (c * ln_n)).ln() > 2.0 * lk,
        probability_floor: 1.0 - 2.0 * d as f64 / (h as f64).powf(2.0 / epsilon - 1.0),
        epsilon,
        k,
        ln_n,
    })
}

/// D = ⌊C ln n / ln k⌋, h = ⌊k/D⌋ and their feasibility flags.
pub fn proof_schedule(ln_n: f64, k: u64, epsilon: f64, c: f64) -> Result<ProofSchedule> {
    check_inputs(ln_n, k, epsilon)?;
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::PreconditionUnmet(format!("schedule needs C > 0, got {c}")));
    }
    // exact powers (n^C = k^D) can land a few ulps below the integer
    let ratio = c * ln_n / (k as f64).ln() * (1.0 + 1e-12);
    let d = if ratio >= u64::MAX as f64 { u64::MAX } else { ratio.floor() as u64 };
    assemble(ln_n, k, epsilon, c, d)
}

/// Smallest C whose schedule satisfies h^(D/2) > n, found by scanning D.
///
/// Every C in [D ln k / ln n, (D+1) ln k / ln n) yields the same D, so the
/// scan over D = 1..=k is exact. Returns `None` when no D works.
pub fn minimal_feasible_schedule(ln_n: f64, k: u64, epsilon: f64) -> Result<Option<ProofSchedule>> {
    check_inputs(ln_n, k, epsilon)?;
    let lk = (k as f64).ln();
    for d in 1..=k {
        if growth_holds(d, k / d, ln_n) {
            let mut c = d as f64 * lk / ln_n;
            while (c * ln_n / lk).floor() < d as f64 {
                c = c.next_up();
            }
            return assemble(ln_n, k, epsilon, c, d).map(Some);
        }
    }
    Ok(None)
}

/// The D maximizing h^(D/2), used when no schedule is feasible.
///
/// Ties go to the smaller D. Accepts k = 1 (D = h = 1).
pub fn best_effort_schedule(ln_n: f64, k: u64, epsilon: f64) -> ProofSchedule {
    let k = k.max(1);
    let best = (1..=k)
        .map(|d| (d, d as f64 / 2.0 * ((k / d) as f64).ln()))
        .fold((1, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc })
        .0;
    let lk = (k as f64).ln();
    let h = k / best;
    ProofSchedule {
        c: if ln_n > 0.0 { best as f64 * lk / ln_n } else { 0.0 },
        d: best,
        h,
        feasible_hd: true,
        feasible_growth: growth_holds(best, h, ln_n),
        smooth_condition: false,
        probability_floor: 1.0 - 2.0 * best as f64 / (h as f64).powf(2.0 / epsilon - 1.0),
        epsilon,
        k,
        ln_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let ln_n = (1e6f64).ln();
        let s = proof_schedule(ln_n, 52, 0.5, 8.0).unwrap();
        assert_eq!((s.d, s.h), (27, 1));
        assert!(s.feasible_hd);
        assert!(!s.feasible_growth);
        assert!(!s.smooth_condition);
    }

    #[test]
    fn huge_n_is_arithmetic_only() {
        let ln_n = 1000.0 * std::f64::consts::LN_2;
        let k = 1u64 << 40;
        let s = proof_schedule(ln_n, k, 0.5, 4.0).unwrap();
        // 4 · 1000 / 40 exactly
        assert_eq!(s.d, 100);
        assert!(s.feasible_growth);
        assert!(s.probability_floor > 0.99);
    }

    #[test]
    fn degenerate_and_invalid() {
        let ln_n = (100f64).ln();
        assert!(matches!(proof_schedule(ln_n, 1000, 0.5, 0.1), Err(Error::DegenerateSchedule { d: 0, .. })));
        assert!(matches!(proof_schedule(ln_n, 4, 0.5, 100.0), Err(Error::DegenerateSchedule { h: 0, .. })));
        assert!(proof_schedule(ln_n, 1, 0.5, 1.0).is_err());
        assert!(proof_schedule(ln_n, 10, 1.0, 1.0).is_err());
        assert!(proof_schedule(ln_n, 10, 0.5, -1.0).is_err());
    }

    #[test]
    fn minimal_schedule_is_minimal() {
        let ln_n = (1e4f64).ln();
        let s = minimal_feasible_schedule(ln_n, 1000, 0.5).unwrap().unwrap();
        assert!(s.feasible_growth);
        assert_eq!(proof_schedule(ln_n, 1000, 0.5, s.c).unwrap().d, s.d);
        if s.d > 1 {
            let below = proof_schedule(ln_n, 1000, 0.5, s.c * 0.999).unwrap();
            assert!(!below.feasible_growth);
        }
        assert!(minimal_feasible_schedule((1e6f64).ln(), 52, 0.5).unwrap().is_none());
    }

    #[test]
    fn best_effort_maximizes() {
        let s = best_effort_schedule((1e6f64).ln(), 52, 0.5);
        let value = |d: u64| d as f64 / 2.0 * ((52 / d) as f64).ln();
        assert!((1..=52).all(|d| value(d) <= value(s.d)));
        assert_eq!(best_effort_schedule(3.0, 1, 0.5).d, 1);
    }
}
