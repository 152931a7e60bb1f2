use serde::Serialize;

use crate::action::ActionInstance;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::schreier::PointSet;

/// Both sides of Σ_g |X^g ∩ Y| = (|G|/n)·|X|·|Y|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCount {
    pub lhs_sum: u64,
    pub rhs: u64,
    /// |G|/n, the size of a point stabilizer.
    pub stabilizer_order: u64,
    pub group_order: u64,
}

impl DoubleCount {
    pub fn holds(&self) -> bool {
        self.lhs_sum == self.rhs
    }
}

/// Counts pairs (y, g) with y ∈ X^g ∩ Y by enumerating all of G.
pub fn double_count_check(
    instance: &ActionInstance,
    x: &PointSet,
    y: &PointSet,
    budget: u64,
) -> Result<DoubleCount> {
    let n = instance.degree();
    if x.degree() != n || y.degree() != n {
        return Err(Error::PreconditionUnmet(format!(
            "point sets have degree {}/{}, action has degree {n}",
            x.degree(),
            y.degree()
        )));
    }
    let order = instance.order().exact.ok_or(Error::OrderUnknown)?;
    let group = instance.enumerate_group(budget)?;
    let xs: Vec<u32> = x.iter().collect();
    let lhs_sum = par::sum_range(Exec::default(), group.len(), |i| {
        xs.iter().filter(|&&p| y.contains(instance.act_unchecked(&group[i], p))).count() as u64
    });
    let stabilizer_order = order / n as u64;
    Ok(DoubleCount {
        lhs_sum,
        rhs: stabilizer_order * x.len() as u64 * y.len() as u64,
        stabilizer_order,
        group_order: order,
    })
}
