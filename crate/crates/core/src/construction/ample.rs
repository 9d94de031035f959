//! Margin for the ampleness of `π^*H - Σ m^{k-l} E_l` after `k` sequential
//! blow-ups along curves.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `table[l][l2]` is `E_{l2} . L` for a curve `L` in the family `N_l`
/// contracted by the `l`-th blow-up (0-based). Valid tables have `-1` on the
/// diagonal, zeros for `l2 < l` and non-negative entries for `l2 > l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmpleMarginProblem {
    table: Vec<Vec<i64>>,
}

impl AmpleMarginProblem {
    pub fn new(table: Vec<Vec<i64>>) -> Result<Self> {
        let k = table.len();
        if k == 0 {
            return Err(Error::AmpleTable("the table must have at least one row".into()));
        }
        for (l, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::AmpleTable(format!("row {} has {} entries, expected {k}", l + 1, row.len())));
            }
            for (l2, &x) in row.iter().enumerate() {
                let ok = match l2.cmp(&l) {
                    std::cmp::Ordering::Equal => x == -1,
                    std::cmp::Ordering::Less => x == 0,
                    std::cmp::Ordering::Greater => x >= 0,
                };
                if !ok {
                    return Err(Error::AmpleTable(format!(
                        "entry ({}, {}) = {x} violates the shape (diagonal -1, zero before it, non-negative after)",
                        l + 1,
                        l2 + 1
                    )));
                }
            }
        }
        Ok(AmpleMarginProblem { table })
    }

    pub fn k(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<i64>] {
        &self.table
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmpleMarginCertificate {
    /// Largest off-diagonal entry.
    pub beta: i64,
    /// `beta + 2`, the multiplier used for the certificate.
    pub m: i64,
    /// `-(Σ_{l2} m^{k-1-l2} E_{l2}) . L` for `L ∈ N_l`, one value per row,
    /// each at least `m^{k-1-l} (1 - beta/(m-1)) > 0`.
    pub values: Vec<BigInt>,
}

pub fn ample_margin(p: &AmpleMarginProblem) -> Result<AmpleMarginCertificate> {
    let k = p.k();
    let beta = p
        .table
        .iter()
        .enumerate()
        .flat_map(|(l, row)| row.iter().skip(l + 1).copied())
        .max()
        .unwrap_or(0)
        .max(0);
    let m = beta + 2;
    let mb = BigInt::from(m);
    let mut powers = vec![BigInt::one(); k];
    for i in (0..k.saturating_sub(1)).rev() {
        powers[i] = &powers[i + 1] * &mb;
    }
    let mut values = Vec::with_capacity(k);
    for (l, row) in p.table.iter().enumerate() {
        let value: BigInt = -row
            .iter()
            .zip(&powers)
            .map(|(&x, pw)| pw * x)
            .sum::<BigInt>();
        if value <= BigInt::zero() {
            return Err(Error::Inconsistent(format!(
                "ample-margin certificate value {value} for row {} is not positive",
                l + 1
            )));
        }
        values.push(value);
    }
    Ok(AmpleMarginCertificate { beta, m, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_blowup() {
        let c = ample_margin(&AmpleMarginProblem::new(vec![vec![-1]]).unwrap()).unwrap();
        assert_eq!((c.beta, c.m), (0, 2));
        assert_eq!(c.values, vec![BigInt::from(1)]);
    }

    #[test]
    fn two_steps() {
        let p = AmpleMarginProblem::new(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        let c = ample_margin(&p).unwrap();
        assert_eq!((c.beta, c.m), (1, 3));
        assert_eq!(c.values, vec![BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(AmpleMarginProblem::new(vec![vec![-1, 0], vec![1, -1]]).is_err());
        assert!(AmpleMarginProblem::new(vec![vec![0]]).is_err());
        assert!(AmpleMarginProblem::new(vec![vec![-1, -2], vec![0, -1]]).is_err());
        assert!(AmpleMarginProblem::new(vec![]).is_err());
    }
}
