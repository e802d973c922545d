use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::scalar::{binomial, rat, ScalarExpr};
use crate::transform::{transform_t, LinearCanonicalTransform, TransformConfig};
use crate::weyl::{WeylIndex, WeylOp};

use super::{solve_minimal, Comparison, IndexedCoeff, RecurrenceTable, ResidualReport, Scheme, Seeds};

/// Output of [`solve_linear_td`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearSolution {
    /// `A[k,j] = (-1)^k/(2k+1) C(2k+1, j)`, coefficient of `T[-2k-1, 2k+1-j]`, `0 <= j <= 2k+1`.
    pub table: RecurrenceTable,
    /// Left side minus right side of
    /// `(2k-j+1) A[k,j] + (2k-1) A[k-1,j] + (2k-1) A[k-1,j-1] = delta`.
    pub recursion_residual: Vec<IndexedCoeff>,
    /// The minimal solution of the same recursion (all `T[m,0]` coefficients zero).
    pub minimal: Comparison,
    #[serde(skip)]
    pub theta0: WeylOp,
    /// Image of `theta0` under `Q = q/rho`, `P = rho p - (rhodot/z) q`, bands `r <= r_max`.
    #[serde(skip)]
    pub theta: WeylOp,
    /// `[theta, I'] - i hbar` with `I'` the image of `(P^2+Q^2)/2 + Q`.
    pub transformed_residual: ResidualReport,
}

/// `(P^2 + Q^2)/2 + Q`.
pub fn linear_h0() -> WeylOp {
    let mut h = WeylOp::zero();
    h.add_term(WeylIndex::new(2, 0), &ScalarExpr::ratio(1, 2));
    h.add_term(WeylIndex::new(0, 2), &ScalarExpr::ratio(1, 2));
    h.add_term(WeylIndex::new(0, 1), &ScalarExpr::one());
    h
}

fn akj(k: i64, j: i64) -> ScalarExpr {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    ScalarExpr::rational(binomial(2 * k + 1, j as usize) * rat(sign, 2 * k + 1))
}

fn table_to_op(t: &RecurrenceTable) -> WeylOp {
    t.entries.iter().map(|(k, c)| (WeylIndex::new(-2 * k[0] - 1, 2 * k[0] + 1 - k[1]), c.clone())).collect()
}

/// Left minus right of the `A[k,j]` recursion at every `(k, j)`, `k <= order + 1`.
pub fn linear_recursion_residual(t: &RecurrenceTable, k_max: i64) -> Vec<IndexedCoeff> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for j in 0..=2 * k + 1 {
            let mut lhs = t.get(&[k, j]).scale_rat(&rat(2 * k - j + 1, 1));
            lhs += &(&t.get(&[k - 1, j]) + &t.get(&[k - 1, j - 1])).scale_rat(&rat(2 * k - 1, 1));
            if k == 0 && j == 0 {
                lhs = &lhs - &ScalarExpr::one();
            }
            if !lhs.is_zero() {
                out.push(IndexedCoeff { idx: vec![k, j], coeff: lhs });
            }
        }
    }
    out
}

/// Conjugate of the linear invariant, built from the static solution for `(P^2+Q^2)/2 + Q`.
/// `r_max` bounds the transformed bands. Seeds keyed `[k, j]` replace table entries.
pub fn solve_linear_td(order: usize, r_max: usize, seeds: &Seeds) -> Result<LinearSolution> {
    let k_max = order as i64;
    let mut table = RecurrenceTable::new(Scheme::Akj, order).bound("k", 0, k_max).bound("j", 0, 2 * k_max + 1);
    for k in 0..=k_max {
        for j in 0..=2 * k + 1 {
            table.set(&[k, j], seeds.get(&vec![k, j]).cloned().unwrap_or_else(|| akj(k, j)));
        }
    }
    let recursion_residual = linear_recursion_residual(&table, k_max);
    let theta0 = table_to_op(&table);
    let m_min = -2 * k_max - 1;
    table.residual_report = Some(ResidualReport::conjugacy(&theta0, &linear_h0(), m_min, "(P^2+Q^2)/2 + Q")?);

    let min = solve_minimal(&linear_h0(), m_min, &BTreeMap::new())?;
    let mut min_entries = BTreeMap::new();
    for (idx, c) in min.theta.iter() {
        min_entries.insert(vec![(-idx.m - 1) / 2, -idx.m - idx.n], c.clone());
    }
    let minimal = Comparison::of("minimal solution", &table.entries, &min_entries)
        .note("the recursion leaves A[k,2k+1] free; the minimal solution sets it to zero");

    let t = LinearCanonicalTransform::ermakov_z();
    let cfg = TransformConfig::new(r_max);
    let mut theta = WeylOp::zero();
    for (k, c) in &table.entries {
        let m = 2 * k[0] + 1;
        if m as usize <= r_max {
            theta.add_scaled(&transform_t(-m, m - k[1], &t, &cfg)?, c);
        }
    }
    let mut i_prime = WeylOp::zero();
    for (idx, c) in linear_h0().iter() {
        i_prime.add_scaled(&transform_t(idx.m, idx.n, &t, &cfg)?, c);
    }
    let transformed_residual =
        ResidualReport::conjugacy(&theta, &i_prime, -(r_max as i64) + 1, "image of (P^2+Q^2)/2 + Q")?;
    Ok(LinearSolution { table, recursion_residual, minimal, theta0, theta, transformed_residual })
}
