use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::scalar::{ScalarExpr, Symbol};
use crate::transform::{transform_t, LinearCanonicalTransform, TransformConfig};
use crate::weyl::{WeylIndex, WeylOp};

use super::{build_invariant, Comparison, InvariantSpec, RecurrenceTable, ResidualReport, Scheme, Seeds};

/// Output of [`solve_quadratic_td`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticSolution {
    /// `A[k]`, the coefficient of `T[-k-1,k+1]`.
    pub table: RecurrenceTable,
    #[serde(skip)]
    pub theta: WeylOp,
    /// Against `A_k = ((1+x)^(k+1) + (-1)^k (1-x)^(k+1)) / ((k+1) rho^(2k))`,
    /// `x = mu rho rhodot`, with the overall `1/(4 rho^2)`.
    pub closed_form: Comparison,
    /// Against the transformed harmonic solution.
    pub transformed: Comparison,
}

fn sym(s: Symbol) -> ScalarExpr {
    ScalarExpr::sym(s)
}

/// Minimal `Theta` with `[Theta, I] = i hbar` for the quadratic invariant.
///
/// `B[k] = (2 mu rho rhodot B[k-1] - (mu^2 rhodot^2 + rho^-2) B[k-2]) / rho^2`,
/// `B[0] = 1/(2 rho^2)`, `B[1] = mu rhodot / rho^3`, and `A[k] = B[k]/(k+1)`.
/// Seeds are keyed by `[k]` and replace `B[k]`.
pub fn solve_quadratic_td(order: usize, seeds: &Seeds) -> Result<QuadraticSolution> {
    let spec = InvariantSpec::quadratic();
    let rho_m2 = ScalarExpr::pow_sym(Symbol::Rho, -2);
    let two_gamma = spec.gamma.scale_rat(&crate::scalar::rat(2, 1));
    let mut b: Vec<ScalarExpr> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let v = if let Some(s) = seeds.get(&vec![k as i64]) {
            s.clone()
        } else if k == 0 {
            rho_m2.scale_rat(&crate::scalar::rat(1, 2))
        } else {
            let prev2 = if k >= 2 { &spec.beta * &b[k - 2] } else { ScalarExpr::zero() };
            &(&(&two_gamma * &b[k - 1]) - &prev2) * &rho_m2
        };
        b.push(v);
    }
    let mut table = RecurrenceTable::new(Scheme::Ak, order).bound("k", 0, order as i64);
    let mut theta = WeylOp::zero();
    for (k, bk) in b.iter().enumerate() {
        let a = bk.scale_rat(&crate::scalar::rat(1, k as i64 + 1));
        theta.add_term(WeylIndex::new(-(k as i64) - 1, k as i64 + 1), &a);
        table.set(&[k as i64], a);
    }
    let i_op = build_invariant(&spec);
    table.residual_report = Some(
        ResidualReport::conjugacy(
            &theta,
            &i_op,
            -(order as i64),
            "rho^2 p^2 - mu rho rhodot (pq+qp) + (mu^2 rhodot^2 + rho^-2) q^2",
        )?
        .note("[I, Theta] = -i hbar with this orientation"),
    );
    let closed_form = closed_form_check(&table)?;
    let transformed = transformed_check(&theta, order)?;
    Ok(QuadraticSolution { table, theta, closed_form, transformed })
}

fn closed_form_check(table: &RecurrenceTable) -> Result<Comparison> {
    let x = &(&sym(Symbol::Mu) * &sym(Symbol::Rho)) * &sym(Symbol::Rhodot);
    let plus = &ScalarExpr::one() + &x;
    let minus = &ScalarExpr::one() - &x;
    let mut expected = BTreeMap::new();
    for k in 0..=table.truncation.order as i64 {
        let mut num = plus.pow(k as i32 + 1)?;
        let tail = minus.pow(k as i32 + 1)?;
        if k % 2 == 0 {
            num += &tail;
        } else {
            num = &num - &tail;
        }
        let a = num
            .mul_monomial(&crate::scalar::Monomial::var(Symbol::Rho, -2 * k as i32 - 2))
            .scale_rat(&crate::scalar::rat(1, 4 * (k + 1)));
        if !a.is_zero() {
            expected.insert(vec![k], a);
        }
    }
    Ok(Comparison::of("closed form A_k", &expected, &table.entries))
}

/// `1/2 sum (-1)^k/(2k+1) T'[-2k-1,2k+1]` with `T'` the image under
/// `Q = q/rho, P = rho p - mu rhodot q`, on the columns the table covers.
fn transformed_check(theta: &WeylOp, order: usize) -> Result<Comparison> {
    let r_max = order + 1;
    let t = LinearCanonicalTransform::ermakov();
    let cfg = TransformConfig::new(r_max);
    let mut sum = WeylOp::zero();
    let mut k = 0i64;
    while 2 * k < r_max as i64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let w = ScalarExpr::ratio(sign, 2 * (2 * k + 1));
        sum.add_scaled(&transform_t(-2 * k - 1, 2 * k + 1, &t, &cfg)?, &w);
        k += 1;
    }
    Ok(Comparison::of_ops("transformed harmonic series", &sum, theta, -(r_max as i64))
        .note("normalized by 1/2, since I maps to P^2 + Q^2"))
}
