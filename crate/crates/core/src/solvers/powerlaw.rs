use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{falling, rat, ScalarExpr, Symbol};
use crate::weyl::{factorial, poisson_bracket, WeylIndex, WeylOp};

use super::{RecurrenceTable, ResidualReport, Scheme, Seeds};

/// `H_L = p^2/2 + q^L/L`.
pub fn powerlaw_hamiltonian(l: i64) -> WeylOp {
    let mut h = WeylOp::zero();
    h.add_term(WeylIndex::new(2, 0), &ScalarExpr::ratio(1, 2));
    h.add_term(WeylIndex::new(0, l), &ScalarExpr::ratio(1, l));
    h
}

/// Lowest column kept at a given order.
pub fn powerlaw_m_min(order: usize) -> i64 {
    -2 * order as i64 - 1
}

/// Minimal `alpha[m,n]` for `[Theta, H_L] = i hbar`, columns `m >= -2 order - 1`.
///
/// `b alpha[a,b] = delta + (1/L) sum_j (-hbar^2/4)^j/(2j+1)! (a+2j+2)_(2j+1) L_(2j+1) alpha[a+2j+2, b-L+2j]`
pub fn solve_powerlaw_quantum(l: i64, order: usize, seeds: &Seeds) -> Result<RecurrenceTable> {
    solve(l, order, seeds, true)
}

/// Classical counterpart: only the `j = 0` term, and `{Theta, H_L} = 1`.
pub fn solve_powerlaw_classical(l: i64, order: usize, seeds: &Seeds) -> Result<RecurrenceTable> {
    solve(l, order, seeds, false)
}

fn solve(l: i64, order: usize, seeds: &Seeds, quantum: bool) -> Result<RecurrenceTable> {
    if l < 1 {
        return Err(Error::Domain(format!("L must be >= 1, got {l}")));
    }
    let m_min = powerlaw_m_min(order);
    let mut alpha: BTreeMap<(i64, i64), ScalarExpr> = BTreeMap::new();
    let mut unmet = Vec::new();
    // hbar^2 weight per j
    let weights: Vec<ScalarExpr> = (0..)
        .map(|j: usize| {
            let f = falling(l, 2 * j + 1);
            (j, f)
        })
        .take_while(|(j, f)| *j == 0 || (quantum && !num_traits::Zero::is_zero(f)))
        .map(|(j, f)| {
            let r = num_rational::BigRational::new(f, factorial(2 * j + 1) * num_bigint::BigInt::from(l));
            let mut w = ScalarExpr::rational(r * rat(-1, 4).pow(j as i32));
            w = w.mul_monomial(&crate::scalar::Monomial::var(Symbol::Hbar, 2 * j as i32));
            w
        })
        .collect();
    for a in (m_min..=-1).rev() {
        let mut rows: BTreeMap<i64, ScalarExpr> = BTreeMap::new();
        if a == -1 {
            rows.insert(1, ScalarExpr::one());
        }
        for (j, w) in weights.iter().enumerate() {
            let src = a + 2 * j as i64 + 2;
            let fall = falling(src, 2 * j + 1);
            if num_traits::Zero::is_zero(&fall) {
                continue;
            }
            let w = w.scale_rat(&fall.into());
            for ((_, b0), c) in alpha.range((src, i64::MIN)..=(src, i64::MAX)) {
                *rows.entry(b0 + l - 2 * j as i64).or_default() += &(&w * c);
            }
        }
        for (idx, v) in seeds.iter().filter(|(k, _)| k.len() == 2 && k[0] == a) {
            let rhs = rows.remove(&idx[1]).unwrap_or_default();
            let left = &rhs - &v.scale_rat(&rat(idx[1], 1));
            if !left.is_zero() {
                unmet.push((idx[1], left));
            }
            alpha.insert((a, idx[1]), v.clone());
        }
        for (b, rhs) in rows {
            if rhs.is_zero() {
                continue;
            }
            if b <= 0 {
                unmet.push((b, rhs));
                continue;
            }
            alpha.insert((a, b), rhs.scale_rat(&rat(1, b)));
        }
    }
    let mut table = RecurrenceTable::new(Scheme::AlphaMn, order).bound("m", m_min, -1);
    for ((a, b), c) in alpha {
        table.set(&[a, b], c);
    }
    let theta = alpha_to_op(&table);
    let h = powerlaw_hamiltonian(l);
    let name = format!("p^2/2 + q^{l}/{l}");
    let mut report = if quantum {
        ResidualReport::conjugacy(&theta, &h, m_min, &name)?
    } else {
        let mut r = poisson_bracket(&theta, &h);
        r.add_term(WeylIndex::new(0, 0), &-ScalarExpr::one());
        ResidualReport::from_residual(&r, m_min, "{Theta, H} = 1", &name)
    };
    for (b, c) in unmet {
        report = report.note(format!("no unknown for b = {b}, left-over {c}"));
    }
    table.residual_report = Some(report);
    Ok(table)
}

/// `sum alpha[m,n] T[m,n]` for an `alpha_mn` table.
pub fn alpha_to_op(t: &RecurrenceTable) -> WeylOp {
    t.entries.iter().map(|(k, v)| (WeylIndex::new(k[0], k[1]), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::solve_minimal;

    #[test]
    fn matches_column_solver() {
        for l in 1..=5 {
            let t = solve_powerlaw_quantum(l, 4, &Seeds::new()).unwrap();
            let m = solve_minimal(&powerlaw_hamiltonian(l), powerlaw_m_min(4), &BTreeMap::new()).unwrap();
            assert_eq!(alpha_to_op(&t), m.theta, "L={l}");
            assert!(t.residual_report.unwrap().passed, "L={l}");
        }
    }

    #[test]
    fn classical_residual() {
        for l in 1..=4 {
            let t = solve_powerlaw_classical(l, 5, &Seeds::new()).unwrap();
            assert!(t.residual_report.unwrap().passed, "L={l}");
        }
    }
}
