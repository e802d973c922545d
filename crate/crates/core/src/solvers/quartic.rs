use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::scalar::{rat, Monomial, ScalarExpr, Symbol};
use crate::weyl::{WeylIndex, WeylOp};

use super::{solve_minimal, Comparison, RecurrenceTable, ResidualReport, Scheme, Seeds};

/// Output of [`solve_quartic`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuarticSolution {
    /// `C[M,N]`.
    pub c: RecurrenceTable,
    /// `B[M,N,K]`, solved directly from its own recursion.
    pub b: RecurrenceTable,
    /// `A[M,N,K]`, coefficient of `T[-2N-2M-1, 4N-2M-2K+1]`.
    pub a: RecurrenceTable,
    /// Cross-checks between the tables and against the minimal solution.
    pub checks: Vec<Comparison>,
    #[serde(skip)]
    pub theta0: WeylOp,
}

/// `(P^2 + Q^2)/2 + Q^4/4`.
pub fn quartic_h0() -> WeylOp {
    let mut h = WeylOp::zero();
    h.add_term(WeylIndex::new(2, 0), &ScalarExpr::ratio(1, 2));
    h.add_term(WeylIndex::new(0, 2), &ScalarExpr::ratio(1, 2));
    h.add_term(WeylIndex::new(0, 4), &ScalarExpr::ratio(1, 4));
    h
}

fn hbar2(c: BigRational) -> ScalarExpr {
    ScalarExpr::rational(c).mul_monomial(&Monomial::var(Symbol::Hbar, 2))
}

/// `(1/2)_n`.
fn half_rising(n: i64) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, i| acc * rat(2 * i + 1, 2))
}

/// `C(x, k)` for `x = num/2`.
fn half_binomial(num: i64, k: i64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * rat(num - 2 * i, 2 * (i + 1)))
}

fn lattice(order: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (0..=order).flat_map(|n| (0..=n).flat_map(move |m| (0..=n - m).map(move |k| (m, n, k))))
}

fn delta(m: i64, n: i64, k: i64) -> ScalarExpr {
    if m == 0 && n == 0 && k == 0 {
        ScalarExpr::one()
    } else {
        ScalarExpr::zero()
    }
}

/// `(4N-2M+1) C[M,N] = delta - C[M,N-1] + hbar^2 (N+M-1) C[M-1,N-1]`, `0 <= M <= N <= order`.
pub fn quartic_c_table(order: usize, seeds: &Seeds) -> RecurrenceTable {
    let o = order as i64;
    let mut t = RecurrenceTable::new(Scheme::CMn, order).bound("N", 0, o).bound("M", 0, o);
    for n in 0..=o {
        for m in 0..=n {
            let v = seeds.get(&vec![m, n]).cloned().unwrap_or_else(|| {
                let rhs =
                    &(&delta(m, n, 0) - &t.get(&[m, n - 1])) + &(&hbar2(rat(n + m - 1, 1)) * &t.get(&[m - 1, n - 1]));
                rhs.scale_rat(&rat(1, 4 * n - 2 * m + 1))
            });
            t.set(&[m, n], v);
        }
    }
    t
}

/// `(4N-2M-2K+1) B = delta - B[M,N-1,K-1] - B[M,N-1,K] + hbar^2 (N+M-1) B[M-1,N-1,K]`.
pub fn quartic_b_table(order: usize) -> RecurrenceTable {
    let o = order as i64;
    let mut t = RecurrenceTable::new(Scheme::BNmk, order).bound("N", 0, o).bound("M", 0, o).bound("K", 0, o);
    for (m, n, k) in lattice(o) {
        let rhs = &(&(&delta(m, n, k) - &t.get(&[m, n - 1, k - 1])) - &t.get(&[m, n - 1, k]))
            + &(&hbar2(rat(n + m - 1, 1)) * &t.get(&[m - 1, n - 1, k]));
        t.set(&[m, n, k], rhs.scale_rat(&rat(1, 4 * n - 2 * m - 2 * k + 1)));
    }
    t
}

/// `(4N-2M-2K+1) A = delta - (2N+2M-1)(A[M,N-1,K-1] + A[M,N-1,K]) + hbar^2/4 (2N+2M-3)(2N+2M-2)(2N+2M-1) A[M-1,N-1,K]`.
pub fn quartic_a_table(order: usize) -> RecurrenceTable {
    let o = order as i64;
    let mut t = RecurrenceTable::new(Scheme::AMnk, order).bound("N", 0, o).bound("M", 0, o).bound("K", 0, o);
    for (m, n, k) in lattice(o) {
        let r = 2 * n + 2 * m;
        let mut rhs =
            &delta(m, n, k) - &(&t.get(&[m, n - 1, k - 1]) + &t.get(&[m, n - 1, k])).scale_rat(&rat(r - 1, 1));
        rhs += &(&hbar2(rat((r - 3) * (r - 2) * (r - 1), 4)) * &t.get(&[m - 1, n - 1, k]));
        t.set(&[m, n, k], rhs.scale_rat(&rat(1, 4 * n - 2 * m - 2 * k + 1)));
    }
    t
}

/// `sum A[M,N,K] T[-2N-2M-1, 4N-2M-2K+1]`, coinciding indices summed.
pub fn quartic_theta(a: &RecurrenceTable) -> WeylOp {
    a.entries
        .iter()
        .map(|(i, c)| (WeylIndex::new(-2 * i[1] - 2 * i[0] - 1, 4 * i[1] - 2 * i[0] - 2 * i[2] + 1), c.clone()))
        .collect()
}

/// Static quartic chain. Seeds keyed `[M,N]` replace `C` entries.
pub fn solve_quartic(order: usize, seeds: &Seeds) -> Result<QuarticSolution> {
    let o = order as i64;
    let mut c = quartic_c_table(order, seeds);
    let b = quartic_b_table(order);
    let a = quartic_a_table(order);
    let mut checks = Vec::new();

    // B = 2^-N A / (1/2)_(N+M)
    let mut b_from_a = BTreeMap::new();
    for (i, v) in &a.entries {
        let f = rat(1, 1i64 << i[1]) / half_rising(i[0] + i[1]);
        b_from_a.insert(i.clone(), v.scale_rat(&f));
    }
    checks.push(Comparison::of("B from A by the Pochhammer rescaling", &b.entries, &b_from_a));

    let slice: BTreeMap<_, _> =
        b.entries.iter().filter(|(i, _)| i[2] == 0).map(|(i, v)| (vec![i[0], i[1]], v.clone())).collect();
    checks.push(Comparison::of("C equals the K = 0 slice of B", &c.entries, &slice));

    let mut factored = BTreeMap::new();
    for (m, n, k) in lattice(o) {
        let v = c.get(&[m, n]).scale_rat(&half_binomial(4 * n - 2 * m + 1, k));
        if !v.is_zero() {
            factored.insert(vec![m, n, k], v);
        }
    }
    checks.push(Comparison::of("B = C(2N-M+1/2, K) C[M,N]", &b.entries, &factored));

    let theta0 = quartic_theta(&a);
    let m_min = -2 * o - 1;
    let minimal = solve_minimal(&quartic_h0(), m_min, &BTreeMap::new())?;
    checks.push(Comparison::of_ops(
        "A summed over coinciding indices vs the minimal solution",
        &minimal.theta,
        &theta0,
        m_min,
    ));

    c.residual_report = Some(
        ResidualReport::conjugacy(&theta0, &quartic_h0(), m_min, "(P^2+Q^2)/2 + Q^4/4")?
            .note("Theta0 from the A table; [H0, Theta0] = -i hbar with this orientation"),
    );
    Ok(QuarticSolution { c, b, a, checks, theta0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain() {
        let sol = solve_quartic(4, &Seeds::new()).unwrap();
        let verdicts: Vec<bool> = sol.checks.iter().map(|c| c.matches).collect();
        assert_eq!(verdicts, vec![true, true, false, true]);
        assert!(sol.checks[2].mismatches.iter().all(|m| m.idx[2] >= 1));
        assert!(sol.c.residual_report.as_ref().unwrap().passed);
        assert_eq!(sol.c.get(&[0, 0]), ScalarExpr::one());
        assert_eq!(sol.c.get(&[0, 1]), ScalarExpr::ratio(-1, 5));
    }

    #[test]
    fn closed_forms() {
        let b = quartic_b_table(8);
        for n in 0..=6 {
            assert_eq!(
                b.get(&[n, n, 0]),
                ScalarExpr::ratio(1, 2 * n + 1).mul_monomial(&Monomial::var(Symbol::Hbar, 2 * n as i32))
            );
        }
        for n in 1..=8 {
            let r = &b.get(&[0, n, 0]) * &b.get(&[0, n - 1, 0]).inverse().unwrap();
            assert_eq!(r, ScalarExpr::ratio(-1, 4 * n + 1));
        }
    }
}
