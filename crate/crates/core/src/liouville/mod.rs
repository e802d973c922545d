//! Inverse Liouville expansion for `H = p^2 + q^2 + q^4`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rat, ScalarExpr};
use crate::solvers::{solve_minimal, Comparison};
use crate::weyl::{commutator, WeylIndex, WeylOp};

/// `p^2 + q^2 + q^4`.
pub fn liouville_hamiltonian() -> WeylOp {
    &(&WeylOp::t(2, 0) + &WeylOp::t(0, 2)) + &WeylOp::t(0, 4)
}

/// Partial sums of `F = sum (-1)^k F_k`, `F_k = (L_K^-1 L_V) F_(k-1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiouvilleState {
    /// `sum_(j <= k) (-1)^j F_j`.
    pub current: WeylOp,
    pub k: usize,
    /// `F_0, ..., F_k`.
    pub history: Vec<WeylOp>,
}

/// `L_K^-1` with `L_K = [p^2, .]`: `T[c,d] -> T[c-1,d+1] / (-2 i hbar (d+1))`.
fn inverse_kinetic(x: &WeylOp) -> Result<WeylOp> {
    let inv = ScalarExpr::i_hbar().scale_rat(&rat(-2, 1)).inverse()?;
    let mut out = WeylOp::zero();
    for (k, c) in x.iter() {
        if k.n + 1 == 0 {
            return Err(Error::Domain(format!("{k} is not in the range of [p^2, .]")));
        }
        out.add_term(WeylIndex::new(k.m - 1, k.n + 1), &(c * &inv).scale_rat(&rat(1, k.n + 1)));
    }
    Ok(out)
}

/// `(L_K^-1 L_V) x` with `L_V = [q^2 + q^4, .]`. On the basis:
///
/// `T[-m,n] -> 2m/(n+4) T[-m-2,n+4] - hbar^2/2 m(m+1)(m+2)/(n+2) T[-m-4,n+2] + m/(n+2) T[-m-2,n+2]`
pub fn apply_lkinv_lv(x: &WeylOp) -> Result<WeylOp> {
    let v = &WeylOp::t(0, 2) + &WeylOp::t(0, 4);
    inverse_kinetic(&commutator(&v, x)?)
}

/// `F_0 = L_K^-1 (i hbar) = -T[-1,1]/2`.
pub fn liouville_seed() -> Result<WeylOp> {
    inverse_kinetic(&WeylOp::single(WeylIndex::new(0, 0), ScalarExpr::i_hbar()))
}

pub fn liouville_expand(k_max: usize) -> Result<LiouvilleState> {
    let f0 = liouville_seed()?;
    let mut state = LiouvilleState { current: f0.clone(), k: 0, history: vec![f0] };
    for k in 1..=k_max {
        let next = apply_lkinv_lv(state.history.last().expect("seeded"))?;
        let sign = ScalarExpr::int(if k % 2 == 0 { 1 } else { -1 });
        state.current.add_scaled(&next, &sign);
        state.history.push(next);
        state.k = k;
    }
    Ok(state)
}

/// Lowest column complete after `k_max` applications.
pub fn liouville_m_min(k_max: usize) -> i64 {
    -2 * k_max as i64 - 1
}

/// Result of [`compare_with_minimal`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiouvilleComparison {
    /// `F = constant * Theta` on the common window.
    pub constant: ScalarExpr,
    pub window_m_min: i64,
    pub comparison: Comparison,
    /// Indices present in one input but outside the common window.
    pub non_comparable: Vec<WeylIndex>,
    pub passed: bool,
}

/// Compare the Liouville sum (complete on `m >= f_m_min`) with a minimal
/// solution (complete on `m >= theta_m_min`) after fixing the constant from `T[-1,1]`.
pub fn compare_with_minimal(f: &WeylOp, f_m_min: i64, theta: &WeylOp, theta_m_min: i64) -> Result<LiouvilleComparison> {
    let idx = WeylIndex::new(-1, 1);
    let constant = &f.coeff(&idx) * &theta.coeff(&idx).inverse()?;
    let m_min = f_m_min.max(theta_m_min);
    let comparison = Comparison::of_ops("Liouville sum vs scaled minimal solution", &theta.scale(&constant), f, m_min);
    let non_comparable: Vec<WeylIndex> = {
        let mut v: Vec<WeylIndex> = f.keys().chain(theta.keys()).filter(|k| k.m < m_min).copied().collect();
        v.sort();
        v.dedup();
        v
    };
    let passed = comparison.matches;
    Ok(LiouvilleComparison { constant, window_m_min: m_min, comparison, non_comparable, passed })
}

/// Liouville sum through `k_max` against the minimal solution of
/// `[Theta, p^2 + q^2 + q^4] = i hbar` on the same columns.
pub fn liouville_vs_minimal(k_max: usize) -> Result<(LiouvilleState, LiouvilleComparison)> {
    let state = liouville_expand(k_max)?;
    let m_min = liouville_m_min(k_max);
    let min = solve_minimal(&liouville_hamiltonian(), m_min, &Default::default())?;
    let cmp = compare_with_minimal(&state.current, m_min, &min.theta, m_min)?;
    Ok((state, cmp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Monomial, Symbol};

    fn t(m: i64, n: i64, c: ScalarExpr) -> WeylOp {
        WeylOp::single(WeylIndex::new(m, n), c)
    }

    #[test]
    fn seed_and_first_step() {
        assert_eq!(liouville_seed().unwrap(), t(-1, 1, ScalarExpr::ratio(-1, 2)));
        let h2 = ScalarExpr::one().mul_monomial(&Monomial::var(Symbol::Hbar, 2));
        let want = &(&t(-3, 5, ScalarExpr::ratio(2, 5)) - &t(-5, 3, h2)) + &t(-3, 3, ScalarExpr::ratio(1, 3));
        assert_eq!(apply_lkinv_lv(&WeylOp::t(-1, 1)).unwrap(), want);
        assert!(apply_lkinv_lv(&WeylOp::zero()).unwrap().is_zero());
    }

    #[test]
    fn closed_action() {
        for m in 1..=5i64 {
            for n in 1..=5i64 {
                let h2 = ScalarExpr::one().mul_monomial(&Monomial::var(Symbol::Hbar, 2));
                let mut want = t(-m - 2, n + 4, ScalarExpr::ratio(2 * m, n + 4));
                want += &t(-m - 4, n + 2, h2.scale_rat(&rat(-m * (m + 1) * (m + 2), 2 * (n + 2))));
                want += &t(-m - 2, n + 2, ScalarExpr::ratio(m, n + 2));
                assert_eq!(apply_lkinv_lv(&WeylOp::t(-m, n)).unwrap(), want);
            }
        }
    }

    #[test]
    fn support_lattice() {
        let st = liouville_expand(4).unwrap();
        for (k, fk) in st.history.iter().enumerate() {
            let k = k as i64;
            for idx in fk.keys() {
                let m = (idx.m + 4 * k + 1) / 2;
                let j = (2 * k + 2 * m + 1 - idx.n) / 2;
                assert!((0..=k).contains(&m) && (0..=m).contains(&j), "k={k} {idx}");
                assert_eq!(idx.m, -4 * k + 2 * m - 1);
                assert_eq!(idx.n, 2 * k + 2 * m - 2 * j + 1);
            }
        }
    }

    #[test]
    fn residual_on_boundary_band() {
        let h = liouville_hamiltonian();
        for k in 0..=3 {
            let st = liouville_expand(k).unwrap();
            let mut r = commutator(&h, &st.current).unwrap();
            r.add_term(WeylIndex::new(0, 0), &-ScalarExpr::i_hbar());
            let last = st.history.last().unwrap();
            let v = &WeylOp::t(0, 2) + &WeylOp::t(0, 4);
            let sign = ScalarExpr::int(if k % 2 == 0 { 1 } else { -1 });
            assert_eq!(r, commutator(&v, last).unwrap().scale(&sign));
        }
    }

    #[test]
    fn matches_minimal() {
        let (_, cmp) = liouville_vs_minimal(3).unwrap();
        assert_eq!(cmp.constant, ScalarExpr::int(-1));
        assert!(cmp.passed, "{:?}", cmp.comparison.mismatches);
    }
}
