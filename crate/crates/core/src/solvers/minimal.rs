use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{rat, ScalarExpr};
use crate::weyl::{commutator, WeylIndex, WeylOp};

/// Output of [`solve_minimal`].
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalSolution {
    /// `sum alpha[a,b] T[a,b]` over the computed columns `a >= a_min`.
    pub theta: WeylOp,
    /// Equations `[Theta, H] = i hbar` at index `(c,d)` that could not be met
    /// (no unknown to solve for, or a seed forced the value), with the
    /// left-over right-hand side.
    pub unmet: Vec<(WeylIndex, ScalarExpr)>,
}

/// Minimal solution of `[Theta, H] = i hbar` in the basis.
///
/// `H` must be `h T[2,0]` plus terms `T[r,s]` with `r <= 1`. Then the equation
/// at `T[c,d]` reads `2 i hbar h (d+1) alpha[c-1,d+1] + (known) = i hbar delta`.
/// Here "known" only involves columns `a >= c`, so the columns are filled from
/// `a = -1` down to `a_min`, with every `alpha[a,b]`, `a >= 0`, set to zero.
/// `seeds` force chosen coefficients instead of solving for them.
pub fn solve_minimal(h: &WeylOp, a_min: i64, seeds: &BTreeMap<WeylIndex, ScalarExpr>) -> Result<MinimalSolution> {
    let kin_idx = WeylIndex::new(2, 0);
    let kin = h.coeff(&kin_idx);
    if kin.is_zero() {
        return Err(Error::Domain("H has no p^2 term".into()));
    }
    if let Some(bad) = h.keys().find(|k| **k != kin_idx && k.m > 1) {
        return Err(Error::Domain(format!("H term {bad} is not supported by the column solver")));
    }
    if let Some(bad) = seeds.keys().find(|k| k.m >= 0) {
        return Err(Error::Domain(format!("seed {bad} lies in a column the minimal solution fixes to zero")));
    }
    let rest = h.filter(|k| *k != kin_idx);
    let ih = ScalarExpr::i_hbar();
    let lead = (&ih * &kin).scale_rat(&rat(2, 1));
    let inv_lead = lead.inverse()?;

    let mut theta = WeylOp::zero();
    let mut pending = WeylOp::zero();
    let mut unmet = Vec::new();
    for c in (a_min + 1..=0).rev() {
        let mut rows: BTreeMap<i64, ScalarExpr> =
            pending.iter().filter(|(k, _)| k.m == c).map(|(k, v)| (k.n, -v)).collect();
        if c == 0 {
            *rows.entry(0).or_default() += &ih;
        }
        let mut column = WeylOp::zero();
        for (idx, seed) in seeds.iter().filter(|(k, _)| k.m == c - 1) {
            column.add_term(*idx, seed);
            let d = idx.n - 1;
            let forced = seed.scale_rat(&rat(d + 1, 1)) * lead.clone();
            let rhs = rows.remove(&d).unwrap_or_default();
            let left = &rhs - &forced;
            if !left.is_zero() {
                unmet.push((WeylIndex::new(c, d), left));
            }
        }
        for (d, rhs) in rows {
            if rhs.is_zero() {
                continue;
            }
            if d < 0 {
                unmet.push((WeylIndex::new(c, d), rhs));
                continue;
            }
            column.add_term(WeylIndex::new(c - 1, d + 1), &(&rhs * &inv_lead).scale_rat(&rat(1, d + 1)));
        }
        pending += &commutator(&column, &rest)?;
        theta += &column;
    }
    Ok(MinimalSolution { theta, unmet })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic() {
        // H = (p^2 + q^2)/2 gives Theta = sum (-1)^k/(2k+1) T[-2k-1,2k+1]
        let h = &WeylOp::t(2, 0).scale(&ScalarExpr::ratio(1, 2)) + &WeylOp::t(0, 2).scale(&ScalarExpr::ratio(1, 2));
        let sol = solve_minimal(&h, -9, &BTreeMap::new()).unwrap();
        assert!(sol.unmet.is_empty());
        let mut want = WeylOp::zero();
        for k in 0..5i64 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            want.add_term(WeylIndex::new(-2 * k - 1, 2 * k + 1), &ScalarExpr::rational(rat(sign, 2 * k + 1)));
        }
        assert_eq!(sol.theta, want);
    }
}
