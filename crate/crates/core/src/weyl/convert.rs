use num_bigint::BigInt;
use num_rational::BigRational;

use super::index::{WeylIndex, Word};
use super::op::{NormalPoly, WeylOp};
use super::reorder::{factorial, ihbar_pow, reorder_word};
use crate::error::{Error, Result};
use crate::scalar::{binomial, falling, ScalarExpr};

/// Normal-ordered form of `T[m,n]`.
///
/// For `n >= 0` this symmetrizes `2^-n sum_k C(n,k) q^k p^m q^(n-k)`; for
/// `n < 0` (then `m >= 0`) it uses `2^-m sum_k C(m,k) p^k q^n p^(m-k)`.
pub fn weyl_to_normal(idx: WeylIndex) -> Result<NormalPoly> {
    let WeylIndex { m, n } = idx;
    if idx.both_negative() {
        return Err(Error::BothNegative { m, n });
    }
    let mut out = NormalPoly::zero();
    if n >= 0 {
        let norm = BigRational::new(1.into(), BigInt::from(2).pow(n as u32));
        for k in 0..=n {
            let c = ScalarExpr::rational(binomial(n, k as usize) * &norm);
            for (w, cw) in reorder_word(k, m)?.iter() {
                out.add_term(Word::new(w.a, w.b + n - k), &(cw * &c));
            }
        }
    } else {
        let norm = BigRational::new(1.into(), BigInt::from(2).pow(m as u32));
        for k in 0..=m {
            let c = ScalarExpr::rational(binomial(m, k as usize) * &norm);
            for (w, cw) in reorder_word(n, m - k)?.iter() {
                out.add_term(Word::new(w.a + k, w.b), &(cw * &c));
            }
        }
    }
    Ok(out)
}

/// Weyl expansion of the word `p^a q^b`:
/// `p^a q^b = sum_c (-i hbar/2)^c / c! a^(c) b^(c) T[a-c, b-c]`.
pub fn word_to_weyl(w: Word) -> Result<WeylOp> {
    let Word { a, b } = w;
    if a < 0 && b < 0 {
        return Err(Error::BothNegative { m: a, n: b });
    }
    let top = if a >= 0 && b >= 0 { a.min(b) } else { a.max(b) };
    let mut out = WeylOp::zero();
    for c in 0..=top as usize {
        let sign = if c % 2 == 0 { 1 } else { -1 };
        let den = factorial(c) * BigInt::from(2).pow(c as u32);
        let coeff = BigRational::new(falling(a, c) * falling(b, c) * sign, den);
        out.add_term(WeylIndex::new(a - c as i64, b - c as i64), &ihbar_pow(c, coeff));
    }
    Ok(out)
}

/// Alias of [`word_to_weyl`] taking the exponents directly.
pub fn normal_to_weyl(a: i64, b: i64) -> Result<WeylOp> {
    word_to_weyl(Word::new(a, b))
}

impl WeylOp {
    pub fn to_normal(&self) -> Result<NormalPoly> {
        let mut out = NormalPoly::zero();
        for (idx, c) in self.iter() {
            out.add_scaled(&weyl_to_normal(*idx)?, c);
        }
        Ok(out)
    }
}

impl NormalPoly {
    pub fn to_weyl(&self) -> Result<WeylOp> {
        let mut out = WeylOp::zero();
        for (w, c) in self.iter() {
            out.add_scaled(&word_to_weyl(*w)?, c);
        }
        Ok(out)
    }
}
