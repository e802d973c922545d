use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::index::Word;
use super::op::NormalPoly;
use crate::error::{Error, Result};
use crate::scalar::{falling, GaussianRational, Monomial, ScalarExpr, Symbol};

/// `factor * (i hbar)^alpha`.
pub(crate) fn ihbar_pow(alpha: usize, factor: BigRational) -> ScalarExpr {
    let phase = GaussianRational::i().pow(alpha as i32).expect("i is invertible");
    ScalarExpr::term(Monomial::var(Symbol::Hbar, alpha as i32), phase.scale(&factor))
}

pub(crate) fn factorial(k: usize) -> BigInt {
    (1..=k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Normal-ordered expansion of the word `q^k p^l`.
///
/// `q^k p^l = sum_a k^(a) l^(a) / a! (i hbar)^a p^(l-a) q^(k-a)` with falling
/// factorials. The series is finite whenever `k >= 0` or `l >= 0`.
pub fn reorder_word(k: i64, l: i64) -> Result<NormalPoly> {
    if k < 0 && l < 0 {
        return Err(Error::InfiniteReorder { k, l });
    }
    let top = if k >= 0 && l >= 0 { k.min(l) } else { k.max(l) };
    let mut out = NormalPoly::zero();
    for alpha in 0..=top as usize {
        let c = BigRational::new(falling(k, alpha) * falling(l, alpha), factorial(alpha));
        out.add_term(Word::new(l - alpha as i64, k - alpha as i64), &ihbar_pow(alpha, c));
    }
    Ok(out)
}

impl NormalPoly {
    /// Operator product, re-normal-ordered.
    pub fn mul(&self, rhs: &NormalPoly) -> Result<NormalPoly> {
        let mut out = NormalPoly::zero();
        for (x, cx) in self.iter() {
            for (y, cy) in rhs.iter() {
                let c = cx * cy;
                if x.b == 0 || y.a == 0 {
                    out.add_term(Word::new(x.a + y.a, x.b + y.b), &c);
                    continue;
                }
                for (w, cw) in reorder_word(x.b, y.a)?.iter() {
                    out.add_term(Word::new(x.a + w.a, w.b + y.b), &(&c * cw));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, rhs: &NormalPoly) -> Result<NormalPoly> {
        Ok(&self.mul(rhs)? - &rhs.mul(self)?)
    }
}
