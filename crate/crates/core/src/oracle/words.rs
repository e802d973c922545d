//! Brute-force normal ordering by repeated application of `QP -> PQ + i hbar`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{binomial, ScalarExpr};
use crate::weyl::{NormalPoly, WeylOp, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    P,
    Q,
}

/// A coefficient times a product of `P` and `Q` letters, read left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct NcWord {
    pub letters: Vec<Letter>,
    pub coeff: ScalarExpr,
}

impl NcWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters, coeff: ScalarExpr::one() }
    }

    /// Parse a string over `P` and `Q`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'P' | 'p' => Ok(Letter::P),
                'Q' | 'q' => Ok(Letter::Q),
                _ => Err(Error::Parse(format!("letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(letters))
    }

    fn concat(&self, o: &NcWord) -> NcWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        NcWord { letters, coeff: &self.coeff * &o.coeff }
    }
}

/// Normal form of `w`.
///
/// Letters are appended one at a time to an already normal-ordered prefix.
/// An appended `P` is walked left through the trailing `Q`s with one
/// `QP -> PQ + i hbar` swap per step.
pub fn nc_word_reorder(w: &NcWord) -> NormalPoly {
    // state: (a, b) -> coeff for p^a q^b
    let mut state: BTreeMap<(i64, i64), ScalarExpr> = BTreeMap::new();
    state.insert((0, 0), w.coeff.clone());
    for &letter in &w.letters {
        let mut next: BTreeMap<(i64, i64), ScalarExpr> = BTreeMap::new();
        let mut push = |k: (i64, i64), c: ScalarExpr| {
            let e = next.entry(k).or_default();
            *e += &c;
        };
        for ((a, b), c) in state {
            match letter {
                Letter::Q => push((a, b + 1), c),
                Letter::P => {
                    // p^a q^b P: swap P past each Q, every swap emits an i hbar term
                    // with that Q deleted, e.g. qqP = qPq + ih q = Pqq + ih q + ih q
                    let mut left_q = b;
                    let mut right_q = 0;
                    while left_q > 0 {
                        left_q -= 1;
                        push((a, left_q + right_q), &c * &ScalarExpr::i_hbar());
                        right_q += 1;
                    }
                    push((a + 1, right_q), c);
                }
            }
        }
        state = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    state.into_iter().map(|((a, b), c)| (Word::new(a, b), c)).collect()
}

/// `T[m,n]` for `m, n >= 0` as the symmetrized word sum `2^-n sum_k C(n,k) Q^k P^m Q^(n-k)`.
pub fn symmetrized_words(m: i64, n: i64) -> Vec<NcWord> {
    let norm = ScalarExpr::ratio(1, 1 << n);
    (0..=n)
        .map(|k| {
            let mut letters = vec![Letter::Q; k as usize];
            letters.extend(std::iter::repeat_n(Letter::P, m as usize));
            letters.extend(std::iter::repeat_n(Letter::Q, (n - k) as usize));
            NcWord { letters, coeff: &norm * &ScalarExpr::rational(binomial(n, k as usize)) }
        })
        .collect()
}

/// Default index cap for [`nc_commutator_oracle`].
pub const ORACLE_CAP: i64 = 5;

/// `[T[m,n], T[r,s]]` by multiplying symmetrized words in both orders.
pub fn nc_commutator_oracle(m: i64, n: i64, r: i64, s: i64) -> Result<WeylOp> {
    nc_commutator_oracle_capped(m, n, r, s, ORACLE_CAP)
}

pub fn nc_commutator_oracle_capped(m: i64, n: i64, r: i64, s: i64, cap: i64) -> Result<WeylOp> {
    if [m, n, r, s].iter().any(|&v| v < 0 || v > cap) {
        return Err(Error::Domain(format!("oracle indices ({m},{n},{r},{s}) outside [0,{cap}]")));
    }
    let x = symmetrized_words(m, n);
    let y = symmetrized_words(r, s);
    let mut acc = NormalPoly::zero();
    for u in &x {
        for v in &y {
            acc += &nc_word_reorder(&u.concat(v));
            acc -= &nc_word_reorder(&v.concat(u));
        }
    }
    acc.to_weyl()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::weyl::{reorder_word, WeylIndex};

    #[test]
    fn examples() {
        let mut want = NormalPoly::word(1, 1);
        want.add_term(Word::new(0, 0), &ScalarExpr::i_hbar());
        assert_eq!(nc_word_reorder(&NcWord::parse("QP").unwrap()), want);
        let mut want = NormalPoly::word(1, 2);
        want.add_term(Word::new(0, 1), &ScalarExpr::i_hbar().scale_rat(&rat(2, 1)));
        assert_eq!(nc_word_reorder(&NcWord::parse("QQP").unwrap()), want);
    }

    #[test]
    fn agrees_with_reorder_word() {
        // QPQP = (QP)(QP)
        let qp = reorder_word(1, 1).unwrap();
        assert_eq!(nc_word_reorder(&NcWord::parse("QPQP").unwrap()), qp.mul(&qp).unwrap());
        for k in 0..5 {
            for l in 0..5 {
                let mut letters = vec![Letter::Q; k];
                letters.extend(vec![Letter::P; l]);
                assert_eq!(nc_word_reorder(&NcWord::new(letters)), reorder_word(k as i64, l as i64).unwrap());
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let ih = ScalarExpr::i_hbar();
        assert_eq!(nc_commutator_oracle(0, 1, 1, 0).unwrap(), WeylOp::single(WeylIndex::new(0, 0), ih.clone()));
        assert_eq!(
            nc_commutator_oracle(1, 1, 2, 0).unwrap(),
            WeylOp::single(WeylIndex::new(2, 0), ih.scale_rat(&rat(2, 1)))
        );
        assert_eq!(
            nc_commutator_oracle(0, 4, 2, 0).unwrap(),
            WeylOp::single(WeylIndex::new(1, 3), ih.scale_rat(&rat(8, 1)))
        );
        assert!(nc_commutator_oracle(6, 0, 0, 0).is_err());
    }
}
