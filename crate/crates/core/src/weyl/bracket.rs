use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::index::WeylIndex;
use super::op::WeylOp;
use super::reorder::{factorial, ihbar_pow};
use crate::error::{Error, Result};
use crate::scalar::{binomial, falling, GaussianRational};

/// `Gamma(num) / Gamma(den)` for integer arguments, read as the limit
/// `Gamma(num + e) / Gamma(den + e)` at `e -> 0`.
pub fn gamma_ratio(num: i64, den: i64) -> Result<GaussianRational> {
    if num <= 0 && den > 0 {
        return Err(Error::GammaPole { num, den });
    }
    if num > 0 && den <= 0 {
        return Ok(GaussianRational::zero());
    }
    let prod = |lo: i64, hi: i64| (lo..hi).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let r = if num >= den {
        BigRational::from_integer(prod(den, num))
    } else {
        BigRational::new(BigInt::one(), prod(num, den))
    };
    Ok(GaussianRational::real(r))
}

/// Terminating `3F2[a1,a2,a3; b1,b2; 1]`.
///
/// Fails with [`Error::LowerParameterZero`] when a lower Pochhammer symbol
/// vanishes before the series stops.
pub fn hyp3f2_terminating(a1: i64, a2: i64, a3: i64, b1: i64, b2: i64) -> Result<GaussianRational> {
    hyp3f2(a1, a2, a3, b1, b2).map(GaussianRational::real)
}

fn hyp3f2(a1: i64, a2: i64, a3: i64, b1: i64, b2: i64) -> Result<BigRational> {
    let stop = [a1, a2, a3]
        .into_iter()
        .filter(|&a| a <= 0)
        .map(|a| -a)
        .min()
        .ok_or_else(|| Error::NonTerminating(format!("3F2[{a1},{a2},{a3}; {b1},{b2}; 1]")))?;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..stop {
        let den = BigInt::from(b1 + k) * BigInt::from(b2 + k) * BigInt::from(k + 1);
        if den.is_zero() {
            return Err(Error::LowerParameterZero);
        }
        let num = BigInt::from(a1 + k) * BigInt::from(a2 + k) * BigInt::from(a3 + k);
        term *= BigRational::new(num, den);
        sum += &term;
    }
    Ok(sum)
}

/// Tuning for [`pair_bracket`].
#[derive(Debug, Clone, Copy)]
pub struct BracketOptions {
    /// Largest `j` tried before giving up on a non-terminating bracket.
    pub j_cap: usize,
    /// Evaluate each `j` slice through the `3F2` form when it is regular.
    pub use_hypergeometric: bool,
}

impl Default for BracketOptions {
    fn default() -> Self {
        Self { j_cap: 64, use_hypergeometric: true }
    }
}

/// `sum_l (-1)^l C(2j+1,l) m^(l) n^(2j+1-l) r^(2j+1-l) s^(l)`.
fn slice_lsum(x: WeylIndex, y: WeylIndex, j: usize) -> BigRational {
    let d = 2 * j + 1;
    let mut acc = BigRational::zero();
    for l in 0..=d {
        let t = falling(x.m, l) * falling(x.n, d - l) * falling(y.m, d - l) * falling(y.n, l);
        if t.is_zero() {
            continue;
        }
        let t = binomial(d as i64, l) * BigRational::from_integer(t);
        if l % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Same slice through `n^(2j+1) r^(2j+1) 3F2[-1-2j, -m, -s; n-2j, r-2j; 1]`.
fn slice_hyp(x: WeylIndex, y: WeylIndex, j: usize) -> Result<BigRational> {
    let d = 2 * j + 1;
    let pre = falling(x.n, d) * falling(y.m, d);
    let jj = j as i64;
    let f = hyp3f2(-1 - 2 * jj, -x.m, -y.n, x.n - 2 * jj, y.m - 2 * jj)?;
    Ok(BigRational::from_integer(pre) * f)
}

/// Smallest `j` from which every slice of `[T[x], T[y]]` vanishes, if the
/// falling factorials guarantee one.
fn termination_bound(x: WeylIndex, y: WeylIndex) -> Option<usize> {
    let kill = |a: i64, b: i64| [a, b].into_iter().filter(|&v| v >= 0).min();
    let kl = kill(x.m, y.n)?;
    let kr = kill(x.n, y.m)?;
    // zero once 2j + 1 > kl + kr
    Some(((kl + kr) / 2 + if (kl + kr) % 2 == 0 { 0 } else { 1 }) as usize)
}

/// `[T[x], T[y]]` expanded in the basis.
pub fn pair_bracket(x: WeylIndex, y: WeylIndex, opts: BracketOptions) -> Result<WeylOp> {
    for idx in [x, y] {
        if idx.both_negative() {
            return Err(Error::BothNegative { m: idx.m, n: idx.n });
        }
    }
    let bound = termination_bound(x, y);
    let mut out = WeylOp::zero();
    let mut j = 0usize;
    loop {
        match bound {
            Some(b) if j >= b => break,
            None if j > opts.j_cap => {
                return Err(Error::BracketCap { m: x.m, n: x.n, r: y.m, s: y.n, cap: opts.j_cap });
            }
            _ => {}
        }
        let slice = if opts.use_hypergeometric {
            slice_hyp(x, y, j).or_else(|_| Ok::<_, Error>(slice_lsum(x, y, j)))?
        } else {
            slice_lsum(x, y, j)
        };
        if !slice.is_zero() {
            let d = 2 * j + 1;
            let target = WeylIndex::new(x.m + y.m - d as i64, x.n + y.n - d as i64);
            if target.both_negative() {
                return Err(Error::BothNegative { m: target.m, n: target.n });
            }
            // 2 (i hbar/2)^d / d!
            let scale = BigRational::new(BigInt::from(2), factorial(d) * BigInt::from(2).pow(d as u32));
            out.add_term(target, &ihbar_pow(d, scale * slice));
        }
        j += 1;
    }
    Ok(out)
}

/// Bilinear extension of [`pair_bracket`].
pub fn commutator(x: &WeylOp, y: &WeylOp) -> Result<WeylOp> {
    commutator_with(x, y, BracketOptions::default())
}

pub fn commutator_with(x: &WeylOp, y: &WeylOp, opts: BracketOptions) -> Result<WeylOp> {
    let pairs: Vec<_> = x.iter().flat_map(|a| y.iter().map(move |b| (a, b))).collect();
    let parts = pairs
        .par_iter()
        .map(|((ix, cx), (iy, cy))| Ok(pair_bracket(**ix, **iy, opts)?.scale(&(*cx * *cy))))
        .collect::<Result<Vec<WeylOp>>>()?;
    let mut out = WeylOp::zero();
    for p in &parts {
        out += p;
    }
    Ok(out)
}

/// Poisson bracket of the classical symbols, `{q,p} = 1`.
pub fn poisson_bracket(x: &WeylOp, y: &WeylOp) -> WeylOp {
    let mut out = WeylOp::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let f = a.n * b.m - a.m * b.n;
            if f != 0 {
                out.add_term(
                    WeylIndex::new(a.m + b.m - 1, a.n + b.n - 1),
                    &(ca * cb).scale_rat(&crate::scalar::rat(f, 1)),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ScalarExpr};

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio(5, 3).unwrap(), GaussianRational::from_int(12));
        assert_eq!(gamma_ratio(1, -1).unwrap(), GaussianRational::zero());
        assert_eq!(gamma_ratio(-1, -3).unwrap(), GaussianRational::from_int(6));
        assert_eq!(gamma_ratio(-3, -1).unwrap(), GaussianRational::real(rat(1, 6)));
        assert!(matches!(gamma_ratio(-2, 3), Err(Error::GammaPole { .. })));
    }

    #[test]
    fn hyp_examples() {
        assert_eq!(hyp3f2_terminating(0, -4, -2, 3, 5).unwrap(), GaussianRational::one());
        assert_eq!(hyp3f2_terminating(-1, -1, -1, 1, 1).unwrap(), GaussianRational::zero());
        assert_eq!(hyp3f2_terminating(-2, -1, -3, 2, 4).unwrap(), GaussianRational::real(rat(1, 4)));
        assert!(matches!(hyp3f2_terminating(-3, -3, -3, -1, 2), Err(Error::LowerParameterZero)));
        assert!(matches!(hyp3f2_terminating(1, 2, 3, 1, 1), Err(Error::NonTerminating(_))));
    }

    #[test]
    fn bracket_examples() {
        let ih = ScalarExpr::i_hbar();
        assert_eq!(
            commutator(&WeylOp::t(0, 1), &WeylOp::t(1, 0)).unwrap(),
            WeylOp::single(WeylIndex::new(0, 0), ih.clone())
        );
        let two_ih = ih.scale_rat(&rat(2, 1));
        assert_eq!(
            commutator(&WeylOp::t(-1, 1), &WeylOp::t(2, 0)).unwrap(),
            WeylOp::single(WeylIndex::new(0, 0), two_ih)
        );
        let eight_ih = ih.scale_rat(&rat(8, 1));
        assert_eq!(
            commutator(&WeylOp::t(0, 4), &WeylOp::t(2, 0)).unwrap(),
            WeylOp::single(WeylIndex::new(1, 3), eight_ih)
        );
    }

    #[test]
    fn slices_agree() {
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                for r in -4i64..=4 {
                    for s in -4i64..=4 {
                        let (x, y) = (WeylIndex::new(m, n), WeylIndex::new(r, s));
                        for j in 0..4 {
                            if let Ok(h) = slice_hyp(x, y, j) {
                                assert_eq!(h, slice_lsum(x, y, j), "{x} {y} j={j}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cap_reported() {
        let e = pair_bracket(
            WeylIndex::new(-1, 2),
            WeylIndex::new(2, -1),
            BracketOptions { j_cap: 5, ..Default::default() },
        );
        assert!(matches!(e, Err(Error::BracketCap { .. }) | Err(Error::BothNegative { .. })));
    }
}
