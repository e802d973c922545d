use num_bigint::BigInt;
use num_rational::BigRational;

use super::{LinearCanonicalTransform, TransformConfig};
use crate::error::{Error, Result};
use crate::scalar::{binomial, ScalarExpr};
use crate::weyl::{NormalPoly, WeylOp};

/// `(D p + A q)^k`, normal-ordered.
pub fn expand_q_power(k: u32, t: &LinearCanonicalTransform) -> Result<NormalPoly> {
    let mut q = NormalPoly::single(crate::weyl::Word::new(1, 0), t.d.clone());
    q.add_term(crate::weyl::Word::new(0, 1), &t.a);
    let mut out = NormalPoly::word(0, 0);
    for _ in 0..k {
        out = out.mul(&q)?;
    }
    Ok(out)
}

fn expand_p_power(k: u32, t: &LinearCanonicalTransform) -> Result<NormalPoly> {
    let swapped = LinearCanonicalTransform { a: t.c.clone(), d: t.b.clone(), b: t.a.clone(), c: t.d.clone() };
    expand_q_power(k, &swapped)
}

/// `P^-1` as a series in `C`: entry `c` is `(-C/B)^c X^c p^-1 / B` with
/// `X = p^-1 q`. Entries run up to `max_order`.
pub fn expand_p_inverse(t: &LinearCanonicalTransform, max_order: usize) -> Result<Vec<NormalPoly>> {
    let b_inv = t.b.inverse()?;
    let ratio = -(&t.c * &b_inv);
    let x = NormalPoly::word(-1, 1);
    let p_inv = NormalPoly::single(crate::weyl::Word::new(-1, 0), b_inv);
    let mut out = vec![p_inv];
    if t.c.is_zero() {
        return Ok(out);
    }
    let mut x_pow = NormalPoly::word(0, 0);
    let mut coeff = ScalarExpr::one();
    for _ in 1..=max_order {
        x_pow = x_pow.mul(&x)?;
        coeff = &coeff * &ratio;
        out.push(x_pow.mul(&out[0])?.scale(&coeff));
    }
    Ok(out)
}

/// Product of two `C`-graded series, dropping orders above `cap`.
fn graded_mul(x: &[NormalPoly], y: &[NormalPoly], cap: usize) -> Result<Vec<NormalPoly>> {
    let len = (x.len() + y.len()).saturating_sub(1).min(cap + 1);
    let mut out = vec![NormalPoly::zero(); len];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            if i + j <= cap && !a.is_zero() && !b.is_zero() {
                out[i + j] += &a.mul(b)?;
            }
        }
    }
    Ok(out)
}

/// One band of a transformed basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub r: usize,
    pub op: WeylOp,
}

/// The image of `T[m,n]` under `t`, split into bands.
///
/// For `m < 0` band `r = |m| + c` holds the order-`c` terms in `C`, and bands
/// beyond `cfg.r_max` are not computed. For `m >= 0` the expansion is a
/// polynomial and comes back whole as band 0.
pub fn transform_t_bands(m: i64, n: i64, t: &LinearCanonicalTransform, cfg: &TransformConfig) -> Result<Vec<Band>> {
    if n < 0 {
        return Err(Error::Domain(format!("transform of T[{m},{n}] needs n >= 0")));
    }
    let graded: Vec<NormalPoly> = if m >= 0 {
        vec![expand_p_power(m as u32, t)?]
    } else {
        let mm = (-m) as usize;
        if cfg.r_max < mm {
            return Err(Error::Domain(format!("r_max = {} is below the leading band {mm}", cfg.r_max)));
        }
        let cap = cfg.r_max - mm;
        let inv = expand_p_inverse(t, cap)?;
        let mut acc = vec![NormalPoly::word(0, 0)];
        for _ in 0..mm {
            acc = graded_mul(&acc, &inv, cap)?;
        }
        acc
    };
    let norm = BigRational::new(1.into(), BigInt::from(2).pow(n as u32));
    let q_pows = (0..=n).map(|k| expand_q_power(k as u32, t)).collect::<Result<Vec<_>>>()?;
    let mut bands = Vec::with_capacity(graded.len());
    for (c, level) in graded.iter().enumerate() {
        let mut sym = NormalPoly::zero();
        for k in 0..=n as usize {
            let w = ScalarExpr::rational(binomial(n, k) * &norm);
            sym.add_scaled(&q_pows[k].mul(level)?.mul(&q_pows[n as usize - k])?, &w);
        }
        let r = if m >= 0 { 0 } else { (-m) as usize + c };
        bands.push(Band { r, op: cfg.filter_hbar(&sym.to_weyl()?) });
    }
    Ok(bands)
}

/// Sum of [`transform_t_bands`].
pub fn transform_t(m: i64, n: i64, t: &LinearCanonicalTransform, cfg: &TransformConfig) -> Result<WeylOp> {
    let mut out = WeylOp::zero();
    for b in transform_t_bands(m, n, t, cfg)? {
        out += &b.op;
    }
    Ok(out)
}

/// `(B p + C q)^k` in the Weyl basis.
pub(crate) fn expand_p_power_weyl(k: u32, t: &LinearCanonicalTransform) -> Result<WeylOp> {
    expand_p_power(k, t)?.to_weyl()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Symbol;
    use crate::weyl::Word;

    #[test]
    fn q_powers() {
        let t = LinearCanonicalTransform::identity();
        assert_eq!(expand_q_power(0, &t).unwrap(), NormalPoly::word(0, 0));
        let t1 = LinearCanonicalTransform { d: ScalarExpr::one(), ..t.clone() };
        assert_eq!(expand_q_power(1, &t1).unwrap(), &NormalPoly::word(1, 0) + &NormalPoly::word(0, 1));
        let (a, d) = (ScalarExpr::sym(Symbol::Rho), ScalarExpr::sym(Symbol::Z));
        let t2 = LinearCanonicalTransform { a: a.clone(), d: d.clone(), ..t };
        let mut want = NormalPoly::single(Word::new(2, 0), &d * &d);
        want.add_term(Word::new(1, 1), &(&a * &d).scale_rat(&crate::scalar::rat(2, 1)));
        want.add_term(Word::new(0, 0), &(&(&a * &d) * &ScalarExpr::i_hbar()));
        want.add_term(Word::new(0, 2), &(&a * &a));
        assert_eq!(expand_q_power(2, &t2).unwrap(), want);
    }

    #[test]
    fn identity_and_scaling() {
        let cfg = TransformConfig::new(4);
        assert_eq!(transform_t(-1, 1, &LinearCanonicalTransform::identity(), &cfg).unwrap(), WeylOp::t(-1, 1));
        let s = LinearCanonicalTransform::scaling(ScalarExpr::sym(Symbol::Rho)).unwrap();
        // Q = q/rho, P = rho p: T'[-m,n] = rho^-(m+n) T[-m,n]
        let want = WeylOp::single(crate::weyl::WeylIndex::new(-1, 1), ScalarExpr::pow_sym(Symbol::Rho, -2));
        assert_eq!(transform_t(-1, 1, &s, &cfg).unwrap(), want);
        let want = WeylOp::single(crate::weyl::WeylIndex::new(-3, 1), ScalarExpr::pow_sym(Symbol::Rho, -4));
        assert_eq!(transform_t(-3, 1, &s, &cfg).unwrap(), want);
    }
}
