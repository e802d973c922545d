use serde::Serialize;

use super::{expand::transform_t, LinearCanonicalTransform, TransformConfig};
use crate::error::{Error, Result};
use crate::scalar::{binomial, rat, GaussianRational, ScalarExpr, Symbol};
use crate::weyl::{commutator, factorial, normal_to_weyl, weyl_product, WeylIndex, WeylOp};

/// `B^-1` and `kappa = -C/B` for a transform with `A B = 1`, `D = 0`.
fn diag_params(t: &LinearCanonicalTransform) -> Result<(ScalarExpr, ScalarExpr)> {
    if !t.d.is_zero() || &t.a * &t.b != ScalarExpr::one() {
        return Err(Error::Domain("closed forms need D = 0 and A = 1/B".into()));
    }
    let b_inv = t.b.inverse()?;
    let kappa = -(&t.c * &b_inv);
    Ok((b_inv, kappa))
}

/// Classical image of `T[-n,n]`:
/// `B^-2n sum_{r=n}^{r_max} C(r-1, n-1) kappa^(r-n) T[-r,r]`, `kappa = -C/B`.
///
/// For the Ermakov transform `kappa = mu rhodot / rho`.
pub fn transform_t_diag_classical(n: u32, t: &LinearCanonicalTransform, r_max: usize) -> Result<WeylOp> {
    if n == 0 {
        return Err(Error::Domain("diagonal index needs n >= 1".into()));
    }
    let (b_inv, kappa) = diag_params(t)?;
    let lead = b_inv.pow(2 * n as i32)?;
    let mut out = WeylOp::zero();
    let mut kp = ScalarExpr::one();
    for r in n as usize..=r_max {
        let ri = r as i64;
        out.add_term(WeylIndex::new(-ri, ri), &(&lead * &kp).scale_rat(&binomial(ri - 1, n as usize - 1)));
        kp = &kp * &kappa;
    }
    Ok(out)
}

/// Outcome of [`resummation_check`].
#[derive(Debug, Clone, Serialize)]
pub struct ResummationReport {
    pub n: u32,
    pub r_max: usize,
    pub matches: bool,
    /// `(index, resummed coefficient, closed-form coefficient)` for every
    /// disagreeing term.
    pub mismatches: Vec<(WeylIndex, ScalarExpr, ScalarExpr)>,
}

/// Rebuild the classical diagonal image from `X = p^-1 q`, `Y = q p^-1`:
/// `B^-2n (X^n (1 - kappa X)^-n + Y^n (1 - kappa Y)^-n) / 2` expanded
/// through `X^r_max`, and compare with [`transform_t_diag_classical`].
pub fn resummation_check(n: u32, t: &LinearCanonicalTransform, r_max: usize) -> Result<ResummationReport> {
    let (b_inv, kappa) = diag_params(t)?;
    let x = normal_to_weyl(-1, 1)?;
    let y = weyl_product(&WeylOp::t(0, 1), &WeylOp::t(-1, 0))?;
    let lead = b_inv.pow(2 * n as i32)?.scale_rat(&rat(1, 2));
    let mut lhs = WeylOp::zero();
    let (mut xr, mut yr) = (WeylOp::t(0, 0), WeylOp::t(0, 0));
    let mut kp = ScalarExpr::one();
    for r in 1..=r_max {
        xr = weyl_product(&xr, &x)?;
        yr = weyl_product(&yr, &y)?;
        if r < n as usize {
            continue;
        }
        // (1 - kappa X)^-n = sum_c C(n+c-1, c) kappa^c X^c
        let c = r - n as usize;
        let w = (&lead * &kp).scale_rat(&binomial(r as i64 - 1, c));
        lhs.add_scaled(&(&xr + &yr), &w);
        kp = &kp * &kappa;
    }
    let rhs = transform_t_diag_classical(n, t, r_max)?;
    let mut keys: Vec<WeylIndex> = lhs.keys().chain(rhs.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let mismatches: Vec<_> = keys
        .into_iter()
        .filter_map(|k| {
            let (l, r) = (lhs.coeff(&k), rhs.coeff(&k));
            (l != r).then_some((k, l, r))
        })
        .collect();
    Ok(ResummationReport { n, r_max, matches: mismatches.is_empty(), mismatches })
}

/// Image of `T[-2k-1, 2k+1-j]` from `j` nested commutators with `P`:
/// `(i/hbar)^j (2k+1-j)!/(2k+1)! ad_P^j T'[-2k-1, 2k+1]`, where `T'` is the
/// transformed element. Terms beyond `T[-r_max, .]` are dropped.
pub fn transform_t_momentum_shifted(
    k: u32,
    j: u32,
    t: &LinearCanonicalTransform,
    cfg: &TransformConfig,
) -> Result<WeylOp> {
    if j > 2 * k + 1 {
        return Err(Error::Domain(format!("shift j = {j} exceeds 2k+1 = {}", 2 * k + 1)));
    }
    if !t.d.is_zero() {
        return Err(Error::Domain("momentum-shifted images need D = 0".into()));
    }
    let top = 2 * k as i64 + 1;
    let exact = TransformConfig { hbar_order: None, ..*cfg };
    let mut op = transform_t(-top, top, t, &exact)?;
    let p = t.p_image();
    let keep = -(cfg.r_max as i64);
    for _ in 0..j {
        op = commutator(&p, &op)?.filter(|idx| idx.m >= keep);
    }
    let phase = GaussianRational::i().pow(j as i32).expect("i is invertible");
    let ratio = num_rational::BigRational::new(factorial((top - j as i64) as usize), factorial(top as usize));
    let scale = ScalarExpr::term(crate::scalar::Monomial::var(Symbol::Hbar, -(j as i32)), phase.scale(&ratio));
    Ok(cfg.filter_hbar(&op.scale(&scale)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resummation_matches() {
        let t = LinearCanonicalTransform::ermakov();
        for (n, r_max) in [(1, 4), (2, 5)] {
            let rep = resummation_check(n, &t, r_max).unwrap();
            assert!(rep.matches, "{:?}", rep.mismatches);
        }
    }

    #[test]
    fn identity_limit_of_resummation() {
        let rep = resummation_check(2, &LinearCanonicalTransform::identity(), 4).unwrap();
        assert!(rep.matches);
        assert_eq!(transform_t_diag_classical(2, &LinearCanonicalTransform::identity(), 4).unwrap(), WeylOp::t(-2, 2));
    }

    #[test]
    fn momentum_shift_basics() {
        let id = LinearCanonicalTransform::identity();
        let cfg = TransformConfig::new(6);
        assert_eq!(transform_t_momentum_shifted(1, 0, &id, &cfg).unwrap(), WeylOp::t(-3, 3));
        assert_eq!(transform_t_momentum_shifted(0, 1, &id, &cfg).unwrap(), WeylOp::t(-1, 0));
        assert_eq!(transform_t_momentum_shifted(1, 2, &id, &cfg).unwrap(), WeylOp::t(-3, 1));
    }
}
