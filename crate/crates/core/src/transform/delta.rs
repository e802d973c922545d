use super::expand::expand_p_power_weyl;
use super::LinearCanonicalTransform;
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;
use crate::weyl::{NormalPoly, WeylIndex, WeylOp, Word};

/// Coefficients of `P^m = B^m p^m + C^m sum_j D[m,j] T[j, m-j]`, so that
/// `P^m = (1 + Delta) B^m p^m` with `Delta = (C/B)^m sum_j D[m,j] T[j,m-j] p^-m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCoeffs {
    pub m: u32,
    pub coeffs: Vec<ScalarExpr>,
}

/// Read `D[m,j]`, `0 <= j < m`, off the Weyl expansion of `(B p + C q)^m`.
///
/// Fails when `C` is not invertible, or when the expansion has a term outside
/// the `T[j, m-j]` family or a `T[m,0]` coefficient other than `B^m`.
pub fn derive_delta_coeffs(m: u32, t: &LinearCanonicalTransform) -> Result<DeltaCoeffs> {
    if m == 0 {
        return Err(Error::Domain("Delta coefficients need m >= 1".into()));
    }
    let c_inv_m = t.c.pow(-(m as i32))?;
    let pm = expand_p_power_weyl(m, t)?;
    let mi = m as i64;
    let mut coeffs = Vec::with_capacity(m as usize);
    for j in 0..mi {
        coeffs.push(&pm.coeff(&WeylIndex::new(j, mi - j)) * &c_inv_m);
    }
    let mut rebuilt = WeylOp::single(WeylIndex::new(mi, 0), t.b.pow(m as i32)?);
    let c_m = t.c.pow(m as i32)?;
    for (j, d) in coeffs.iter().enumerate() {
        rebuilt.add_term(WeylIndex::new(j as i64, mi - j as i64), &(d * &c_m));
    }
    if rebuilt != pm {
        return Err(Error::Domain(format!("P^{m} does not match the Delta factorization: {}", &pm - &rebuilt)));
    }
    Ok(DeltaCoeffs { m, coeffs })
}

impl DeltaCoeffs {
    /// `Delta` as a normal-ordered polynomial.
    pub fn delta(&self, t: &LinearCanonicalTransform) -> Result<NormalPoly> {
        let mi = self.m as i64;
        let pref = (&t.c * &t.b.inverse()?).pow(self.m as i32)?;
        let mut sum = WeylOp::zero();
        for (j, d) in self.coeffs.iter().enumerate() {
            sum.add_term(WeylIndex::new(j as i64, mi - j as i64), d);
        }
        let p_inv = NormalPoly::word(-mi, 0);
        Ok(sum.to_normal()?.mul(&p_inv)?.scale(&pref))
    }

    /// `B^-m p^-m sum_{r <= terms} (-Delta)^r`.
    pub fn inverse_power(&self, t: &LinearCanonicalTransform, terms: usize) -> Result<NormalPoly> {
        let neg_delta = -self.delta(t)?;
        let mut pow = NormalPoly::word(0, 0);
        let mut series = pow.clone();
        for _ in 0..terms {
            pow = pow.mul(&neg_delta)?;
            series += &pow;
        }
        let lead = NormalPoly::single(Word::new(-(self.m as i64), 0), t.b.pow(-(self.m as i32))?);
        lead.mul(&series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, Symbol};

    #[test]
    fn closed_form() {
        let t = LinearCanonicalTransform::ermakov();
        for m in 1..=4u32 {
            let dc = derive_delta_coeffs(m, &t).unwrap();
            let ratio = &t.b * &t.c.inverse().unwrap();
            for (j, d) in dc.coeffs.iter().enumerate() {
                let want = ratio.pow(j as i32).unwrap().scale_rat(&binomial(m as i64, j));
                assert_eq!(d, &want, "D[{m},{j}]");
            }
        }
    }

    #[test]
    fn inverse_times_power_is_one_through_order() {
        let t = LinearCanonicalTransform::ermakov();
        for m in 1..=2u32 {
            let dc = derive_delta_coeffs(m, &t).unwrap();
            let terms = 4;
            let inv = dc.inverse_power(&t, terms).unwrap();
            let pm = expand_p_power_weyl(m, &t).unwrap().to_normal().unwrap();
            let prod = inv.mul(&pm).unwrap();
            // the defect is (-Delta)^(terms+1), of order >= terms+1 in C = -mu rhodot
            for (w, c) in prod.iter() {
                let low = c.truncate_exp(Symbol::Rhodot, terms as i32);
                let want = if *w == Word::new(0, 0) { ScalarExpr::one() } else { ScalarExpr::zero() };
                assert_eq!(low, want, "{w}");
            }
        }
    }

    #[test]
    fn c_zero_rejected() {
        let s = LinearCanonicalTransform::scaling(ScalarExpr::sym(Symbol::Rho)).unwrap();
        assert!(derive_delta_coeffs(1, &s).is_err());
    }
}
