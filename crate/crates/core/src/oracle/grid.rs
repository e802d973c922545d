use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{binomial, Assignment, ScalarExpr, Symbol};
use crate::weyl::{NormalPoly, WeylOp};

pub type Vector = DVector<Complex64>;

/// `p` and `q` as matrices on a momentum grid `p_j = (j - N/2 + 1/2) h`.
///
/// `p` is diagonal with no zero entry; `q = i hbar d/dp` uses the periodic
/// spectral derivative.
#[derive(Debug, Clone)]
pub struct GridRep {
    pub dim: usize,
    pub hbar: f64,
    pub half_width: f64,
    pub p_values: Vec<f64>,
    pub q: DMatrix<Complex64>,
}

pub fn build_grid_rep(dim: usize, half_width: f64, hbar: f64) -> Result<GridRep> {
    if dim < 32 || !dim.is_multiple_of(2) {
        return Err(Error::Domain(format!("grid dimension must be even and at least 32, got {dim}")));
    }
    let h = 2.0 * half_width / dim as f64;
    let p_values: Vec<f64> = (0..dim).map(|j| (j as f64 - dim as f64 / 2.0 + 0.5) * h).collect();
    let period = dim as f64 * h;
    let pi = std::f64::consts::PI;
    let ih = Complex64::new(0.0, hbar);
    let q = DMatrix::from_fn(dim, dim, |j, k| {
        if j == k {
            return Complex64::new(0.0, 0.0);
        }
        let d = j as f64 - k as f64;
        let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
        ih * (pi / period * sign / (pi * d / dim as f64).tan())
    });
    Ok(GridRep { dim, hbar, half_width, p_values, q })
}

impl GridRep {
    /// `p` as a dense matrix.
    pub fn p_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&DVector::from_iterator(self.dim, self.p_values.iter().map(|&p| Complex64::new(p, 0.0))))
    }

    pub fn apply_q(&self, v: &Vector, times: u32) -> Vector {
        let mut out = v.clone();
        for _ in 0..times {
            out = &self.q * out;
        }
        out
    }

    /// `p^k v`, any integer `k`.
    pub fn apply_p(&self, v: &Vector, k: i64) -> Vector {
        DVector::from_iterator(self.dim, v.iter().zip(&self.p_values).map(|(x, p)| x * p.powi(k as i32)))
    }

    /// `T[m,n] v` from the symmetrized sum `2^-n sum C(n,k) q^k p^m q^(n-k)`.
    pub fn apply_t(&self, m: i64, n: i64, v: &Vector) -> Result<Vector> {
        if n < 0 {
            return Err(Error::Domain(format!("T[{m},{n}] needs a negative power of q")));
        }
        let mut out = DVector::zeros(self.dim);
        let norm = 0.5f64.powi(n as i32);
        for k in 0..=n {
            let c = num_traits::ToPrimitive::to_f64(&binomial(n, k as usize)).expect("finite") * norm;
            let w = self.apply_q(&self.apply_p(&self.apply_q(v, (n - k) as u32), m), k as u32);
            out += w * Complex64::new(c, 0.0);
        }
        Ok(out)
    }

    fn coeff(&self, c: &ScalarExpr, assignment: &Assignment) -> Result<Complex64> {
        let mut a = assignment.clone();
        a.insert(Symbol::Hbar, Complex64::new(self.hbar, 0.0));
        c.evaluate(&a)
    }

    /// `op v` with every `T[m,n]` built from its symmetrized definition.
    pub fn apply_weyl(&self, op: &WeylOp, v: &Vector, assignment: &Assignment) -> Result<Vector> {
        let mut out = DVector::zeros(self.dim);
        for (k, c) in op.iter() {
            out += self.apply_t(k.m, k.n, v)? * self.coeff(c, assignment)?;
        }
        Ok(out)
    }

    /// `poly v` with words `p^a q^b`.
    pub fn apply_normal(&self, poly: &NormalPoly, v: &Vector, assignment: &Assignment) -> Result<Vector> {
        let mut out = DVector::zeros(self.dim);
        for (w, c) in poly.iter() {
            if w.b < 0 {
                return Err(Error::Domain(format!("word p^{} q^{} needs a negative power of q", w.a, w.b)));
            }
            out += self.apply_p(&self.apply_q(v, w.b as u32), w.a) * self.coeff(c, assignment)?;
        }
        Ok(out)
    }

    /// Gaussian probes centred at `+-half_width/4`, well inside the interior and away from `p = 0`.
    pub fn probes(&self) -> Vec<Vector> {
        let sigma = self.half_width / 40.0;
        [-0.25, 0.25, 0.3]
            .iter()
            .map(|f| {
                let c = f * self.half_width;
                DVector::from_iterator(
                    self.dim,
                    self.p_values.iter().map(|p| Complex64::new((-(p - c).powi(2) / (2.0 * sigma * sigma)).exp(), 0.0)),
                )
            })
            .collect()
    }

    /// Norm of `v` on the middle half of the grid.
    pub fn interior_norm(&self, v: &Vector) -> f64 {
        let (lo, hi) = (self.dim / 4, 3 * self.dim / 4);
        v.iter().skip(lo).take(hi - lo).map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Outcome of a grid comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub dim: usize,
    pub probes: usize,
    /// Largest `|P (L - R) v| / max(|P L v|, |P R v|, |P v|)` over the probes, `P` the interior projector.
    pub residual: f64,
}

/// Relative interior residual between two linear maps, tested on the probes.
pub fn grid_residual(
    rep: &GridRep,
    lhs: impl Fn(&Vector) -> Result<Vector>,
    rhs: impl Fn(&Vector) -> Result<Vector>,
) -> Result<GridReport> {
    let mut worst: f64 = 0.0;
    let probes = rep.probes();
    for v in &probes {
        let l = lhs(v)?;
        let r = rhs(v)?;
        let num = rep.interior_norm(&(&l - &r));
        if num == 0.0 {
            continue;
        }
        let den = rep.interior_norm(&l).max(rep.interior_norm(&r)).max(rep.interior_norm(v));
        worst = worst.max(if den > 0.0 { num / den } else { f64::INFINITY });
    }
    Ok(GridReport { dim: rep.dim, probes: probes.len(), residual: worst })
}

/// `op` against `identity_rhs`, both built term by term on the grid.
pub fn grid_check(op: &WeylOp, identity_rhs: &WeylOp, rep: &GridRep, assignment: &Assignment) -> Result<GridReport> {
    grid_residual(rep, |v| rep.apply_weyl(op, v, assignment), |v| rep.apply_weyl(identity_rhs, v, assignment))
}

/// `[x, y]` formed from grid products against `bracket` evaluated on the grid.
pub fn grid_commutator_check(
    x: &WeylOp,
    y: &WeylOp,
    bracket: &WeylOp,
    rep: &GridRep,
    assignment: &Assignment,
) -> Result<GridReport> {
    grid_residual(
        rep,
        |v| {
            let xy = rep.apply_weyl(x, &rep.apply_weyl(y, v, assignment)?, assignment)?;
            let yx = rep.apply_weyl(y, &rep.apply_weyl(x, v, assignment)?, assignment)?;
            Ok(xy - yx)
        },
        |v| rep.apply_weyl(bracket, v, assignment),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{commutator, weyl_to_normal, WeylIndex};

    #[test]
    fn canonical_pair() {
        let rep = build_grid_rep(256, 4.0, 1.0).unwrap();
        let ih = Complex64::new(0.0, rep.hbar);
        let r = grid_residual(
            &rep,
            |v| Ok(rep.apply_q(&rep.apply_p(v, 1), 1) - rep.apply_p(&rep.apply_q(v, 1), 1)),
            |v| Ok(v * ih),
        )
        .unwrap();
        assert!(r.residual <= 1e-8, "{}", r.residual);
        for p in &rep.p_values {
            assert!(p.abs() > 0.0 && (p * p.powi(-1) - 1.0).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn negative_index_representations() {
        let rep = build_grid_rep(256, 4.0, 1.0).unwrap();
        let a = Assignment::new();
        let n = weyl_to_normal(WeylIndex::new(-1, 1)).unwrap();
        let r = grid_residual(&rep, |v| rep.apply_t(-1, 1, v), |v| rep.apply_normal(&n, v, &a)).unwrap();
        assert!(r.residual <= 1e-6, "{}", r.residual);
        let x = WeylOp::t(-2, 3);
        let y = WeylOp::t(2, 2);
        let b = commutator(&x, &y).unwrap();
        let r = grid_commutator_check(&x, &y, &b, &rep, &a).unwrap();
        assert!(r.residual <= 1e-6, "{}", r.residual);
        let wrong = b.scale(&ScalarExpr::ratio(11, 10));
        assert!(grid_commutator_check(&x, &y, &wrong, &rep, &a).unwrap().residual > 1e-3);
        assert_eq!(grid_check(&WeylOp::t(0, 0), &WeylOp::t(0, 0), &rep, &a).unwrap().residual, 0.0);
    }
}
