use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Terms kept in the small-`u` expansion of the exponent.
const SERIES_TERMS: usize = 48;

/// `F(u, xi) / u^2` with `F = 2/3 - u + (1-u)^(3/2) (u xi - 2/3) (1 - u xi)^(-3/2)`.
fn exponent_kernel(u: Complex64, xi: f64) -> Complex64 {
    if u.norm() > 0.5 {
        let a = ((1.0 - u) / (1.0 - u * xi)).powf(1.5);
        return (2.0 / 3.0 - u + (u * xi - 2.0 / 3.0) * a) / (u * u);
    }
    // log a = 3/2 sum (xi^k - 1) u^k / k, exponentiated as a power series in u
    let n = SERIES_TERMS;
    let mut log_a = vec![0.0; n + 1];
    let mut xk = 1.0;
    for (k, c) in log_a.iter_mut().enumerate().skip(1) {
        xk *= xi;
        *c = 1.5 * (xk - 1.0) / k as f64;
    }
    let mut a = vec![0.0; n + 1];
    a[0] = 1.0;
    for k in 1..=n {
        let s: f64 = (1..=k).map(|j| j as f64 * log_a[j] * a[k - j]).sum();
        a[k] = s / k as f64;
    }
    // coefficients of F from u^2 on
    let mut acc = Complex64::new(0.0, 0.0);
    let mut up = Complex64::new(1.0, 0.0);
    for k in 2..=n {
        let f = xi * a[k - 1] - 2.0 / 3.0 * a[k];
        acc += up * f;
        up *= u;
    }
    acc
}

/// `g(x, y)` for complex arguments, `|xy| < 1`.
pub fn quartic_generating_value_complex(x: Complex64, y: Complex64, quad_points: usize) -> Result<Complex64> {
    let u = x * y;
    if u.norm() >= 1.0 {
        return Err(Error::Domain(format!("|xy| = {} must be below 1", u.norm())));
    }
    let n = NonZeroUsize::new(quad_points.max(16)).expect("nonzero");
    let rule = GaussLegendre::new(n);
    let mut sum = Complex64::new(0.0, 0.0);
    // xi = s^2, d xi / (2 sqrt xi) = ds
    for (node, w) in rule.iter() {
        let s = 0.5 * (node + 1.0);
        let xi = s * s;
        sum += (y * exponent_kernel(u, xi)).exp() / (1.0 - u * xi) * (0.5 * w);
    }
    Ok(sum)
}

/// `g(x, y) = int_0^1 d xi / (2 sqrt(xi) (1 - xy xi)) exp(F(xy, xi) / (x^2 y))`.
pub fn quartic_generating_value(x: f64, y: f64, quad_points: usize) -> Result<f64> {
    if x * y >= 1.0 {
        return Err(Error::Domain(format!("xy = {} must be below 1", x * y)));
    }
    Ok(quartic_generating_value_complex(x.into(), y.into(), quad_points)?.re)
}

/// Taylor coefficients `[x^M y^N] g`, `M <= m_max`, `N <= n_max`, from the
/// trapezoidal Cauchy integral on circles of the given radius.
pub fn generating_taylor(
    m_max: usize,
    n_max: usize,
    radius: f64,
    samples: usize,
    quad_points: usize,
) -> Result<Vec<Vec<f64>>> {
    use rayon::prelude::*;
    let tau = std::f64::consts::TAU;
    let grid: Vec<Vec<Complex64>> = (0..samples)
        .into_par_iter()
        .map(|a| {
            let x = Complex64::from_polar(radius, tau * a as f64 / samples as f64);
            (0..samples)
                .map(|b| {
                    let y = Complex64::from_polar(radius, tau * b as f64 / samples as f64);
                    quartic_generating_value_complex(x, y, quad_points)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![vec![0.0; n_max + 1]; m_max + 1];
    let norm = (samples * samples) as f64;
    for (m, row) in out.iter_mut().enumerate() {
        for (n, c) in row.iter_mut().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for (a, line) in grid.iter().enumerate() {
                for (b, g) in line.iter().enumerate() {
                    let ph = -tau * ((m * a) as f64 + (n * b) as f64) / samples as f64;
                    s += g * Complex64::from_polar(1.0, ph);
                }
            }
            *c = s.re / norm / radius.powi((m + n) as i32);
        }
    }
    Ok(out)
}
