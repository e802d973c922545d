use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named time profile for `mu(t)` or `omega(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Profile {
    Constant {
        value: f64,
    },
    /// `c0 + c1 t`
    Linear {
        c0: f64,
        c1: f64,
    },
    /// `a exp(rate t)`
    Exponential {
        a: f64,
        rate: f64,
    },
    /// `c0 + amp sin(freq t)`
    Sinusoidal {
        c0: f64,
        amp: f64,
        freq: f64,
    },
}

impl Profile {
    pub fn constant(value: f64) -> Self {
        Profile::Constant { value }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Profile::Constant { value } => value,
            Profile::Linear { c0, c1 } => c0 + c1 * t,
            Profile::Exponential { a, rate } => a * (rate * t).exp(),
            Profile::Sinusoidal { c0, amp, freq } => c0 + amp * (freq * t).sin(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Profile::Constant { .. } => 0.0,
            Profile::Linear { c1, .. } => c1,
            Profile::Exponential { a, rate } => a * rate * (rate * t).exp(),
            Profile::Sinusoidal { amp, freq, .. } => amp * freq * (freq * t).cos(),
        }
    }
}

/// The Ermakov-type problem `mu rho'' + mu' rho' + mu omega^2 rho = 1/(mu rho^3)`,
/// with `omega` absent for the pure form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErmakovSpec {
    pub mu: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Profile>,
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
    pub rho0: f64,
    pub rhodot0: f64,
}

/// Sampled solution; `tau = int 1/(2 mu rho^2) dt` from `t0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErmakovSolution {
    pub t_grid: Vec<f64>,
    pub rho: Vec<f64>,
    pub rhodot: Vec<f64>,
    pub tau: Vec<f64>,
}

fn rhs(spec: &ErmakovSpec, t: f64, y: [f64; 3]) -> [f64; 3] {
    let mu = spec.mu.value(t);
    let mud = spec.mu.derivative(t);
    let w2 = spec.omega.map_or(0.0, |w| w.value(t).powi(2));
    let [rho, rd, _] = y;
    let rdd = (1.0 / (mu * rho.powi(3)) - mud * rd - mu * w2 * rho) / mu;
    [rd, rdd, 1.0 / (2.0 * mu * rho * rho)]
}

fn axpy(y: [f64; 3], h: f64, k: [f64; 3]) -> [f64; 3] {
    [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]]
}

/// Classical fourth-order Runge-Kutta on `(rho, rho', tau)`.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the checks
pub fn ermakov_solve(spec: &ErmakovSpec) -> Result<ErmakovSolution> {
    if spec.steps < 100 {
        return Err(Error::Domain(format!("steps must be at least 100, got {}", spec.steps)));
    }
    if !(spec.t1 > spec.t0) {
        return Err(Error::Domain("t1 must exceed t0".into()));
    }
    let h = (spec.t1 - spec.t0) / spec.steps as f64;
    let mut sol = ErmakovSolution {
        t_grid: Vec::with_capacity(spec.steps + 1),
        rho: Vec::with_capacity(spec.steps + 1),
        rhodot: Vec::with_capacity(spec.steps + 1),
        tau: Vec::with_capacity(spec.steps + 1),
    };
    let mut y = [spec.rho0, spec.rhodot0, 0.0];
    let mut t = spec.t0;
    for i in 0..=spec.steps {
        if spec.mu.value(t) <= 0.0 {
            return Err(Error::Domain(format!("mu({t}) is not positive")));
        }
        sol.t_grid.push(t);
        sol.rho.push(y[0]);
        sol.rhodot.push(y[1]);
        sol.tau.push(y[2]);
        if i == spec.steps {
            break;
        }
        let k1 = rhs(spec, t, y);
        let k2 = rhs(spec, t + h / 2.0, axpy(y, h / 2.0, k1));
        let k3 = rhs(spec, t + h / 2.0, axpy(y, h / 2.0, k2));
        let k4 = rhs(spec, t + h, axpy(y, h, k3));
        let next: [f64; 3] = std::array::from_fn(|j| y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        let t_next = spec.t0 + (i + 1) as f64 * h;
        if !(next[0] > 0.0) || next.iter().any(|v| !v.is_finite()) {
            return Err(Error::BlowUp { t0: t, t1: t_next });
        }
        y = next;
        t = t_next;
    }
    Ok(sol)
}

impl ErmakovSolution {
    /// Largest `|mu rho'' + mu' rho' + mu omega^2 rho - 1/(mu rho^3)|` with `rho''`
    /// from central differences at interior grid points.
    pub fn ode_residual(&self, spec: &ErmakovSpec) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..self.t_grid.len().saturating_sub(1) {
            let h = self.t_grid[i + 1] - self.t_grid[i];
            let t = self.t_grid[i];
            let rdd = (self.rho[i + 1] - 2.0 * self.rho[i] + self.rho[i - 1]) / (h * h);
            let mu = spec.mu.value(t);
            let w2 = spec.omega.map_or(0.0, |w| w.value(t).powi(2));
            let r = mu * rdd + spec.mu.derivative(t) * self.rhodot[i] + mu * w2 * self.rho[i]
                - 1.0 / (mu * self.rho[i].powi(3));
            worst = worst.max(r.abs());
        }
        worst
    }

    pub fn tau_increasing(&self) -> bool {
        self.tau.windows(2).all(|w| w[1] > w[0])
    }
}

/// Ratio of the endpoint errors at `steps` and `2 steps`, measured against a
/// run with `16 steps`. About 16 for a fourth-order method.
pub fn convergence_ratio(spec: &ErmakovSpec) -> Result<f64> {
    let end = |n: usize| -> Result<f64> {
        let s = ermakov_solve(&ErmakovSpec { steps: n, ..*spec })?;
        Ok(*s.rho.last().expect("nonempty"))
    };
    let reference = end(16 * spec.steps)?;
    let e1 = (end(spec.steps)? - reference).abs();
    let e2 = (end(2 * spec.steps)? - reference).abs();
    Ok(e1 / e2)
}
