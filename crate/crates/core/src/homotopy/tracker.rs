//! Predictor–corrector path tracking for homotopies `H(u, t)`, `t ∈ [0, 1]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{lu_solve, CMatrix};

/// A square homotopy: `dim` equations in `dim` unknowns for each `t`.
pub trait Homotopy: Sync {
    fn dim(&self) -> usize;

    /// `H(u, t)`.
    fn eval(&self, u: &[Complex64], t: f64) -> Vec<Complex64>;

    /// `(∂H/∂u, ∂H/∂t)` at `(u, t)`.
    fn jacobian(&self, u: &[Complex64], t: f64) -> (CMatrix, Vec<Complex64>);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackerOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub max_newton_iters: usize,
    /// Relative update norm at which the corrector has converged.
    pub newton_tol: f64,
    /// Consecutive successful steps before the step grows.
    pub grow_after: usize,
    pub grow_factor: f64,
    pub max_steps: usize,
    /// Relative update norm reached by the final Newton sharpening.
    pub sharpen_tol: f64,
    pub divergence_bound: f64,
}

impl Default for TrackerOptions {
    fn default() -> Self {
        TrackerOptions {
            initial_step: 0.05,
            min_step: 1e-7,
            max_step: 0.1,
            max_newton_iters: 3,
            newton_tol: 1e-11,
            grow_after: 4,
            grow_factor: 1.5,
            max_steps: 10_000,
            sharpen_tol: 1e-13,
            divergence_bound: 1e8,
        }
    }
}

impl TrackerOptions {
    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            self.initial_step,
            self.min_step,
            self.max_step,
            self.newton_tol,
            self.grow_factor,
            self.sharpen_tol,
            self.divergence_bound,
        ];
        if positive.iter().any(|&v| v.is_nan() || v <= 0.0) || self.max_steps == 0 || self.max_newton_iters == 0 {
            return Err("tracker bounds must be positive".into());
        }
        if !(self.min_step < self.initial_step && self.initial_step <= self.max_step) {
            return Err("need min_step < initial_step ≤ max_step".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathFailure {
    MinStep,
    MaxSteps,
    Diverged,
}

#[derive(Debug, Clone)]
pub struct PathResult {
    pub endpoint: Vec<Complex64>,
    pub steps: usize,
    /// `‖H(u, 1)‖∞` at the sharpened endpoint.
    pub residual: f64,
}

fn inf_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Tangent `du/dt = −H_u⁻¹ H_t`.
fn tangent<H: Homotopy + ?Sized>(h: &H, u: &[Complex64], t: f64) -> Option<Vec<Complex64>> {
    let (ju, jt) = h.jacobian(u, t);
    let rhs: Vec<Complex64> = jt.iter().map(|c| -c).collect();
    lu_solve(&ju, &rhs)
}

fn axpy(u: &[Complex64], a: f64, v: &[Complex64]) -> Vec<Complex64> {
    u.iter().zip(v).map(|(x, y)| x + y * a).collect()
}

fn rk4<H: Homotopy + ?Sized>(h: &H, u: &[Complex64], t: f64, dt: f64) -> Option<Vec<Complex64>> {
    let k1 = tangent(h, u, t)?;
    let k2 = tangent(h, &axpy(u, dt / 2.0, &k1), t + dt / 2.0)?;
    let k3 = tangent(h, &axpy(u, dt / 2.0, &k2), t + dt / 2.0)?;
    let k4 = tangent(h, &axpy(u, dt, &k3), t + dt)?;
    Some(
        (0..u.len())
            .map(|i| u[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0))
            .collect(),
    )
}

/// Newton at fixed `t`; returns the corrected point when the update norm
/// drops below `tol · (1 + ‖u‖∞)` within `max_iters` iterations.
pub fn newton<H: Homotopy + ?Sized>(
    h: &H,
    mut u: Vec<Complex64>,
    t: f64,
    max_iters: usize,
    tol: f64,
) -> Option<Vec<Complex64>> {
    for _ in 0..max_iters {
        let (ju, _) = h.jacobian(&u, t);
        let rhs: Vec<Complex64> = h.eval(&u, t).iter().map(|c| -c).collect();
        let delta = lu_solve(&ju, &rhs)?;
        for (x, d) in u.iter_mut().zip(&delta) {
            *x += d;
        }
        if inf_norm(&delta) <= tol * (1.0 + inf_norm(&u)) {
            return Some(u);
        }
    }
    None
}

/// Corrector: Newton that also gives up as soon as an update fails to
/// shrink by a factor of 4, which is how a predictor that landed near a
/// neighbouring path shows up.
fn correct<H: Homotopy + ?Sized>(
    h: &H,
    mut u: Vec<Complex64>,
    t: f64,
    max_iters: usize,
    tol: f64,
) -> Option<Vec<Complex64>> {
    let mut prev = f64::INFINITY;
    for _ in 0..max_iters {
        let (ju, _) = h.jacobian(&u, t);
        let rhs: Vec<Complex64> = h.eval(&u, t).iter().map(|c| -c).collect();
        let delta = lu_solve(&ju, &rhs)?;
        for (x, d) in u.iter_mut().zip(&delta) {
            *x += d;
        }
        let size = inf_norm(&delta);
        let scale = 1.0 + inf_norm(&u);
        if size <= tol * scale {
            return Some(u);
        }
        if size > prev / 4.0 {
            return None;
        }
        prev = size;
    }
    None
}

/// Track `start` (a solution of `H(·, 0)`) to `t = 1`.
pub fn track<H: Homotopy + ?Sized>(
    h: &H,
    start: &[Complex64],
    opts: &TrackerOptions,
) -> Result<PathResult, PathFailure> {
    let mut u = start.to_vec();
    let mut t = 0.0;
    let mut step = opts.initial_step;
    let mut streak = 0;
    let mut steps = 0;
    while t < 1.0 {
        if steps >= opts.max_steps {
            return Err(PathFailure::MaxSteps);
        }
        steps += 1;
        let dt = step.min(1.0 - t);
        let t_next = if dt >= 1.0 - t { 1.0 } else { t + dt };
        let corrected =
            rk4(h, &u, t, dt).and_then(|pred| correct(h, pred, t_next, opts.max_newton_iters, opts.newton_tol));
        match corrected {
            Some(next) => {
                u = next;
                t = t_next;
                streak += 1;
                if streak >= opts.grow_after {
                    step = (step * opts.grow_factor).min(opts.max_step);
                    streak = 0;
                }
                if inf_norm(&u) > opts.divergence_bound {
                    return Err(PathFailure::Diverged);
                }
            }
            None => {
                streak = 0;
                step /= 2.0;
                if step < opts.min_step {
                    return Err(PathFailure::MinStep);
                }
            }
        }
    }
    let u = sharpen(h, u, opts);
    let residual = inf_norm(&h.eval(&u, 1.0));
    Ok(PathResult {
        endpoint: u,
        steps,
        residual,
    })
}

/// Newton at `t = 1` until the update is below `sharpen_tol`, or it stops
/// improving.
pub fn sharpen<H: Homotopy + ?Sized>(h: &H, mut u: Vec<Complex64>, opts: &TrackerOptions) -> Vec<Complex64> {
    for _ in 0..8 {
        let (ju, _) = h.jacobian(&u, 1.0);
        let rhs: Vec<Complex64> = h.eval(&u, 1.0).iter().map(|c| -c).collect();
        let Some(delta) = lu_solve(&ju, &rhs) else { break };
        for (x, d) in u.iter_mut().zip(&delta) {
            *x += d;
        }
        if inf_norm(&delta) <= opts.sharpen_tol * (1.0 + inf_norm(&u)) {
            break;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `u² − (1 − t) · 4 − t · 9`: the root 2 moves to 3.
    struct Scalar;

    impl Homotopy for Scalar {
        fn dim(&self) -> usize {
            1
        }
        fn eval(&self, u: &[Complex64], t: f64) -> Vec<Complex64> {
            vec![u[0] * u[0] - (4.0 * (1.0 - t) + 9.0 * t)]
        }
        fn jacobian(&self, u: &[Complex64], _t: f64) -> (CMatrix, Vec<Complex64>) {
            (CMatrix::from_element(1, 1, u[0] * 2.0), vec![Complex64::new(-5.0, 0.0)])
        }
    }

    #[test]
    fn tracks_a_moving_root() {
        let r = track(&Scalar, &[Complex64::new(2.0, 0.0)], &TrackerOptions::default()).unwrap();
        assert!((r.endpoint[0] - 3.0).norm() < 1e-13);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn default_options_are_valid() {
        assert!(TrackerOptions::default().validate().is_ok());
        let bad = TrackerOptions {
            min_step: 0.5,
            ..TrackerOptions::default()
        };
        assert!(bad.validate().is_err());
    }
}
