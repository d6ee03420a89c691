use num_complex::Complex64;

use super::system::SquareSystem;
use super::tracker::{track, Homotopy, PathFailure, PathResult, TrackerOptions};
use crate::linalg::CMatrix;
use crate::random::{seeded_rng, unit_complex};

/// `H(u, t) = F(u; (1 − t) γ p_0 + t p_1)`.
pub struct ParameterHomotopy<'a> {
    system: &'a SquareSystem,
    start: Vec<Complex64>,
    target: &'a [Complex64],
    /// `w ⊙ (p_1 − γ p_0)`, so that `∂H/∂t` is its negative.
    direction: Vec<Complex64>,
}

impl<'a> ParameterHomotopy<'a> {
    pub fn new(system: &'a SquareSystem, start: &[Complex64], target: &'a [Complex64], gamma: Complex64) -> Self {
        let start: Vec<Complex64> = start.iter().map(|p| p * gamma).collect();
        let direction = system
            .weights()
            .iter()
            .zip(target.iter().zip(&start))
            .map(|(w, (t, s))| (t - s) * *w)
            .collect();
        ParameterHomotopy {
            system,
            start,
            target,
            direction,
        }
    }

    fn params(&self, t: f64) -> Vec<Complex64> {
        self.start
            .iter()
            .zip(self.target)
            .map(|(s, p)| s * (1.0 - t) + p * t)
            .collect()
    }
}

impl Homotopy for ParameterHomotopy<'_> {
    fn dim(&self) -> usize {
        self.system.len()
    }

    fn eval(&self, u: &[Complex64], t: f64) -> Vec<Complex64> {
        self.system.eval(u, &self.params(t))
    }

    fn jacobian(&self, u: &[Complex64], _t: f64) -> (CMatrix, Vec<Complex64>) {
        (self.system.jacobian(u), self.direction.iter().map(|d| -d).collect())
    }
}

/// Track a solution of `F(·; start_params)` to one of `F(·; target_params)`.
/// Since `F` is linear in `(λ, p)` jointly, the start solution for the
/// γ-scaled parameters is the given one with its λ's multiplied by γ.
pub fn track_path(
    system: &SquareSystem,
    start_params: &[Complex64],
    target_params: &[Complex64],
    start_solution: &[Complex64],
    gamma: Complex64,
    opts: &TrackerOptions,
) -> Result<PathResult, PathFailure> {
    let h = ParameterHomotopy::new(system, start_params, target_params, gamma);
    let u0 = system.scale_lambdas(start_solution, gamma);
    let mut r = track(&h, &u0, opts)?;
    r.residual = system.residual(&r.endpoint, target_params);
    Ok(r)
}

/// Extra γ draws for a segment whose first path failed.
pub const SEGMENT_RETRIES: usize = 3;

/// Track one segment with `gamma`; if the path fails (typically because it
/// passes close to a decomposition outside the chart), retry with fresh γ
/// values from `seeded_rng(seed, stream)`. Returns the endpoint and the
/// number of attempts used.
#[allow(clippy::too_many_arguments)]
pub fn track_segment(
    system: &SquareSystem,
    start_params: &[Complex64],
    target_params: &[Complex64],
    start_solution: &[Complex64],
    gamma: Complex64,
    seed: u64,
    stream: u64,
    opts: &TrackerOptions,
) -> Result<(PathResult, usize), PathFailure> {
    let mut rng = seeded_rng(seed, stream);
    let mut gamma = gamma;
    let mut last = PathFailure::MinStep;
    for attempt in 1..=1 + SEGMENT_RETRIES {
        match track_path(system, start_params, target_params, start_solution, gamma, opts) {
            Ok(r) => return Ok((r, attempt)),
            Err(e) => last = e,
        }
        gamma = unit_complex(&mut rng);
    }
    Err(last)
}
