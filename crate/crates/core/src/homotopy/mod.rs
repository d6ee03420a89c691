//! Parameter-homotopy continuation for the decomposition system: path
//! tracking, monodromy loops and solution counting.

mod monodromy;
mod parameter;
mod system;
mod total_degree;
mod tracker;

use num_complex::Complex64;
use rayon::prelude::*;

pub use monodromy::{
    count_decompositions, monodromy_loop, CountOptions, CountReport, CountStatus, LoopRecord, SolutionRegistry,
    DEFAULT_BUDGET_LOOPS, DEFAULT_STALL, SOLUTION_RESIDUAL,
};
pub use parameter::{track_path, track_segment, ParameterHomotopy, SEGMENT_RETRIES};
pub use system::{generate_startpoint, SquareSystem, Startpoint, START_ATTEMPTS, START_COND_LIMIT};
pub use total_degree::{projective_distance, solve_projective, ProjectiveSolutions};
pub use tracker::{newton, sharpen, track, Homotopy, PathFailure, PathResult, TrackerOptions};

use crate::apolarity::WaringDecomposition;
use crate::error::{Result, WaringError};
use crate::polycore::{LinearForm, PolyVector};
use crate::random::{random_unitary, seeded_rng, unit_complex};

/// Move every known solution of the registry's parameters to decompositions
/// of `f`. With `rotate`, `f` is first put in random unitary coordinates so
/// that no decomposition of `f` sits outside the chart `x_0 ≠ 0`.
pub fn track_to_target(
    system: &SquareSystem,
    registry: &SolutionRegistry,
    f: &PolyVector,
    seed: u64,
    rotate: bool,
    opts: &TrackerOptions,
) -> Result<Vec<WaringDecomposition>> {
    let case = system.case();
    if f.degrees() != case.degrees() || f.num_vars() != case.num_vars() {
        return Err(WaringError::ShapeMismatch(format!(
            "target does not have signature {}",
            case.label()
        )));
    }
    let mut rng = seeded_rng(seed, 0x7a26);
    let u = if rotate {
        random_unitary(&mut rng, case.num_vars())
    } else {
        (0..case.num_vars())
            .map(|i| {
                (0..case.num_vars())
                    .map(|j| Complex64::new(f64::from(u8::from(i == j)), 0.0))
                    .collect()
            })
            .collect()
    };
    let target = f.linear_substitution(&u).flatten();
    let gamma = unit_complex(&mut rng);
    let ends: Vec<Option<Vec<Complex64>>> = registry
        .points()
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            track_segment(
                system,
                registry.parameters(),
                &target,
                s,
                gamma,
                seed,
                (2 << 60) | i as u64,
                opts,
            )
            .ok()
            .map(|(r, _)| r.endpoint)
        })
        .collect();
    let mut out: Vec<WaringDecomposition> = Vec::new();
    for end in ends.into_iter().flatten() {
        if system.residual(&end, &target) >= SOLUTION_RESIDUAL {
            continue;
        }
        let d = system.to_decomposition(&end);
        // ℓ'(x) = c·x in rotated coordinates is ℓ(y) = c·(U^H y).
        let forms = d
            .forms()
            .iter()
            .map(|l| {
                LinearForm::new(
                    (0..case.num_vars())
                        .map(|m| (0..case.num_vars()).map(|h| u[m][h].conj() * l.coeffs()[h]).sum())
                        .collect(),
                )
            })
            .collect();
        let back = WaringDecomposition::new(case.degrees().to_vec(), forms, d.lambdas().to_vec())
            .with_residual_against(f)
            .canonical();
        if !out.iter().any(|o| o.same_as(&back, crate::apolarity::CANONICAL_TOL)) {
            out.push(back);
        }
    }
    if out.is_empty() {
        return Err(WaringError::AllPathsFailed(registry.len()));
    }
    Ok(out)
}
