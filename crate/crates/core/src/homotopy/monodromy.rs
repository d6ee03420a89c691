//! Monodromy loops and the decomposition count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::parameter::track_segment;
use super::system::{generate_startpoint, SquareSystem};
use super::tracker::TrackerOptions;
use crate::apolarity::{WaringDecomposition, CANONICAL_TOL};
use crate::combinatorics::CaseSpec;
use crate::error::{Result, WaringError};
use crate::random::{seeded_rng, unit_complex};

/// Residual every stored solution must satisfy.
pub const SOLUTION_RESIDUAL: f64 = 1e-9;

pub const DEFAULT_STALL: usize = 15;
pub const DEFAULT_BUDGET_LOOPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LoopRecord {
    pub paths: usize,
    pub failures: usize,
    pub new_solutions: usize,
}

/// Known solutions of one parameter point, deduplicated up to summand
/// order.
#[derive(Debug, Clone)]
pub struct SolutionRegistry {
    parameters: Vec<Complex64>,
    /// Unknown vectors in the chart, as tracked.
    points: Vec<Vec<Complex64>>,
    /// Canonical form of each point.
    solutions: Vec<WaringDecomposition>,
    pub loop_log: Vec<LoopRecord>,
    pub stall_counter: usize,
}

impl SolutionRegistry {
    pub fn new(parameters: Vec<Complex64>) -> Self {
        SolutionRegistry {
            parameters,
            points: Vec::new(),
            solutions: Vec::new(),
            loop_log: Vec::new(),
            stall_counter: 0,
        }
    }

    pub fn parameters(&self) -> &[Complex64] {
        &self.parameters
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Complex64>] {
        &self.points
    }

    pub fn solutions(&self) -> &[WaringDecomposition] {
        &self.solutions
    }

    /// Insert `u` unless it fails the residual check or is already known up
    /// to summand order. Returns whether it was new.
    pub fn insert(&mut self, system: &SquareSystem, u: Vec<Complex64>) -> bool {
        if system.residual(&u, &self.parameters) >= SOLUTION_RESIDUAL {
            return false;
        }
        let mut canonical = system.to_decomposition(&u).canonical();
        if let Ok(f) = system.to_poly_vector(&self.parameters) {
            canonical = canonical.with_residual_against(&f);
        }
        if self.solutions.iter().any(|s| s.same_as(&canonical, CANONICAL_TOL)) {
            return false;
        }
        self.points.push(u);
        self.solutions.push(canonical);
        true
    }
}

/// RNG stream for retries of one leg of one path, derived by counter.
fn path_stream(loop_index: u64, path: usize, leg: usize) -> u64 {
    (1 << 62) | (loop_index << 24) | ((path as u64) << 2) | leg as u64
}

/// One loop `base → p_1 → p_2 → base` for every known solution. The γ of
/// each leg is shared by all paths; a failed leg is retried with γ values
/// seeded by (loop, path, leg). Paths run in parallel and endpoints are
/// merged in path order, so the result does not depend on scheduling.
pub fn monodromy_loop(
    system: &SquareSystem,
    registry: &mut SolutionRegistry,
    seed: u64,
    loop_index: u64,
    opts: &TrackerOptions,
) -> Result<LoopRecord> {
    if registry.is_empty() {
        return Err(WaringError::InvalidCase("monodromy needs a known solution".into()));
    }
    let mut rng = seeded_rng(seed, 0x1000 + loop_index);
    let p1 = system.parameters(&system.random_point(&mut rng));
    let p2 = system.parameters(&system.random_point(&mut rng));
    let gammas = [unit_complex(&mut rng), unit_complex(&mut rng), unit_complex(&mut rng)];
    let base = registry.parameters().to_vec();
    let legs: [(&[Complex64], &[Complex64]); 3] = [(&base, &p1), (&p1, &p2), (&p2, &base)];
    let endpoints: Vec<Option<Vec<Complex64>>> = registry
        .points()
        .par_iter()
        .enumerate()
        .map(|(path, u)| {
            let mut u = u.clone();
            for (leg, ((from, to), gamma)) in legs.iter().zip(gammas).enumerate() {
                let stream = path_stream(loop_index, path, leg);
                u = track_segment(system, from, to, &u, gamma, seed, stream, opts)
                    .ok()?
                    .0
                    .endpoint;
            }
            Some(u)
        })
        .collect();
    let paths = endpoints.len();
    let mut failures = 0;
    let mut new_solutions = 0;
    for end in endpoints {
        match end {
            Some(u) if system.residual(&u, &base) < SOLUTION_RESIDUAL => {
                if registry.insert(system, u) {
                    new_solutions += 1;
                }
            }
            _ => failures += 1,
        }
    }
    let record = LoopRecord {
        paths,
        failures,
        new_solutions,
    };
    registry.loop_log.push(record);
    if new_solutions == 0 {
        registry.stall_counter += 1;
    } else {
        registry.stall_counter = 0;
    }
    if failures == paths {
        return Err(WaringError::AllPathsFailed(paths));
    }
    Ok(record)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountStatus {
    Stabilized,
    /// The loop budget ran out first; the count is a lower bound.
    BudgetExhausted,
}

impl CountStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountStatus::Stabilized => "stabilized",
            CountStatus::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CountOptions {
    pub seed: u64,
    pub budget_loops: usize,
    pub stall: usize,
    pub tracker: TrackerOptions,
    /// Run the Terracini check before any tracking.
    pub check_defect: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            seed: 0,
            budget_loops: DEFAULT_BUDGET_LOOPS,
            stall: DEFAULT_STALL,
            tracker: TrackerOptions::default(),
            check_defect: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub k: usize,
    pub count: usize,
    pub status: CountStatus,
    pub loops: usize,
    pub path_failures: usize,
    #[serde(skip)]
    pub solutions: Vec<WaringDecomposition>,
    #[serde(skip)]
    pub registry: SolutionRegistry,
}

/// Number of decompositions of a random vector of the given signature, by
/// monodromy until `stall` consecutive loops find nothing new.
pub fn count_decompositions(case: &CaseSpec, opts: &CountOptions) -> Result<CountReport> {
    let k = case.require_k()?;
    if opts.stall == 0 || opts.budget_loops == 0 {
        return Err(WaringError::OutOfRange("stall and loop budget must be positive".into()));
    }
    opts.tracker.validate().map_err(WaringError::OutOfRange)?;
    if opts.check_defect {
        let report = crate::terracini::secant_defect(case, k, opts.seed)?;
        if report.defect > 0 {
            return Err(WaringError::Defective {
                k,
                defect: report.defect,
            });
        }
    }
    let system = SquareSystem::new(case)?;
    let start = generate_startpoint(&system, opts.seed)?;
    let mut registry = SolutionRegistry::new(start.parameters.clone());
    registry.insert(&system, start.solution);
    let mut loops = 0;
    while loops < opts.budget_loops && registry.stall_counter < opts.stall {
        monodromy_loop(&system, &mut registry, opts.seed, loops as u64, &opts.tracker)?;
        loops += 1;
    }
    let status = if registry.stall_counter >= opts.stall {
        CountStatus::Stabilized
    } else {
        CountStatus::BudgetExhausted
    };
    Ok(CountReport {
        k,
        count: registry.len(),
        status,
        loops,
        path_failures: registry.loop_log.iter().map(|r| r.failures).sum(),
        solutions: registry.solutions().to_vec(),
        registry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(n: usize, d: &[u32]) -> SquareSystem {
        SquareSystem::new(&CaseSpec::new(n, d).unwrap()).unwrap()
    }

    #[test]
    fn permuted_duplicates_are_rejected() {
        let s = system(2, &[2, 3, 3, 3]);
        let start = generate_startpoint(&s, 5).unwrap();
        let mut reg = SolutionRegistry::new(start.parameters.clone());
        assert!(reg.insert(&s, start.solution.clone()));
        let b = s.case().block();
        for shift in 1..s.k() {
            let mut permuted = start.solution.clone();
            permuted.rotate_left(shift * b);
            assert!(!reg.insert(&s, permuted));
        }
        let mut swapped = start.solution.clone();
        for h in 0..b {
            swapped.swap(h, b + h);
        }
        assert!(!reg.insert(&s, swapped));
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn non_solutions_are_rejected() {
        let s = system(1, &[2, 2]);
        let start = generate_startpoint(&s, 1).unwrap();
        let mut reg = SolutionRegistry::new(start.parameters.clone());
        let mut bad = start.solution.clone();
        bad[0] += 1e-3;
        assert!(!reg.insert(&s, bad));
        assert!(reg.is_empty());
    }

    #[test]
    fn known_only_loops_stall() {
        let s = system(1, &[2, 2]);
        let start = generate_startpoint(&s, 2).unwrap();
        let mut reg = SolutionRegistry::new(start.parameters.clone());
        reg.insert(&s, start.solution);
        for i in 0..3 {
            let rec = monodromy_loop(&s, &mut reg, 2, i, &TrackerOptions::default()).unwrap();
            assert_eq!(rec.new_solutions, 0);
        }
        assert_eq!(reg.stall_counter, 3);
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn empty_registry_is_rejected() {
        let s = system(1, &[2, 2]);
        let mut reg = SolutionRegistry::new(vec![Complex64::new(0.0, 0.0); s.len()]);
        assert!(monodromy_loop(&s, &mut reg, 0, 0, &TrackerOptions::default()).is_err());
    }

    #[test]
    fn pair_of_ternary_quadric_and_cubic_counts_one() {
        let opts = CountOptions {
            seed: 1,
            stall: 5,
            ..CountOptions::default()
        };
        let r = count_decompositions(&CaseSpec::new(2, &[2, 3]).unwrap(), &opts).unwrap();
        assert_eq!((r.count, r.status), (1, CountStatus::Stabilized));
    }

    #[test]
    fn quadric_and_three_cubics_find_a_second_solution() {
        let opts = CountOptions {
            seed: 3,
            stall: 5,
            ..CountOptions::default()
        };
        let r = count_decompositions(&CaseSpec::new(2, &[2, 3, 3, 3]).unwrap(), &opts).unwrap();
        assert_eq!(r.count, 2);
    }

    #[test]
    fn defective_case_is_refused() {
        let r = count_decompositions(&CaseSpec::new(3, &[2, 4]).unwrap(), &CountOptions::default());
        assert!(matches!(r, Err(WaringError::Defective { k: 9, defect: 2 })));
    }

    #[test]
    fn identical_runs_are_bit_identical() {
        let opts = CountOptions {
            seed: 11,
            stall: 3,
            ..CountOptions::default()
        };
        let case = CaseSpec::new(2, &[2, 3, 3, 3]).unwrap();
        let a = count_decompositions(&case, &opts).unwrap();
        let b = count_decompositions(&case, &opts).unwrap();
        assert_eq!(a.registry.points(), b.registry.points());
        assert_eq!(a.registry.loop_log, b.registry.loop_log);
    }
}
