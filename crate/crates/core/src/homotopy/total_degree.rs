//! Isolated common zeros of `n` homogeneous forms on `P^n` by a total-degree
//! homotopy in a random affine chart.

use num_complex::Complex64;
use rayon::prelude::*;

use super::tracker::{track, Homotopy, TrackerOptions};
use crate::linalg::CMatrix;
use crate::polycore::HomogeneousPoly;
use crate::random::{random_unitary, seeded_rng, unit_complex};

struct TotalDegree<'a> {
    targets: &'a [HomogeneousPoly],
    /// `x(z) = chart[0] + Σ z_i chart[i + 1]`.
    chart: Vec<Vec<Complex64>>,
    gamma: Complex64,
}

impl TotalDegree<'_> {
    fn point(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut x = self.chart[0].clone();
        for (zi, v) in z.iter().zip(&self.chart[1..]) {
            for (xk, vk) in x.iter_mut().zip(v) {
                *xk += zi * vk;
            }
        }
        x
    }
}

impl Homotopy for TotalDegree<'_> {
    fn dim(&self) -> usize {
        self.targets.len()
    }

    fn eval(&self, z: &[Complex64], t: f64) -> Vec<Complex64> {
        let x = self.point(z);
        self.targets
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let start = z[i].powu(g.degree()) - 1.0;
                self.gamma * start * (1.0 - t) + g.eval(&x) * t
            })
            .collect()
    }

    fn jacobian(&self, z: &[Complex64], t: f64) -> (CMatrix, Vec<Complex64>) {
        let n = self.dim();
        let x = self.point(z);
        let mut ju = CMatrix::zeros(n, n);
        let mut jt = Vec::with_capacity(n);
        for (i, g) in self.targets.iter().enumerate() {
            let d = g.degree();
            let (value, grad) = g.eval_with_gradient(&x);
            for k in 0..n {
                let dir: Complex64 = grad.iter().zip(&self.chart[k + 1]).map(|(a, b)| a * b).sum();
                ju[(i, k)] = dir * t;
            }
            ju[(i, i)] += self.gamma * (1.0 - t) * f64::from(d) * z[i].powu(d - 1);
            jt.push(value - self.gamma * (z[i].powu(d) - 1.0));
        }
        (ju, jt)
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveSolutions {
    /// Unit-norm representatives of the endpoints that tracked successfully.
    pub points: Vec<Vec<Complex64>>,
    pub paths: usize,
    pub failures: usize,
}

/// Track all Bézout-many paths for `n` forms in `n + 1` variables.
pub fn solve_projective(targets: &[HomogeneousPoly], seed: u64, opts: &TrackerOptions) -> ProjectiveSolutions {
    let nv = targets[0].num_vars();
    assert_eq!(targets.len() + 1, nv, "need n forms on P^n");
    let scaled: Vec<HomogeneousPoly> = targets
        .iter()
        .map(|g| g.scale(Complex64::new(1.0 / g.norm().max(f64::MIN_POSITIVE), 0.0)))
        .collect();
    let mut rng = seeded_rng(seed, 0x7d);
    let chart = random_unitary(&mut rng, nv);
    let gamma = unit_complex(&mut rng);
    let h = TotalDegree {
        targets: &scaled,
        chart,
        gamma,
    };
    let starts = root_of_unity_grid(&scaled.iter().map(|g| g.degree()).collect::<Vec<_>>());
    let results: Vec<_> = starts.par_iter().map(|s| track(&h, s, opts)).collect();
    let paths = results.len();
    let mut failures = 0;
    let mut points = Vec::new();
    for r in results {
        match r {
            Ok(end) => {
                let x = h.point(&end.endpoint);
                let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                points.push(x.into_iter().map(|c| c / norm).collect());
            }
            Err(_) => failures += 1,
        }
    }
    ProjectiveSolutions {
        points,
        paths,
        failures,
    }
}

fn root_of_unity_grid(degrees: &[u32]) -> Vec<Vec<Complex64>> {
    let mut out = vec![Vec::new()];
    for &d in degrees {
        let roots: Vec<Complex64> = (0..d)
            .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * f64::from(j) / f64::from(d)))
            .collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                roots.iter().map(move |r| {
                    let mut p = prefix.clone();
                    p.push(*r);
                    p
                })
            })
            .collect();
    }
    out
}

/// `sin` of the angle between two projective points, computed as the norm
/// of the component of `b̂` orthogonal to `â` (stable near zero).
pub fn projective_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let dot: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>() / (na * nb);
    a.iter()
        .zip(b)
        .map(|(x, y)| (y / nb - dot * (x / na)).norm_sqr())
        .sum::<f64>()
        .sqrt()
        .min(1.0)
}
