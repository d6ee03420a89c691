//! Probabilistic secant-dimension check: the rank of the span of tangent
//! spaces at `k` random points of `P(O(a_1) ⊕ … ⊕ O(a_r))`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::CaseSpec;
use crate::error::{Result, WaringError};
use crate::linalg::{numerical_rank, CMatrix};
use crate::polycore::{monomial_basis, HomogeneousPoly, LinearForm, MultiIndex};
use crate::random::{complex_box, seeded_rng};

/// Attempts with fresh points before an ambiguous rank is reported.
pub const DEFECT_ATTEMPTS: usize = 3;

/// Generators of the affine tangent cone at `(λ^1 ℓ^{a_1}, …, λ^r ℓ^{a_r})`.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub form: LinearForm,
    pub lambdas: Vec<Complex64>,
    /// `r` vectors `(0, …, ℓ^{a_j}, …, 0)` followed by `n + 1` vectors
    /// `(λ^j a_j ℓ^{a_j − 1} x_h)_j`, as coefficient vectors of length `N`.
    pub basis: Vec<Vec<Complex64>>,
}

impl TangentFrame {
    pub fn matrix(&self) -> CMatrix {
        let cols = self.basis.first().map_or(0, Vec::len);
        CMatrix::from_fn(self.basis.len(), cols, |i, j| self.basis[i][j])
    }
}

fn times_variable(p: &HomogeneousPoly, h: usize) -> HomogeneousPoly {
    let nv = p.num_vars();
    let x = HomogeneousPoly::monomial(&MultiIndex::unit(nv, h), Complex64::new(1.0, 0.0));
    p * &x
}

pub fn tangent_frame(form: &LinearForm, lambdas: &[Complex64], case: &CaseSpec) -> TangentFrame {
    let nv = case.num_vars();
    assert_eq!(form.num_vars(), nv, "form lives in the wrong space");
    assert_eq!(lambdas.len(), case.r(), "one λ per component");
    let n_total = case.ambient_dim();
    let offsets: Vec<usize> = case
        .degrees()
        .iter()
        .scan(0, |acc, &a| {
            let o = *acc;
            *acc += monomial_basis(a, nv).len();
            Some(o)
        })
        .collect();
    let mut basis = Vec::with_capacity(case.r() + nv);
    for (j, &a) in case.degrees().iter().enumerate() {
        let mut v = vec![Complex64::new(0.0, 0.0); n_total];
        let pw = HomogeneousPoly::power_of_linear(form, a);
        v[offsets[j]..offsets[j] + pw.coeffs().len()].copy_from_slice(pw.coeffs());
        basis.push(v);
    }
    let lower: Vec<HomogeneousPoly> = case
        .degrees()
        .iter()
        .map(|&a| HomogeneousPoly::power_of_linear(form, a - 1))
        .collect();
    for h in 0..nv {
        let mut v = vec![Complex64::new(0.0, 0.0); n_total];
        for (j, &a) in case.degrees().iter().enumerate() {
            let d = times_variable(&lower[j], h).scale(lambdas[j] * f64::from(a));
            v[offsets[j]..offsets[j] + d.coeffs().len()].copy_from_slice(d.coeffs());
        }
        basis.push(v);
    }
    TangentFrame {
        form: form.clone(),
        lambdas: lambdas.to_vec(),
        basis,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectReport {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub k: usize,
    /// Numerical rank of the stacked tangent frames.
    pub dim: usize,
    /// `min(k (r + n), N)`.
    pub expected: usize,
    pub defect: usize,
    pub gap: f64,
    pub attempts: usize,
    pub confidence: &'static str,
}

/// Random points: `ℓ` and `λ` with real and imaginary parts uniform in
/// `[−1, 1]`. Drawn sequentially so the first `k` points do not depend on
/// how many are requested.
fn random_points(case: &CaseSpec, k: usize, seed: u64, attempt: u64) -> Vec<(LinearForm, Vec<Complex64>)> {
    let mut rng = seeded_rng(seed, 0x7e22 + attempt);
    (0..k)
        .map(|_| {
            let l = (0..case.num_vars()).map(|_| complex_box(&mut rng)).collect();
            let lam = (0..case.r()).map(|_| complex_box(&mut rng)).collect();
            (LinearForm::new(l), lam)
        })
        .collect()
}

/// Stacked frames with every column divided by `sqrt(multinomial)` of its
/// monomial; the column scaling does not change the rank.
pub fn tangent_span_matrix(case: &CaseSpec, points: &[(LinearForm, Vec<Complex64>)]) -> CMatrix {
    let nv = case.num_vars();
    let scale: Vec<f64> = case
        .degrees()
        .iter()
        .flat_map(|&a| {
            monomial_basis(a, nv)
                .iter()
                .map(|m| 1.0 / m.multinomial().sqrt())
                .collect::<Vec<_>>()
        })
        .collect();
    let frames: Vec<TangentFrame> = points.par_iter().map(|(l, lam)| tangent_frame(l, lam, case)).collect();
    let per = case.r() + nv;
    let mut m = CMatrix::zeros(points.len() * per, case.ambient_dim());
    for (i, frame) in frames.iter().enumerate() {
        for (a, v) in frame.basis.iter().enumerate() {
            for (c, (x, s)) in v.iter().zip(&scale).enumerate() {
                m[(i * per + a, c)] = x * *s;
            }
        }
    }
    m
}

pub fn secant_defect(case: &CaseSpec, k: usize, seed: u64) -> Result<DefectReport> {
    if k == 0 {
        return Err(WaringError::OutOfRange("k must be at least 1".into()));
    }
    let expected = (k * case.block()).min(case.ambient_dim());
    let mut last_gap = 0.0;
    for attempt in 0..DEFECT_ATTEMPTS {
        let points = random_points(case, k, seed, attempt as u64);
        let info = numerical_rank(&tangent_span_matrix(case, &points));
        if info.is_ambiguous() {
            last_gap = info.gap;
            continue;
        }
        return Ok(DefectReport {
            n: case.n(),
            degrees: case.degrees().to_vec(),
            k,
            dim: info.rank,
            expected,
            defect: expected.saturating_sub(info.rank),
            gap: info.gap,
            attempts: attempt + 1,
            confidence: "probabilistic",
        });
    }
    Err(WaringError::Inconclusive {
        attempts: DEFECT_ATTEMPTS,
        gap: last_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numerical_rank;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn binary_quadric_pair_at_x0() {
        let case = CaseSpec::new(1, &[2, 2]).unwrap();
        let frame = tangent_frame(&LinearForm::new(vec![c(1.0), c(0.0)]), &[c(1.0), c(1.0)], &case);
        assert_eq!(frame.basis.len(), 4);
        assert_eq!(numerical_rank(&frame.matrix()).rank, 3);
    }

    #[test]
    fn random_frame_on_334_spans_five() {
        let case = CaseSpec::new(2, &[3, 3, 4]).unwrap();
        let pts = random_points(&case, 1, 4, 0);
        let frame = tangent_frame(&pts[0].0, &pts[0].1, &case);
        assert_eq!(frame.matrix().shape(), (6, 35));
        assert_eq!(numerical_rank(&frame.matrix()).rank, 5);
    }

    #[test]
    fn zero_lambda_leaves_only_the_powers() {
        let case = CaseSpec::new(2, &[3, 3, 4]).unwrap();
        let pts = random_points(&case, 1, 5, 0);
        let frame = tangent_frame(&pts[0].0, &[c(0.0); 3], &case);
        assert_eq!(numerical_rank(&frame.matrix()).rank, 3);
    }

    #[test]
    fn single_point_has_dimension_r_plus_n() {
        for (n, d) in [(1, vec![2, 5]), (2, vec![3, 3, 4]), (3, vec![2, 4]), (4, vec![2; 6])] {
            let case = CaseSpec::new(n, &d).unwrap();
            let rep = secant_defect(&case, 1, 3).unwrap();
            assert_eq!(rep.dim, case.block());
            assert_eq!(rep.defect, 0);
        }
    }

    #[test]
    fn dimension_grows_monotonically_by_at_most_r_plus_n() {
        let case = CaseSpec::new(2, &[2, 2, 6]).unwrap();
        let mut prev = 0;
        for k in 1..=9 {
            let pts = random_points(&case, k, 8, 0);
            let dim = numerical_rank(&tangent_span_matrix(&case, &pts)).rank;
            assert!(dim >= prev && dim - prev <= case.block(), "k = {k}: {prev} -> {dim}");
            prev = dim;
        }
    }

    #[test]
    fn known_defects() {
        let check = |n, d: &[u32], k, want| {
            let rep = secant_defect(&CaseSpec::new(n, d).unwrap(), k, 1).unwrap();
            assert_eq!(rep.defect, want, "{d:?}");
            assert!(rep.gap >= 1e4);
        };
        check(2, &[3, 3, 4], 7, 0);
        check(3, &[2, 4], 9, 2);
        check(2, &[2, 2, 6], 8, 4);
        check(2, &[2, 2, 2, 2, 2, 2, 2, 6], 7, 7);
    }

    #[test]
    fn zero_points_rejected() {
        assert!(secant_defect(&CaseSpec::new(1, &[2, 2]).unwrap(), 0, 0).is_err());
    }
}
