use num_complex::Complex64;
use serde::Serialize;

use super::decomposition::{powers, WaringDecomposition};
use super::locus::{base_locus, KernelSections};
use super::matrices::nonabelian_matrix;
use super::quotient::{quotient_basis, QuotientSection};
use super::{BundleKind, BundleSpec};
use crate::combinatorics::CaseSpec;
use crate::error::{Result, WaringError};
use crate::linalg::{least_squares, CMatrix, RankInfo};
use crate::polycore::{HomogeneousPoly, LinearForm, PolyVector};

/// Condition number above which the λ-solve is rejected.
pub const LAMBDA_COND_LIMIT: f64 = 1e10;

/// Intermediate quantities of one apolarity run.
#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub bundle: String,
    /// `(rows, cols)` of the contraction matrix.
    pub matrix_shape: (usize, usize),
    pub rank: RankInfo,
    pub kernel_dim: usize,
    pub points: Vec<Vec<[f64; 2]>>,
    pub decomposition: WaringDecomposition,
}

pub fn decompose(f: &PolyVector, bundle: &BundleSpec, seed: u64) -> Result<WaringDecomposition> {
    decompose_with_report(f, bundle, seed).map(|r| r.decomposition)
}

pub fn decompose_with_report(f: &PolyVector, bundle: &BundleSpec, seed: u64) -> Result<DecomposeReport> {
    let case = CaseSpec::new(f.num_vars() - 1, f.degrees())?;
    let k = case.require_k()?;
    let matrix = nonabelian_matrix(f, bundle)?;
    let (rank, kernel) = matrix.kernel();
    if kernel.len() != bundle.expected_kernel_dim {
        return Err(WaringError::WrongKernelDim {
            expected: bundle.expected_kernel_dim,
            found: kernel.len(),
        });
    }
    let sections = match bundle.kind {
        BundleKind::LineBundle(e) => KernelSections::Forms(
            kernel
                .iter()
                .map(|v| HomogeneousPoly::new(f.num_vars(), e, v.clone()))
                .collect::<Result<_>>()?,
        ),
        BundleKind::QuotientTwist(e) => {
            let basis = quotient_basis(e);
            KernelSections::Quotient(
                kernel
                    .iter()
                    .map(|v| {
                        basis
                            .iter()
                            .zip(v)
                            .fold(QuotientSection::zero(e), |acc, (s, w)| acc.add(&s.scale(*w)))
                    })
                    .collect(),
            )
        }
    };
    let points = base_locus(&sections, bundle, seed)?;
    if points.len() != k {
        return Err(WaringError::MissingPoints {
            expected: k,
            found: points.len(),
        });
    }
    let forms: Vec<LinearForm> = points.iter().map(|p| LinearForm::new(p.clone())).collect();
    let lambdas = solve_lambdas(f, &forms)?;
    let decomposition = WaringDecomposition::new(f.degrees().to_vec(), forms, lambdas)
        .with_residual_against(f)
        .canonical();
    Ok(DecomposeReport {
        bundle: bundle.name(),
        matrix_shape: (matrix.target_dim(), matrix.source_dim()),
        rank,
        kernel_dim: kernel.len(),
        points: points
            .iter()
            .map(|p| p.iter().map(|c| [c.re, c.im]).collect())
            .collect(),
        decomposition,
    })
}

/// One least-squares solve per component: `f_j = Σ_i λ_i^j ℓ_i^{a_j}`.
/// Returns the `k × r` matrix of λ's.
pub(crate) fn solve_lambdas(f: &PolyVector, forms: &[LinearForm]) -> Result<Vec<Vec<Complex64>>> {
    let k = forms.len();
    let mut lambdas = vec![vec![Complex64::new(0.0, 0.0); f.len()]; k];
    for (j, part) in f.parts().iter().enumerate() {
        let cols = powers(forms, part.degree());
        let mut a = CMatrix::zeros(part.coeffs().len(), k);
        for (i, p) in cols.iter().enumerate() {
            for (row, c) in p.coeffs().iter().enumerate() {
                a[(row, i)] = *c;
            }
        }
        let (x, cond) = least_squares(&a, part.coeffs());
        if cond > LAMBDA_COND_LIMIT {
            return Err(WaringError::IllConditioned(cond));
        }
        for (i, v) in x.into_iter().enumerate() {
            lambdas[i][j] = v;
        }
    }
    Ok(lambdas)
}
