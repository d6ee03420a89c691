//! Numerical rank, kernels and least squares on small dense complex
//! matrices. Rank decisions are relative to the largest singular value after
//! row equilibration, and always come with the singular-value gap.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

pub type CMatrix = DMatrix<Complex64>;

/// Relative singular-value threshold shared by every rank decision.
pub const RANK_TOL: f64 = 1e-10;

/// Gap below which a rank decision is called ambiguous.
pub const AMBIGUOUS_GAP: f64 = 1e2;

#[derive(Debug, Clone, Serialize)]
pub struct RankInfo {
    pub rank: usize,
    /// Singular values of the equilibrated matrix, descending.
    pub singular_values: Vec<f64>,
    /// `σ_rank / σ_{rank+1}`; infinite when there is no next value or it is
    /// exactly zero.
    pub gap: f64,
}

impl RankInfo {
    pub fn is_ambiguous(&self) -> bool {
        self.gap < AMBIGUOUS_GAP
    }

    fn from_values(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
        let max = values.first().copied().unwrap_or(0.0);
        let rank = if max == 0.0 {
            0
        } else {
            values.iter().take_while(|&&s| s > tol * max).count()
        };
        let gap = match (rank.checked_sub(1).map(|i| values[i]), values.get(rank)) {
            (Some(hi), Some(&lo)) if lo > 0.0 => hi / lo,
            _ => f64::INFINITY,
        };
        RankInfo {
            rank,
            singular_values: values,
            gap,
        }
    }
}

/// Scale every nonzero row to unit Euclidean norm.
pub fn equilibrate_rows(m: &CMatrix) -> CMatrix {
    let mut out = m.clone();
    for mut row in out.row_iter_mut() {
        let norm = row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            row /= Complex64::new(norm, 0.0);
        }
    }
    out
}

pub fn numerical_rank(m: &CMatrix) -> RankInfo {
    numerical_rank_with(m, RANK_TOL)
}

pub fn numerical_rank_with(m: &CMatrix, tol: f64) -> RankInfo {
    if m.is_empty() {
        return RankInfo {
            rank: 0,
            singular_values: Vec::new(),
            gap: f64::INFINITY,
        };
    }
    let eq = equilibrate_rows(m);
    let values = eq.singular_values().iter().copied().collect();
    RankInfo::from_values(values, tol)
}

/// Numerical rank and an orthonormal basis of the right kernel.
pub fn kernel(m: &CMatrix) -> (RankInfo, Vec<Vec<Complex64>>) {
    let cols = m.ncols();
    let eq = equilibrate_rows(m);
    // Pad to at least square so the SVD returns a full set of right
    // singular vectors.
    let rows = eq.nrows().max(cols);
    let mut padded = CMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (eq.nrows(), cols)).copy_from(&eq);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .expect("finite singular values")
    });
    let values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    // Report the rank against the unpadded matrix's singular values.
    let info = RankInfo::from_values(values[..eq.nrows().min(cols)].to_vec(), RANK_TOL);
    let basis = order[info.rank..]
        .iter()
        .map(|&i| v_t.row(i).iter().map(|c| c.conj()).collect())
        .collect();
    (info, basis)
}

pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Least-squares solution of `a x = b` and the condition number of `a`.
pub fn least_squares(a: &CMatrix, b: &[Complex64]) -> (Vec<Complex64>, f64) {
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let max = sv.max();
    let min = sv.min();
    let cond = if min == 0.0 { f64::INFINITY } else { max / min };
    let rhs = nalgebra::DVector::from_column_slice(b);
    let x = svd.solve(&rhs, max * 1e-15).expect("both factors were computed");
    (x.iter().copied().collect(), cond)
}

/// Solve a square system by LU; `None` if singular.
pub fn lu_solve(a: &CMatrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    let rhs = nalgebra::DVector::from_column_slice(b);
    a.clone().lu().solve(&rhs).map(|x| x.iter().copied().collect())
}

/// Eigenvalues of a square complex matrix.
pub fn eigenvalues(m: &CMatrix) -> Option<Vec<Complex64>> {
    m.clone().schur().eigenvalues().map(|v| v.iter().copied().collect())
}
