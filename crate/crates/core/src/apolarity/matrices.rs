use num_complex::Complex64;

use super::quotient::{quotient_basis, quotient_pairing};
use super::{BundleKind, BundleSpec, ContractionMatrix};
use crate::combinatorics::CaseSpec;
use crate::error::{Result, WaringError};
use crate::linalg::CMatrix;
use crate::polycore::{monomial_basis, PolyVector};

fn case_of(f: &PolyVector) -> Result<CaseSpec> {
    CaseSpec::new(f.num_vars() - 1, f.degrees())
}

/// Matrix of `g ↦ (g(∂) f_1, …, g(∂) f_r)` from degree-`e` operators to
/// `⊕ Sym^{a_j − e}`. Components with `a_j < e` contribute no rows.
pub fn catalecticant(f: &PolyVector, e: u32) -> Result<ContractionMatrix> {
    let max = *f.degrees().last().expect("nonempty vector");
    if e == 0 || e > max {
        return Err(WaringError::OutOfRange(format!(
            "contraction degree {e} outside 1..={max}"
        )));
    }
    let nv = f.num_vars();
    let source = monomial_basis(e, nv);
    let rows: usize = f
        .degrees()
        .iter()
        .filter(|&&a| a >= e)
        .map(|&a| monomial_basis(a - e, nv).len())
        .sum();
    let mut m = CMatrix::zeros(rows, source.len());
    for (col, g) in source.iter().enumerate() {
        let mut row = 0;
        for part in f.parts().iter().filter(|p| p.degree() >= e) {
            let d = part.apolar_contract(g)?;
            for (i, c) in d.coeffs().iter().enumerate() {
                m[(row + i, col)] = *c;
            }
            row += d.coeffs().len();
        }
    }
    let case = case_of(f)?;
    let bundle = BundleSpec::line(e, case.n()).unwrap_or(BundleSpec {
        kind: BundleKind::LineBundle(e),
        expected_kernel_dim: 0,
        expected_points: 0,
    });
    Ok(ContractionMatrix {
        entries: m,
        source_basis: format!("Sym^{e} dual, graded-lex"),
        target_basis: format!("⊕ Sym^(a_j-{e}), graded-lex"),
        case,
        bundle,
    })
}

/// Contraction matrix attached to a bundle. For `O(e)` this is the
/// catalecticant; for `Q(e)` on the plane the entry at (target `H`, source
/// `G`) is `Σ_j ⟨f_j, det[x; G; H_j]⟩`, with `H_j` running over a basis of
/// `H^0(Q(a_j − e − 1))`.
pub fn nonabelian_matrix(f: &PolyVector, bundle: &BundleSpec) -> Result<ContractionMatrix> {
    match bundle.kind {
        BundleKind::LineBundle(e) => {
            let mut m = catalecticant(f, e)?;
            m.bundle = bundle.clone();
            Ok(m)
        }
        BundleKind::QuotientTwist(e) => {
            let incompatible = |reason: String| WaringError::IncompatibleBundle {
                bundle: bundle.name(),
                reason,
            };
            if f.num_vars() != 3 {
                return Err(incompatible("quotient twists need ternary forms".into()));
            }
            let a1 = f.degrees()[0];
            if e + 1 > a1 {
                return Err(incompatible(format!("need e ≤ a_1 − 1 = {}", i64::from(a1) - 1)));
            }
            let source = quotient_basis(e);
            let targets: Vec<_> = f.degrees().iter().map(|&a| quotient_basis(a - e - 1)).collect();
            let rows: usize = targets.iter().map(Vec::len).sum();
            let mut m = CMatrix::zeros(rows, source.len());
            for (col, g) in source.iter().enumerate() {
                let mut row = 0;
                for (part, basis) in f.parts().iter().zip(&targets) {
                    for h in basis {
                        let form = quotient_pairing(g, h);
                        let v: Complex64 = part.apolar_pairing(&form)?;
                        m[(row, col)] = v;
                        row += 1;
                    }
                }
            }
            Ok(ContractionMatrix {
                entries: m,
                source_basis: format!("H^0(Q({e})) Euler-presented"),
                target_basis: format!("⊕ H^0(Q(a_j-{}))* Euler-presented", e + 1),
                case: case_of(f)?,
                bundle: bundle.clone(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{equilibrate_rows, numerical_rank};
    use crate::polycore::{HomogeneousPoly, LinearForm, MultiIndex};
    use crate::random::{complex_gaussian_vec, seeded_rng};

    fn forward(nv: usize, degrees: &[u32], k: usize, seed: u64) -> PolyVector {
        let mut rng = seeded_rng(seed, 0);
        let forms: Vec<_> = (0..k)
            .map(|_| LinearForm::new(complex_gaussian_vec(&mut rng, nv)))
            .collect();
        let lambdas: Vec<_> = (0..k).map(|_| complex_gaussian_vec(&mut rng, degrees.len())).collect();
        PolyVector::from_summands(degrees, &forms, &lambdas).unwrap()
    }

    #[test]
    fn binary_cube_has_rank_one() {
        let f = PolyVector::new(vec![HomogeneousPoly::monomial(
            &MultiIndex(vec![3, 0]),
            Complex64::new(1.0, 0.0),
        )])
        .unwrap();
        let m = catalecticant(&f, 1).unwrap();
        assert_eq!((m.target_dim(), m.source_dim()), (3, 2));
        assert_eq!(m.rank_info().rank, 1);
    }

    #[test]
    fn catalecticant_entries_follow_derivative_convention() {
        // f = x0² x1 (binary cubic), e = 1: ∂_0 f = 2 x0 x1, ∂_1 f = x0².
        let f = PolyVector::new(vec![HomogeneousPoly::monomial(
            &MultiIndex(vec![2, 1]),
            Complex64::new(1.0, 0.0),
        )])
        .unwrap();
        let m = catalecticant(&f, 1).unwrap();
        let col0: Vec<f64> = m.entries.column(0).iter().map(|c| c.re).collect();
        let col1: Vec<f64> = m.entries.column(1).iter().map(|c| c.re).collect();
        assert_eq!(col0, vec![0.0, 2.0, 0.0]);
        assert_eq!(col1, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn ternary_cubic_pencils_of_border_rank_five_have_singular_catalecticant() {
        let f5 = forward(3, &[3, 3], 5, 1);
        let m = catalecticant(&f5, 2).unwrap();
        assert_eq!((m.target_dim(), m.source_dim()), (6, 6));
        let eq = equilibrate_rows(&m.entries);
        assert!(eq.determinant().norm() < 1e-8);

        let f6 = forward(3, &[3, 3], 6, 2);
        let info = catalecticant(&f6, 2).unwrap().rank_info();
        assert_eq!(info.rank, 6);
    }

    #[test]
    fn degree_out_of_range() {
        let f = forward(3, &[3, 3], 2, 3);
        assert!(matches!(catalecticant(&f, 0), Err(WaringError::OutOfRange(_))));
        assert!(matches!(catalecticant(&f, 4), Err(WaringError::OutOfRange(_))));
    }

    #[test]
    fn quotient_matrix_shape_and_rank_for_334() {
        let mut rng = seeded_rng(4, 0);
        let flat = complex_gaussian_vec(&mut rng, 35);
        let f = PolyVector::from_flat(3, &[3, 3, 4], &flat).unwrap();
        let m = nonabelian_matrix(&f, &BundleSpec::quotient(2)).unwrap();
        assert_eq!(m.source_dim(), 15);
        assert_eq!(m.target_dim(), 14);
        let (info, ker) = m.kernel();
        assert_eq!(info.rank, 14);
        assert_eq!(ker.len(), 1);
    }

    #[test]
    fn rank_is_bounded_by_summands_times_bundle_rank() {
        for k in 1..=7 {
            let f = forward(3, &[3, 3, 4], k, 10 + k as u64);
            let q = nonabelian_matrix(&f, &BundleSpec::quotient(2)).unwrap();
            let rank = q.rank_info().rank;
            assert!(rank <= 2 * k, "k = {k}: rank {rank}");
            for e in 1..=3 {
                let c = catalecticant(&f, e).unwrap();
                assert!(c.rank_info().rank <= k);
            }
        }
        let f = forward(3, &[3, 3, 4], 7, 30);
        assert_eq!(
            numerical_rank(&nonabelian_matrix(&f, &BundleSpec::quotient(2)).unwrap().entries).rank,
            14
        );
    }

    #[test]
    fn incompatible_quotient_twist() {
        let f = forward(3, &[3, 3, 4], 3, 5);
        assert!(nonabelian_matrix(&f, &BundleSpec::quotient(3)).is_err());
        let g = forward(2, &[3, 3], 3, 6);
        assert!(nonabelian_matrix(&g, &BundleSpec::quotient(1)).is_err());
    }
}
