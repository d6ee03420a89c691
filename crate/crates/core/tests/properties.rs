use num_complex::Complex64;
use proptest::prelude::*;
use waring_core::apolarity::{catalecticant, quotient_pairing, QuotientSection, WaringDecomposition};
use waring_core::combinatorics::{binomial, form_space_dim};
use waring_core::linalg::{numerical_rank, CMatrix};
use waring_core::polycore::monomial_basis;
use waring_core::{secant_defect, CaseSpec, HomogeneousPoly, LinearForm, PolyVector};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex(), len)
}

fn poly(num_vars: usize, degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    complex_vec(form_space_dim(degree, num_vars - 1))
        .prop_map(move |c| HomogeneousPoly::new(num_vars, degree, c).unwrap())
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_positions_invert_indexing(nv in 1usize..5, d in 0u32..7) {
        let basis = monomial_basis(d, nv);
        prop_assert_eq!(basis.len() as u64, binomial(u64::from(d) + nv as u64 - 1, nv as u64 - 1));
        for (i, m) in basis.iter().enumerate() {
            prop_assert_eq!(m.degree(), d);
            prop_assert_eq!(basis.position(m), Some(i));
        }
    }

    #[test]
    fn contraction_is_linear_in_the_form(
        (f, g, op) in (1u32..5).prop_flat_map(|d| (poly(3, d + 2), poly(3, d + 2), poly(3, d))),
        a in complex(),
        b in complex(),
    ) {
        let combo = &f.scale(a) + &g.scale(b);
        let lhs = combo.contract_by(&op).unwrap();
        let fa = f.contract_by(&op).unwrap().scale(a);
        let gb = g.contract_by(&op).unwrap().scale(b);
        let rhs = &fa + &gb;
        prop_assert!(max_diff(lhs.coeffs(), rhs.coeffs()) < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn pairing_with_a_power_evaluates(l in complex_vec(3), p in poly(3, 4)) {
        let power = HomogeneousPoly::power_of_linear(&LinearForm::new(l.clone()), 4);
        let got = power.apolar_pairing(&p).unwrap();
        let want = p.eval(&l) * 24.0;
        prop_assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()));
    }

    #[test]
    fn flat_and_json_round_trips(parts in (poly(3, 2), poly(3, 3), poly(3, 3))) {
        let f = PolyVector::new(vec![parts.0, parts.1, parts.2]).unwrap();
        let flat: Vec<Complex64> = f.parts().iter().flat_map(|p| p.coeffs().to_vec()).collect();
        let back = PolyVector::from_flat(3, f.degrees(), &flat).unwrap();
        prop_assert_eq!(&back, &f);
        let text = serde_json::to_string(&f).unwrap();
        let parsed: PolyVector = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn rank_is_subadditive(
        a in complex_vec(6 * 2), b in complex_vec(2 * 5),
        c in complex_vec(6 * 3), d in complex_vec(3 * 5),
    ) {
        let x = CMatrix::from_vec(6, 2, a) * CMatrix::from_vec(2, 5, b);
        let y = CMatrix::from_vec(6, 3, c) * CMatrix::from_vec(3, 5, d);
        let rx = numerical_rank(&x).rank;
        let ry = numerical_rank(&y).rank;
        prop_assert!(rx <= 2 && ry <= 3);
        prop_assert!(numerical_rank(&(&x + &y)).rank <= rx + ry);
    }

    #[test]
    fn catalecticant_rank_is_bounded_by_the_number_of_summands(
        k in 1usize..4,
        seed_forms in complex_vec(3 * 3),
        seed_lambdas in complex_vec(3 * 2),
    ) {
        let forms: Vec<LinearForm> = seed_forms.chunks(3).take(k).map(|c| LinearForm::new(c.to_vec())).collect();
        let lambdas: Vec<Vec<Complex64>> = seed_lambdas.chunks(2).take(k).map(|c| c.to_vec()).collect();
        let f = PolyVector::from_summands(&[4, 4], &forms, &lambdas).unwrap();
        let m = catalecticant(&f, 2).unwrap();
        prop_assert!(m.rank_info().rank <= k);
    }

    #[test]
    fn euler_sections_are_invisible(
        g in (poly(3, 2), poly(3, 2), poly(3, 2)),
        s in (poly(3, 1), poly(3, 1), poly(3, 1)),
        h in poly(3, 1),
    ) {
        let g = QuotientSection::new([g.0, g.1, g.2]).unwrap();
        let s = QuotientSection::new([s.0, s.1, s.2]).unwrap();
        let shifted = g.add(&QuotientSection::euler(&h));
        let a = quotient_pairing(&g, &s);
        let b = quotient_pairing(&shifted, &s);
        prop_assert!(max_diff(a.coeffs(), b.coeffs()) < 1e-10);
        let ra = g.reduced();
        let rb = shifted.reduced();
        for v in 0..3 {
            prop_assert!(max_diff(ra.lift()[v].coeffs(), rb.lift()[v].coeffs()) < 1e-10);
        }
    }

    #[test]
    fn permuted_and_rescaled_decompositions_coincide(
        forms in complex_vec(4 * 2),
        lambdas in complex_vec(4 * 3),
        scales in complex_vec(4),
        shift in 0usize..4,
    ) {
        prop_assume!(scales.iter().all(|c| c.norm() > 0.1));
        prop_assume!(forms.chunks(2).all(|c| c[0].norm() + c[1].norm() > 0.1));
        let degrees = vec![2, 3, 3];
        let fs: Vec<LinearForm> = forms.chunks(2).map(|c| LinearForm::new(c.to_vec())).collect();
        let ls: Vec<Vec<Complex64>> = lambdas.chunks(3).map(|c| c.to_vec()).collect();
        let a = WaringDecomposition::new(degrees.clone(), fs.clone(), ls.clone());
        let mut gf = Vec::new();
        let mut gl = Vec::new();
        for i in 0..4 {
            let j = (i + shift) % 4;
            let c = scales[j];
            gf.push(LinearForm::new(fs[j].coeffs().iter().map(|x| x * c).collect()));
            gl.push(ls[j].iter().zip(&degrees).map(|(l, &d)| l / c.powu(d)).collect());
        }
        let b = WaringDecomposition::new(degrees, gf, gl);
        prop_assert!(a.same_as(&b, 1e-7));
        prop_assert!(b.same_as(&a, 1e-7));
        prop_assert!(a.reconstruction_error(&b.reconstruct()) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn defect_reports_depend_only_on_the_seed(seed in any::<u64>()) {
        let case = CaseSpec::new(2, &[2, 2, 4, 4]).unwrap();
        let a = secant_defect(&case, 7, seed).unwrap();
        let b = secant_defect(&case, 7, seed).unwrap();
        prop_assert_eq!(a.dim, b.dim);
        prop_assert_eq!(a.defect, 2);
        prop_assert_eq!(a.gap.to_bits(), b.gap.to_bits());
    }
}
