use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use crate::polycore::{HomogeneousPoly, LinearForm, PolyVector};

/// Tolerance used when comparing coordinates of canonical decompositions.
pub const CANONICAL_TOL: f64 = 1e-7;

/// `f_j = Σ_i λ_i^j ℓ_i^{a_j}`: `k` linear forms and a `k × r` matrix of
/// scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct WaringDecomposition {
    degrees: Vec<u32>,
    forms: Vec<LinearForm>,
    lambdas: Vec<Vec<Complex64>>,
    /// Max over components of `‖f_j − Σ λ ℓ^{a_j}‖ / ‖f_j‖`, when known.
    pub residual: f64,
}

#[derive(Serialize)]
struct DecompositionJson {
    forms: Vec<Vec<[f64; 2]>>,
    lambdas: Vec<Vec<[f64; 2]>>,
    residual: f64,
}

impl Serialize for WaringDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pair = |c: &Complex64| [c.re, c.im];
        DecompositionJson {
            forms: self
                .forms
                .iter()
                .map(|l| l.coeffs().iter().map(pair).collect())
                .collect(),
            lambdas: self.lambdas.iter().map(|row| row.iter().map(pair).collect()).collect(),
            residual: self.residual,
        }
        .serialize(s)
    }
}

impl WaringDecomposition {
    pub fn new(degrees: Vec<u32>, forms: Vec<LinearForm>, lambdas: Vec<Vec<Complex64>>) -> Self {
        assert_eq!(forms.len(), lambdas.len(), "one lambda row per form");
        assert!(
            lambdas.iter().all(|row| row.len() == degrees.len()),
            "one lambda per component"
        );
        WaringDecomposition {
            degrees,
            forms,
            lambdas,
            residual: f64::NAN,
        }
    }

    pub fn k(&self) -> usize {
        self.forms.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn lambdas(&self) -> &[Vec<Complex64>] {
        &self.lambdas
    }

    /// Expand back into the polynomial vector.
    pub fn reconstruct(&self) -> PolyVector {
        PolyVector::from_summands(&self.degrees, &self.forms, &self.lambdas)
            .expect("decomposition shapes are consistent")
    }

    /// Max relative reconstruction error against `f`.
    pub fn reconstruction_error(&self, f: &PolyVector) -> f64 {
        let g = self.reconstruct();
        f.parts()
            .iter()
            .zip(g.parts())
            .map(|(fj, gj)| (fj - gj).norm() / fj.norm().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }

    pub fn with_residual_against(mut self, f: &PolyVector) -> Self {
        self.residual = self.reconstruction_error(f);
        self
    }

    /// Rescale every form so its largest-modulus coordinate is exactly 1,
    /// absorbing the scale into the λ's, then sort the summands.
    pub fn canonical(&self) -> WaringDecomposition {
        let mut summands: Vec<(LinearForm, Vec<Complex64>)> = self
            .forms
            .iter()
            .zip(&self.lambdas)
            .map(|(form, lam)| normalize_summand(form, lam, &self.degrees))
            .collect();
        summands.sort_by(|a, b| compare_forms(&a.0, &b.0));
        let (forms, lambdas) = summands.into_iter().unzip();
        WaringDecomposition {
            degrees: self.degrees.clone(),
            forms,
            lambdas,
            residual: self.residual,
        }
    }

    /// Equal up to summand order and the gauge `ℓ ↦ cℓ, λ^j ↦ c^{-a_j} λ^j`,
    /// coordinatewise within `tol`.
    pub fn same_as(&self, other: &WaringDecomposition, tol: f64) -> bool {
        if self.k() != other.k() || self.degrees != other.degrees {
            return false;
        }
        let mut used = vec![false; other.k()];
        for (form, lam) in self.forms.iter().zip(&self.lambdas) {
            let hit = (0..other.k())
                .find(|&i| !used[i] && same_summand(form, lam, &other.forms[i], &other.lambdas[i], &self.degrees, tol));
            match hit {
                Some(i) => used[i] = true,
                None => return false,
            }
        }
        true
    }

    /// Largest coordinate difference against `other` after matching
    /// summands; `None` if no matching at tolerance `loose` exists.
    pub fn distance(&self, other: &WaringDecomposition, loose: f64) -> Option<f64> {
        if !self.same_as(other, loose) {
            return None;
        }
        let a = self.canonical();
        let mut worst: f64 = 0.0;
        for (form, lam) in a.forms.iter().zip(&a.lambdas) {
            let p = form.pivot();
            let best = other
                .forms
                .iter()
                .zip(&other.lambdas)
                .filter_map(|(f2, l2)| summand_gap(form, lam, f2, l2, p, &self.degrees))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        Some(worst)
    }
}

fn normalize_summand(form: &LinearForm, lam: &[Complex64], degrees: &[u32]) -> (LinearForm, Vec<Complex64>) {
    let c = form.coeffs()[form.pivot()];
    let mut normalized = form.scale(c.inv());
    let p = form.pivot();
    let mut coeffs = normalized.coeffs().to_vec();
    coeffs[p] = Complex64::new(1.0, 0.0);
    normalized = LinearForm::new(coeffs);
    let lam = lam.iter().zip(degrees).map(|(l, &a)| l * c.powu(a)).collect();
    (normalized, lam)
}

/// Coordinate gap between two summands after normalizing both at pivot `p`.
fn summand_gap(
    a: &LinearForm,
    la: &[Complex64],
    b: &LinearForm,
    lb: &[Complex64],
    p: usize,
    degrees: &[u32],
) -> Option<f64> {
    let ca = a.coeffs()[p];
    let cb = b.coeffs()[p];
    if cb.norm() < 1e-12 * b.norm() || ca.norm() < 1e-12 * a.norm() {
        return None;
    }
    let mut gap: f64 = 0.0;
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        gap = gap.max((x / ca - y / cb).norm());
    }
    for ((x, y), &deg) in la.iter().zip(lb).zip(degrees) {
        let xa = x * ca.powu(deg);
        let yb = y * cb.powu(deg);
        gap = gap.max((xa - yb).norm() / xa.norm().max(1.0));
    }
    Some(gap)
}

fn same_summand(a: &LinearForm, la: &[Complex64], b: &LinearForm, lb: &[Complex64], degrees: &[u32], tol: f64) -> bool {
    summand_gap(a, la, b, lb, a.pivot(), degrees).is_some_and(|g| g <= tol)
}

fn compare_scalar(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= CANONICAL_TOL {
        Ordering::Equal
    } else {
        a.partial_cmp(&b).unwrap_or(Ordering::Equal)
    }
}

/// Lexicographic on `(Re, Im)` of each coordinate, with tolerance.
fn compare_forms(a: &LinearForm, b: &LinearForm) -> Ordering {
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        let ord = compare_scalar(x.re, y.re).then(compare_scalar(x.im, y.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Coefficient vectors of `ℓ^a` for a list of forms.
pub(crate) fn powers(forms: &[LinearForm], a: u32) -> Vec<HomogeneousPoly> {
    forms.iter().map(|l| HomogeneousPoly::power_of_linear(l, a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_gaussian_vec, seeded_rng};

    fn sample(seed: u64, k: usize, degrees: &[u32]) -> WaringDecomposition {
        let mut rng = seeded_rng(seed, 0);
        let forms = (0..k)
            .map(|_| LinearForm::new(complex_gaussian_vec(&mut rng, 3)))
            .collect();
        let lambdas = (0..k).map(|_| complex_gaussian_vec(&mut rng, degrees.len())).collect();
        WaringDecomposition::new(degrees.to_vec(), forms, lambdas)
    }

    #[test]
    fn canonical_form_preserves_the_vector() {
        let d = sample(1, 4, &[2, 3]);
        let f = d.reconstruct();
        let c = d.canonical();
        assert!(c.reconstruction_error(&f) < 1e-12);
        for form in c.forms() {
            assert_eq!(form.coeffs()[form.pivot()], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn order_and_gauge_do_not_matter() {
        let d = sample(2, 5, &[3, 3, 4]);
        let mut forms = d.forms().to_vec();
        let mut lambdas = d.lambdas().to_vec();
        forms.reverse();
        lambdas.reverse();
        let c = Complex64::new(0.3, -1.7);
        forms[1] = forms[1].scale(c);
        lambdas[1] = lambdas[1]
            .iter()
            .zip(d.degrees())
            .map(|(l, &a)| l / c.powu(a))
            .collect();
        let other = WaringDecomposition::new(d.degrees().to_vec(), forms, lambdas);
        assert!(d.same_as(&other, 1e-9));
        assert!(d.canonical().same_as(&other.canonical(), 1e-9));
        let a = d.canonical();
        let b = other.canonical();
        for (x, y) in a.forms().iter().zip(b.forms()) {
            for (u, v) in x.coeffs().iter().zip(y.coeffs()) {
                assert!((u - v).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn different_decompositions_differ() {
        let a = sample(3, 4, &[2, 3]);
        let b = sample(4, 4, &[2, 3]);
        assert!(!a.same_as(&b, 1e-7));
        assert!(a.distance(&b, 1e-7).is_none());
        assert!(a.distance(&a, 1e-7).unwrap() < 1e-12);
    }

    #[test]
    fn json_layout() {
        let d = sample(5, 2, &[2]);
        let v: serde_json::Value = serde_json::to_value(&d).unwrap();
        assert_eq!(v["forms"].as_array().unwrap().len(), 2);
        assert_eq!(v["forms"][0].as_array().unwrap().len(), 3);
        assert_eq!(v["lambdas"][1].as_array().unwrap().len(), 1);
        assert!(v.get("residual").is_some());
    }
}
