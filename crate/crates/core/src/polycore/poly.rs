use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::{monomial_basis, MonomialBasis, MultiIndex};
use crate::error::{Result, WaringError};

/// A degree-d homogeneous form in `num_vars` complex variables, stored as a
/// dense coefficient vector in graded-lex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct HomogeneousPoly {
    num_vars: usize,
    degree: u32,
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: u32,
    num_vars: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<PolyJson> for HomogeneousPoly {
    type Error = WaringError;

    fn try_from(j: PolyJson) -> Result<Self> {
        let coeffs = j.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
        HomogeneousPoly::new(j.num_vars, j.degree, coeffs)
    }
}

impl From<HomogeneousPoly> for PolyJson {
    fn from(p: HomogeneousPoly) -> Self {
        PolyJson {
            degree: p.degree,
            num_vars: p.num_vars,
            coeffs: p.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl HomogeneousPoly {
    pub fn new(num_vars: usize, degree: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if num_vars == 0 {
            return Err(WaringError::ShapeMismatch("a form needs at least one variable".into()));
        }
        let expected = monomial_basis(degree, num_vars).len();
        if coeffs.len() != expected {
            return Err(WaringError::ShapeMismatch(format!(
                "degree {degree} form in {num_vars} variables needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(HomogeneousPoly {
            num_vars,
            degree,
            coeffs,
        })
    }

    pub fn zero(num_vars: usize, degree: u32) -> Self {
        let len = monomial_basis(degree, num_vars).len();
        HomogeneousPoly {
            num_vars,
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// The monomial `c · x^α`.
    pub fn monomial(exponents: &MultiIndex, c: Complex64) -> Self {
        let mut p = HomogeneousPoly::zero(exponents.num_vars(), exponents.degree());
        let pos = p.basis().position(exponents).expect("monomial is in its own basis");
        p.coeffs[pos] = c;
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn basis(&self) -> Arc<MonomialBasis> {
        monomial_basis(self.degree, self.num_vars)
    }

    pub fn coeff(&self, m: &MultiIndex) -> Complex64 {
        self.basis().position(m).map(|i| self.coeffs[i]).unwrap_or_default()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() <= tol)
    }

    fn same_shape(&self, other: &HomogeneousPoly) -> bool {
        self.num_vars == other.num_vars && self.degree == other.degree
    }

    pub fn scale(&self, s: Complex64) -> HomogeneousPoly {
        HomogeneousPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Evaluate at a point of `C^{num_vars}`.
    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.num_vars, "point has the wrong length");
        let powers = power_table(x, self.degree);
        self.basis()
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| c * monomial_value(&powers, m))
            .sum()
    }

    /// Value and gradient at `x`.
    pub fn eval_with_gradient(&self, x: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        assert_eq!(x.len(), self.num_vars, "point has the wrong length");
        let powers = power_table(x, self.degree);
        let zero = Complex64::new(0.0, 0.0);
        let mut value = zero;
        let mut grad = vec![zero; self.num_vars];
        for (m, c) in self.basis().iter().zip(&self.coeffs) {
            if *c == zero {
                continue;
            }
            value += c * monomial_value(&powers, m);
            for (h, g) in grad.iter_mut().enumerate() {
                let e = m.0[h];
                if e == 0 {
                    continue;
                }
                let mut term = c * f64::from(e);
                for (v, &ev) in m.0.iter().enumerate() {
                    let p = if v == h { ev - 1 } else { ev };
                    term *= powers[v][p as usize];
                }
                *g += term;
            }
        }
        (value, grad)
    }

    /// `ℓ^d` for the linear form `ℓ`; the coefficient on `x^α` is
    /// `multinomial(d; α) · Π c_h^{α_h}`.
    pub fn power_of_linear(form: &LinearForm, degree: u32) -> HomogeneousPoly {
        let nv = form.num_vars();
        let basis = monomial_basis(degree, nv);
        let powers = power_table(form.coeffs(), degree);
        let coeffs = basis
            .iter()
            .map(|m| monomial_value(&powers, m) * m.multinomial())
            .collect();
        HomogeneousPoly {
            num_vars: nv,
            degree,
            coeffs,
        }
    }

    /// The derivative `∂^g f`: `∂^α x^β = β!/(β−α)! x^{β−α}` when `α ≤ β`,
    /// zero otherwise.
    pub fn apolar_contract(&self, g: &MultiIndex) -> Result<HomogeneousPoly> {
        if g.num_vars() != self.num_vars {
            return Err(WaringError::ShapeMismatch(format!(
                "operator has {} variables, form has {}",
                g.num_vars(),
                self.num_vars
            )));
        }
        let e = g.degree();
        if e > self.degree {
            return Err(WaringError::DegreeMismatch(format!(
                "cannot contract a degree {} form by a degree {e} operator",
                self.degree
            )));
        }
        let mut out = HomogeneousPoly::zero(self.num_vars, self.degree - e);
        let target = out.basis();
        for (i, gamma) in target.iter().enumerate() {
            let beta = gamma.add(g);
            let c = self.coeff(&beta);
            out.coeffs[i] = c * (beta.factorial() / gamma.factorial());
        }
        Ok(out)
    }

    /// `g(∂) f` for a full dual form `g` of degree at most `deg f`.
    pub fn contract_by(&self, g: &HomogeneousPoly) -> Result<HomogeneousPoly> {
        if g.num_vars != self.num_vars {
            return Err(WaringError::ShapeMismatch(
                "operator and form differ in variable count".into(),
            ));
        }
        if g.degree > self.degree {
            return Err(WaringError::DegreeMismatch(format!(
                "cannot contract a degree {} form by a degree {} operator",
                self.degree, g.degree
            )));
        }
        let mut out = HomogeneousPoly::zero(self.num_vars, self.degree - g.degree);
        for (m, c) in g.basis().iter().zip(&g.coeffs) {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let d = self.apolar_contract(m)?;
            for (o, v) in out.coeffs.iter_mut().zip(&d.coeffs) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// Apolar pairing of two forms of the same degree:
    /// `⟨f, p⟩ = p(∂) f = Σ_α f_α p_α α!`. For `f = ℓ^d` this is `d! · p(ℓ)`.
    pub fn apolar_pairing(&self, p: &HomogeneousPoly) -> Result<Complex64> {
        if !self.same_shape(p) {
            return Err(WaringError::DegreeMismatch(
                "apolar pairing needs forms of equal degree and variable count".into(),
            ));
        }
        Ok(self
            .basis()
            .iter()
            .zip(self.coeffs.iter().zip(&p.coeffs))
            .map(|(m, (a, b))| a * b * m.factorial())
            .sum())
    }

    /// `p(M x)` where `(M x)_h = Σ_j m[h][j] x_j`.
    pub fn linear_substitution(&self, m: &[Vec<Complex64>]) -> HomogeneousPoly {
        let nv = self.num_vars;
        assert_eq!(m.len(), nv, "substitution matrix has the wrong size");
        let images: Vec<HomogeneousPoly> = m
            .iter()
            .map(|row| {
                let form = LinearForm::new(row.clone());
                HomogeneousPoly::power_of_linear(&form, 1)
            })
            .collect();
        let mut out = HomogeneousPoly::zero(nv, self.degree);
        for (mono, c) in self.basis().iter().zip(&self.coeffs) {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let mut term = HomogeneousPoly::constant(nv, *c);
            for (h, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[h];
                }
            }
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                *o += t;
            }
        }
        out
    }

    pub fn constant(num_vars: usize, c: Complex64) -> HomogeneousPoly {
        HomogeneousPoly {
            num_vars,
            degree: 0,
            coeffs: vec![c],
        }
    }
}

/// `powers[v][e] = x_v^e` for `e ≤ degree`.
fn power_table(x: &[Complex64], degree: u32) -> Vec<Vec<Complex64>> {
    x.iter()
        .map(|&xv| {
            let mut row = Vec::with_capacity(degree as usize + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=degree {
                row.push(acc);
                acc *= xv;
            }
            row
        })
        .collect()
}

fn monomial_value(powers: &[Vec<Complex64>], m: &MultiIndex) -> Complex64 {
    m.0.iter().enumerate().map(|(v, &e)| powers[v][e as usize]).product()
}

impl Add for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn add(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        assert!(self.same_shape(rhs), "adding forms of different shape");
        HomogeneousPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn sub(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        assert!(self.same_shape(rhs), "subtracting forms of different shape");
        HomogeneousPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn neg(self) -> HomogeneousPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn mul(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "multiplying forms in different rings");
        let mut out = HomogeneousPoly::zero(self.num_vars, self.degree + rhs.degree);
        let target = out.basis();
        let zero = Complex64::new(0.0, 0.0);
        for (ma, ca) in self.basis().iter().zip(&self.coeffs) {
            if *ca == zero {
                continue;
            }
            for (mb, cb) in rhs.basis().iter().zip(&rhs.coeffs) {
                if *cb == zero {
                    continue;
                }
                let pos = target.position(&ma.add(mb)).expect("product monomial");
                out.coeffs[pos] += ca * cb;
            }
        }
        out
    }
}

/// `ℓ = c_0 x_0 + … + c_n x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm {
    coeffs: Vec<Complex64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        LinearForm { coeffs }
    }

    /// The chart `x_0 + Σ l_h x_h`.
    pub fn affine(tail: &[Complex64]) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(Complex64::new(1.0, 0.0));
        coeffs.extend_from_slice(tail);
        LinearForm { coeffs }
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: Complex64) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// True when `c_0 = 1` exactly.
    pub fn is_affine_normalized(&self) -> bool {
        self.coeffs.first() == Some(&Complex64::new(1.0, 0.0))
    }

    /// Rescale so that `c_0 = 1`; `None` if `c_0 = 0`.
    pub fn affine_normalized(&self) -> Option<LinearForm> {
        let c0 = *self.coeffs.first()?;
        if c0.norm_sqr() == 0.0 {
            return None;
        }
        let mut out = self.scale(c0.inv());
        out.coeffs[0] = Complex64::new(1.0, 0.0);
        Some(out)
    }

    /// Index of the coordinate of largest modulus (first one on ties).
    pub fn pivot(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.norm() > self.coeffs[best].norm() {
                best = i;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_gaussian_vec, seeded_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    fn random_poly(nv: usize, d: u32, seed: u64) -> HomogeneousPoly {
        let mut rng = seeded_rng(seed, 0);
        let len = monomial_basis(d, nv).len();
        HomogeneousPoly::new(nv, d, complex_gaussian_vec(&mut rng, len)).unwrap()
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!(HomogeneousPoly::new(3, 2, vec![c(1.0, 0.0); 5]).is_err());
    }

    #[test]
    fn eval_examples() {
        let x0_cubed = HomogeneousPoly::monomial(&MultiIndex(vec![3, 0, 0]), c(1.0, 0.0));
        assert_eq!(x0_cubed.eval(&[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]), c(8.0, 0.0));
        let square = HomogeneousPoly::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(square.eval(&[c(1.0, 0.0), c(1.0, 0.0)]), c(4.0, 0.0));
    }

    #[test]
    fn eval_is_homogeneous() {
        let p = random_poly(3, 4, 11);
        let mut rng = seeded_rng(12, 0);
        let x = complex_gaussian_vec(&mut rng, 3);
        let t = c(3.0, 1.0);
        let tx: Vec<_> = x.iter().map(|v| v * t).collect();
        assert!(rel_err(p.eval(&tx), t.powu(4) * p.eval(&x)) < 1e-12);
    }

    #[test]
    fn power_of_linear_examples() {
        let x0 = LinearForm::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p = HomogeneousPoly::power_of_linear(&x0, 3);
        assert_eq!(p.coeffs()[0], c(1.0, 0.0));
        assert!(p.coeffs()[1..].iter().all(|v| v.norm() == 0.0));

        let sum = LinearForm::new(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let p = HomogeneousPoly::power_of_linear(&sum, 2);
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn power_of_linear_matches_pointwise_power() {
        let mut rng = seeded_rng(5, 0);
        let form = LinearForm::new(complex_gaussian_vec(&mut rng, 3));
        let p = HomogeneousPoly::power_of_linear(&form, 4);
        for _ in 0..10 {
            let x = complex_gaussian_vec(&mut rng, 3);
            assert!(rel_err(p.eval(&x), form.eval(&x).powu(4)) < 1e-12);
        }
    }

    #[test]
    fn contraction_examples() {
        let f = HomogeneousPoly::monomial(&MultiIndex(vec![2, 0, 0]), c(1.0, 0.0));
        let d = f.apolar_contract(&MultiIndex(vec![1, 0, 0])).unwrap();
        assert_eq!(d, HomogeneousPoly::monomial(&MultiIndex(vec![1, 0, 0]), c(2.0, 0.0)));

        let g = random_poly(3, 4, 3);
        assert_eq!(g.apolar_contract(&MultiIndex::zero(3)).unwrap(), g);

        assert!(matches!(
            f.apolar_contract(&MultiIndex(vec![3, 0, 0])),
            Err(WaringError::DegreeMismatch(_))
        ));
    }

    #[test]
    fn contraction_of_power_is_proportional_to_lower_power() {
        // ∂^g ℓ^d = d!/(d-e)! · ℓ^g · ℓ^{d-e}, with ℓ^g = Π c_h^{g_h}.
        let mut rng = seeded_rng(9, 0);
        let form = LinearForm::new(complex_gaussian_vec(&mut rng, 3));
        let f = HomogeneousPoly::power_of_linear(&form, 5);
        let low = HomogeneousPoly::power_of_linear(&form, 3);
        for g in monomial_basis(2, 3).iter() {
            let got = f.apolar_contract(g).unwrap();
            let dual_at_form: Complex64 = g.0.iter().zip(form.coeffs()).map(|(&e, cf)| cf.powu(e)).product();
            let factor = dual_at_form * (120.0 / 6.0);
            let want = low.scale(factor);
            let err = (&got - &want).norm() / want.norm();
            assert!(err < 1e-12, "relative error {err}");
        }
    }

    #[test]
    fn apolar_pairing_with_a_power_evaluates() {
        let mut rng = seeded_rng(21, 0);
        let form = LinearForm::new(complex_gaussian_vec(&mut rng, 3));
        let f = HomogeneousPoly::power_of_linear(&form, 4);
        let p = random_poly(3, 4, 22);
        let got = f.apolar_pairing(&p).unwrap();
        assert!(rel_err(got, p.eval(form.coeffs()) * 24.0) < 1e-12);
    }

    #[test]
    fn product_and_substitution_agree_with_evaluation() {
        let p = random_poly(3, 2, 31);
        let q = random_poly(3, 3, 32);
        let mut rng = seeded_rng(33, 0);
        let x = complex_gaussian_vec(&mut rng, 3);
        assert!(rel_err((&p * &q).eval(&x), p.eval(&x) * q.eval(&x)) < 1e-12);

        let m: Vec<Vec<Complex64>> = (0..3).map(|_| complex_gaussian_vec(&mut rng, 3)).collect();
        let mx: Vec<Complex64> = m
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        assert!(rel_err(q.linear_substitution(&m).eval(&x), q.eval(&mx)) < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = random_poly(3, 4, 41);
        let mut rng = seeded_rng(42, 0);
        let x = complex_gaussian_vec(&mut rng, 3);
        let (v, g) = p.eval_with_gradient(&x);
        assert!(rel_err(v, p.eval(&x)) < 1e-14);
        let h = 1e-6;
        for k in 0..3 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            let fd = (p.eval(&xp) - p.eval(&xm)) / (2.0 * h);
            assert!(rel_err(g[k], fd) < 1e-6);
        }
    }

    #[test]
    fn json_shape() {
        let p = HomogeneousPoly::new(2, 1, vec![c(1.0, 2.0), c(0.0, -1.0)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":1,"num_vars":2,"coeffs":[[1.0,2.0],[0.0,-1.0]]}"#);
        let back: HomogeneousPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<HomogeneousPoly>(r#"{"degree":2,"num_vars":2,"coeffs":[[1.0,0.0]]}"#).is_err());
    }

    #[test]
    fn affine_normalization() {
        let l = LinearForm::new(vec![c(2.0, 0.0), c(4.0, 2.0)]);
        let n = l.affine_normalized().unwrap();
        assert!(n.is_affine_normalized());
        assert_eq!(n.coeffs()[1], c(2.0, 1.0));
        assert!(LinearForm::new(vec![c(0.0, 0.0), c(1.0, 0.0)])
            .affine_normalized()
            .is_none());
    }
}
