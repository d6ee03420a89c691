//! The square system `F(u; p) = 0` whose solutions are the decompositions
//! `f_j = Σ_i λ_i^j (x_0 + Σ_h l_h^i x_h)^{a_j}` of the vector with
//! coefficient vector `p`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::apolarity::WaringDecomposition;
use crate::combinatorics::CaseSpec;
use crate::error::{Result, WaringError};
use crate::linalg::{condition_number, CMatrix};
use crate::polycore::{monomial_basis, LinearForm, MonomialBasis, PolyVector};
use crate::random::{complex_gaussian_vec, seeded_rng};

/// Jacobian condition number above which a startpoint is redrawn.
pub const START_COND_LIMIT: f64 = 1e8;

/// Redraws allowed before a case is declared degenerate.
pub const START_ATTEMPTS: usize = 10;

/// Equations are the coefficient identities scaled by `1/sqrt(multinomial)`,
/// which keeps the Jacobian of a random point well conditioned.
#[derive(Debug, Clone)]
pub struct SquareSystem {
    case: CaseSpec,
    k: usize,
    bases: Vec<Arc<MonomialBasis>>,
    /// `sqrt(|α|!/α!)` per component and monomial.
    sqrt_mult: Vec<Vec<f64>>,
    offsets: Vec<usize>,
    len: usize,
}

impl SquareSystem {
    pub fn new(case: &CaseSpec) -> Result<Self> {
        let k = case.require_k()?;
        let nv = case.num_vars();
        let bases: Vec<_> = case.degrees().iter().map(|&a| monomial_basis(a, nv)).collect();
        let sqrt_mult = bases
            .iter()
            .map(|b| b.iter().map(|m| m.multinomial().sqrt()).collect())
            .collect();
        let mut offsets = Vec::with_capacity(bases.len());
        let mut len = 0;
        for b in &bases {
            offsets.push(len);
            len += b.len();
        }
        debug_assert_eq!(len, k * case.block());
        Ok(SquareSystem {
            case: case.clone(),
            k,
            bases,
            sqrt_mult,
            offsets,
            len,
        })
    }

    pub fn case(&self) -> &CaseSpec {
        &self.case
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of equations, which equals the number of unknowns.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn block(&self) -> usize {
        self.case.block()
    }

    fn pows(&self, l: &[Complex64]) -> Vec<Vec<Complex64>> {
        let top = *self.case.degrees().last().expect("nonempty") as usize;
        let one = Complex64::new(1.0, 0.0);
        std::iter::once(one)
            .chain(l.iter().copied())
            .map(|c| {
                let mut row = Vec::with_capacity(top + 1);
                let mut acc = one;
                for _ in 0..=top {
                    row.push(acc);
                    acc *= c;
                }
                row
            })
            .collect()
    }

    fn split<'a>(&self, u: &'a [Complex64], i: usize) -> (&'a [Complex64], &'a [Complex64]) {
        let b = self.block();
        let n = self.case.n();
        (&u[i * b..i * b + n], &u[i * b + n..(i + 1) * b])
    }

    /// Weighted `Σ_i λ_i ℓ_i^{a_j}` coefficients, without the parameters.
    fn forward_weighted(&self, u: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len];
        for i in 0..self.k {
            let (l, lam) = self.split(u, i);
            let pows = self.pows(l);
            for (j, basis) in self.bases.iter().enumerate() {
                let off = self.offsets[j];
                for (a, m) in basis.iter().enumerate() {
                    let mono: Complex64 = m
                        .exponents()
                        .iter()
                        .enumerate()
                        .map(|(h, &e)| pows[h][e as usize])
                        .product();
                    out[off + a] += lam[j] * mono * self.sqrt_mult[j][a];
                }
            }
        }
        out
    }

    /// Weight of each equation, `1/sqrt(multinomial)`.
    pub fn weights(&self) -> Vec<f64> {
        self.sqrt_mult.iter().flatten().map(|s| 1.0 / s).collect()
    }

    /// `F(u; p)`.
    pub fn eval(&self, u: &[Complex64], p: &[Complex64]) -> Vec<Complex64> {
        let mut out = self.forward_weighted(u);
        for ((o, pv), w) in out.iter_mut().zip(p).zip(self.weights()) {
            *o -= pv * w;
        }
        out
    }

    /// `‖F(u; p)‖∞`.
    pub fn residual(&self, u: &[Complex64], p: &[Complex64]) -> f64 {
        self.eval(u, p).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `∂F/∂u`; it does not depend on the parameters.
    pub fn jacobian(&self, u: &[Complex64]) -> CMatrix {
        let n = self.case.n();
        let b = self.block();
        let mut jac = CMatrix::zeros(self.len, self.len);
        for i in 0..self.k {
            let (l, lam) = self.split(u, i);
            let pows = self.pows(l);
            for (j, basis) in self.bases.iter().enumerate() {
                let off = self.offsets[j];
                for (a, m) in basis.iter().enumerate() {
                    let e = m.exponents();
                    let s = self.sqrt_mult[j][a];
                    let mono: Complex64 = e.iter().enumerate().map(|(h, &x)| pows[h][x as usize]).product();
                    jac[(off + a, i * b + n + j)] = mono * s;
                    for h in 1..=n {
                        if e[h] == 0 {
                            continue;
                        }
                        let d: Complex64 = e
                            .iter()
                            .enumerate()
                            .map(|(g, &x)| pows[g][(x - u32::from(g == h)) as usize])
                            .product();
                        jac[(off + a, i * b + h - 1)] = lam[j] * d * (s * f64::from(e[h]));
                    }
                }
            }
        }
        jac
    }

    /// Coefficient vector of the polynomial vector the unknowns describe, so
    /// that `F(u; parameters(u)) = 0`.
    pub fn parameters(&self, u: &[Complex64]) -> Vec<Complex64> {
        let mut p = self.forward_weighted(u);
        for (pv, s) in p.iter_mut().zip(self.sqrt_mult.iter().flatten()) {
            *pv *= s;
        }
        p
    }

    /// Multiply every λ by `c`.
    pub fn scale_lambdas(&self, u: &[Complex64], c: Complex64) -> Vec<Complex64> {
        let b = self.block();
        let n = self.case.n();
        u.iter()
            .enumerate()
            .map(|(idx, v)| if idx % b >= n { v * c } else { *v })
            .collect()
    }

    pub fn to_decomposition(&self, u: &[Complex64]) -> WaringDecomposition {
        let (forms, lambdas) = (0..self.k)
            .map(|i| {
                let (l, lam) = self.split(u, i);
                (LinearForm::affine(l), lam.to_vec())
            })
            .unzip();
        WaringDecomposition::new(self.case.degrees().to_vec(), forms, lambdas)
    }

    /// The unknown vector of a decomposition; `None` when some form has a
    /// vanishing `x_0` coefficient (outside the chart).
    pub fn from_decomposition(&self, d: &WaringDecomposition) -> Option<Vec<Complex64>> {
        if d.k() != self.k || d.degrees() != self.case.degrees() {
            return None;
        }
        let mut u = Vec::with_capacity(self.len);
        for (form, lam) in d.forms().iter().zip(d.lambdas()) {
            let c0 = form.coeffs()[0];
            if c0.norm() < 1e-12 * form.norm() {
                return None;
            }
            u.extend(form.coeffs()[1..].iter().map(|c| c / c0));
            u.extend(lam.iter().zip(self.case.degrees()).map(|(l, &a)| l * c0.powu(a)));
        }
        Some(u)
    }

    pub fn to_poly_vector(&self, p: &[Complex64]) -> Result<PolyVector> {
        PolyVector::from_flat(self.case.num_vars(), self.case.degrees(), p)
    }

    /// Random unknowns with independent standard complex Gaussian entries.
    pub fn random_point(&self, rng: &mut crate::random::WaringRng) -> Vec<Complex64> {
        complex_gaussian_vec(rng, self.len)
    }
}

/// A solved system: `F(solution; parameters) = 0` by construction.
#[derive(Debug, Clone, Serialize)]
pub struct Startpoint {
    #[serde(skip)]
    pub parameters: Vec<Complex64>,
    #[serde(skip)]
    pub solution: Vec<Complex64>,
    pub condition: f64,
    pub attempts: usize,
}

/// Forward-construct a startpoint, redrawing while the Jacobian condition
/// number exceeds the limit.
pub fn generate_startpoint(system: &SquareSystem, seed: u64) -> Result<Startpoint> {
    let mut rng = seeded_rng(seed, 0x5747);
    let mut worst = 0.0_f64;
    for attempt in 1..=START_ATTEMPTS {
        let u = system.random_point(&mut rng);
        let condition = condition_number(&system.jacobian(&u));
        if condition <= START_COND_LIMIT {
            return Ok(Startpoint {
                parameters: system.parameters(&u),
                solution: u,
                condition,
                attempts: attempt,
            });
        }
        worst = worst.max(condition);
    }
    Err(WaringError::DegenerateCase(format!(
        "{}: Jacobian condition above {START_COND_LIMIT:.0e} in {START_ATTEMPTS} draws (last worst {worst:.2e}); likely defective",
        system.case().label()
    )))
}
