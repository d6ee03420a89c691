use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::monomial_basis;
use super::poly::{HomogeneousPoly, LinearForm};
use crate::error::{Result, WaringError};

/// A vector `f = (f_1, …, f_r)` of forms with nondecreasing degrees
/// `a_1 ≤ … ≤ a_r`, all in the same variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorJson", into = "VectorJson")]
pub struct PolyVector {
    num_vars: usize,
    degrees: Vec<u32>,
    parts: Vec<HomogeneousPoly>,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    degrees: Vec<u32>,
    parts: Vec<HomogeneousPoly>,
}

impl TryFrom<VectorJson> for PolyVector {
    type Error = WaringError;

    fn try_from(j: VectorJson) -> Result<Self> {
        let v = PolyVector::new(j.parts)?;
        if v.degrees != j.degrees {
            return Err(WaringError::DegreeMismatch(format!(
                "declared degrees {:?} disagree with parts {:?}",
                j.degrees, v.degrees
            )));
        }
        Ok(v)
    }
}

impl From<PolyVector> for VectorJson {
    fn from(v: PolyVector) -> Self {
        VectorJson {
            degrees: v.degrees,
            parts: v.parts,
        }
    }
}

impl PolyVector {
    pub fn new(parts: Vec<HomogeneousPoly>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| WaringError::InvalidCase("a polynomial vector needs at least one part".into()))?;
        let num_vars = first.num_vars();
        if parts.iter().any(|p| p.num_vars() != num_vars) {
            return Err(WaringError::ShapeMismatch(
                "parts use different numbers of variables".into(),
            ));
        }
        let degrees: Vec<u32> = parts.iter().map(|p| p.degree()).collect();
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(WaringError::InvalidCase(format!(
                "degrees must be nondecreasing, got {degrees:?}"
            )));
        }
        Ok(PolyVector {
            num_vars,
            degrees,
            parts,
        })
    }

    /// `f_j = Σ_i λ_i^j ℓ_i^{a_j}`; `lambdas[i][j]` is the scalar of summand
    /// `i` in component `j`.
    pub fn from_summands(degrees: &[u32], forms: &[LinearForm], lambdas: &[Vec<Complex64>]) -> Result<Self> {
        let num_vars = forms
            .first()
            .ok_or_else(|| WaringError::InvalidCase("no summands".into()))?
            .num_vars();
        if lambdas.len() != forms.len() || lambdas.iter().any(|l| l.len() != degrees.len()) {
            return Err(WaringError::ShapeMismatch("lambda matrix must be k × r".into()));
        }
        let parts = degrees
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let mut acc = HomogeneousPoly::zero(num_vars, a);
                for (form, lam) in forms.iter().zip(lambdas) {
                    let pw = HomogeneousPoly::power_of_linear(form, a);
                    for (o, v) in acc.coeffs_mut().iter_mut().zip(pw.coeffs()) {
                        *o += lam[j] * v;
                    }
                }
                acc
            })
            .collect();
        PolyVector::new(parts)
    }

    /// Rebuild from a flat coefficient vector (parts concatenated).
    pub fn from_flat(num_vars: usize, degrees: &[u32], flat: &[Complex64]) -> Result<Self> {
        let total: usize = degrees.iter().map(|&a| monomial_basis(a, num_vars).len()).sum();
        if flat.len() != total {
            return Err(WaringError::ShapeMismatch(format!(
                "expected {total} coefficients, got {}",
                flat.len()
            )));
        }
        let mut offset = 0;
        let mut parts = Vec::with_capacity(degrees.len());
        for &a in degrees {
            let len = monomial_basis(a, num_vars).len();
            parts.push(HomogeneousPoly::new(num_vars, a, flat[offset..offset + len].to_vec())?);
            offset += len;
        }
        PolyVector::new(parts)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn parts(&self) -> &[HomogeneousPoly] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `N = Σ binom(a_i + n, n)`.
    pub fn ambient_dim(&self) -> usize {
        self.parts.iter().map(|p| p.coeffs().len()).sum()
    }

    pub fn flatten(&self) -> Vec<Complex64> {
        self.parts.iter().flat_map(|p| p.coeffs().iter().copied()).collect()
    }

    /// `p(M x)` applied to every part.
    pub fn linear_substitution(&self, m: &[Vec<Complex64>]) -> PolyVector {
        PolyVector {
            num_vars: self.num_vars,
            degrees: self.degrees.clone(),
            parts: self.parts.iter().map(|p| p.linear_substitution(m)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_gaussian_vec, seeded_rng};

    #[test]
    fn ambient_dimension_and_flat_round_trip() {
        let mut rng = seeded_rng(1, 0);
        let flat = complex_gaussian_vec(&mut rng, 35);
        let v = PolyVector::from_flat(3, &[3, 3, 4], &flat).unwrap();
        assert_eq!(v.ambient_dim(), 35);
        assert_eq!(v.flatten(), flat);
        assert!(PolyVector::from_flat(3, &[3, 3, 4], &flat[..34]).is_err());
    }

    #[test]
    fn degrees_must_be_nondecreasing() {
        let a = HomogeneousPoly::zero(3, 4);
        let b = HomogeneousPoly::zero(3, 3);
        assert!(PolyVector::new(vec![a, b]).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let mut rng = seeded_rng(2, 0);
        let flat = complex_gaussian_vec(&mut rng, 12);
        let v = PolyVector::from_flat(3, &[2, 2], &flat).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"degrees":[2,2],"parts":["#));
        let back: PolyVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let bad = s.replacen("[2,2]", "[2,3]", 1);
        assert!(serde_json::from_str::<PolyVector>(&bad).is_err());
    }

    #[test]
    fn summands_build_each_component() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let forms = vec![LinearForm::new(vec![one, zero]), LinearForm::new(vec![zero, one])];
        let lambdas = vec![vec![one, one * 2.0], vec![one * 3.0, one]];
        let v = PolyVector::from_summands(&[2, 3], &forms, &lambdas).unwrap();
        assert_eq!(v.parts()[0].coeffs(), &[one, zero, one * 3.0]);
        assert_eq!(v.parts()[1].coeffs(), &[one * 2.0, zero, zero, one]);
    }
}
