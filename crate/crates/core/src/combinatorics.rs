//! Exact integer arithmetic: perfectness, closed-form decomposition counts
//! for Veronese-type vectors and the lower bound for pairs of ternary forms.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Result, WaringError};

/// `C(n, k)` for values that fit in `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// `C(n, k)` as a big integer.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Dimension of the space of degree-`a` forms in `n + 1` variables.
pub fn form_space_dim(a: u32, n: usize) -> usize {
    binomial(u64::from(a) + n as u64, n as u64) as usize
}

/// A degree signature `(a_1 ≤ … ≤ a_r)` over `P^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CaseSpec {
    n: usize,
    degrees: Vec<u32>,
}

impl CaseSpec {
    /// Degrees are sorted ascending; each must be at least 2.
    pub fn new(n: usize, degrees: &[u32]) -> Result<Self> {
        if n == 0 {
            return Err(WaringError::InvalidCase(
                "projective dimension must be at least 1".into(),
            ));
        }
        if degrees.is_empty() {
            return Err(WaringError::InvalidCase("degree list is empty".into()));
        }
        if let Some(&a) = degrees.iter().find(|&&a| a < 2) {
            return Err(WaringError::InvalidCase(format!("degree {a} is below 2")));
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable();
        Ok(CaseSpec { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.n + 1
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `N = Σ binom(a_i + n, n)`.
    pub fn ambient_dim(&self) -> usize {
        self.degrees.iter().map(|&a| form_space_dim(a, self.n)).sum()
    }

    /// `r + n`, the number of unknowns per summand.
    pub fn block(&self) -> usize {
        self.r() + self.n
    }

    /// `k = N / (r + n)` when the division is exact.
    pub fn k(&self) -> Option<usize> {
        let (ambient, block) = (self.ambient_dim(), self.block());
        (ambient % block == 0).then_some(ambient / block)
    }

    pub fn require_k(&self) -> Result<usize> {
        self.k().ok_or(WaringError::NotPerfect {
            ambient: self.ambient_dim(),
            block: self.block(),
        })
    }

    /// Short label like `n=2 (3,3,4)`.
    pub fn label(&self) -> String {
        let degs: Vec<String> = self.degrees.iter().map(|a| a.to_string()).collect();
        format!("n={} ({})", self.n, degs.join(","))
    }
}

/// `Some(k)` when `Σ binom(a_i + n, n) = k (r + n)`.
pub fn is_perfect(n: usize, degrees: &[u32]) -> Option<usize> {
    CaseSpec::new(n, degrees).ok()?.k()
}

/// Binary perfect signatures with `k ≤ a_1 + 1`: the generic vector has a
/// unique decomposition.
pub fn binary_identifiable(case: &CaseSpec) -> bool {
    case.n() == 1 && case.k().is_some_and(|k| k <= case.degrees()[0] as usize + 1)
}

/// `(3t − 2)(t − 1)/2 + 1`: lower bound on the number of decompositions of a
/// general pair of ternary forms of degrees `(2t, 2t + 1)`.
pub fn pair_lower_bound(t: u64) -> u64 {
    assert!(t >= 1, "t must be positive");
    (3 * t - 2) * (t - 1) / 2 + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeroneseCount {
    pub degree: u32,
    pub n: usize,
    /// `s = binom(d + n, n) − n`: number of forms and number of summands.
    pub s: usize,
    pub r: usize,
    pub k: usize,
    #[serde(serialize_with = "serialize_big")]
    pub count: BigUint,
}

fn serialize_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Number of decompositions of a general vector of `s` forms of degree `d`
/// on `P^n`, `C(d^n, s)`.
pub fn veronese_count(degree: u32, n: usize) -> Result<VeroneseCount> {
    if degree < 2 || n < 1 {
        return Err(WaringError::OutOfRange(format!(
            "need d ≥ 2 and n ≥ 1, got d = {degree}, n = {n}"
        )));
    }
    let s = form_space_dim(degree, n) - n;
    let points = u64::from(degree).pow(n as u32);
    if points < s as u64 {
        return Err(WaringError::OutOfRange(format!(
            "d^n = {points} is smaller than s = {s}"
        )));
    }
    Ok(VeroneseCount {
        degree,
        n,
        s,
        r: s,
        k: s,
        count: big_binomial(points, s as u64),
    })
}

/// What is known about identifiability of a signature, as pure predicates.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IdentifiabilityFlags {
    /// Binary case with `k ≤ a_1 + 1`.
    pub binary_identifiable: bool,
    /// One of the cases recovered by catalecticant or quotient-bundle
    /// apolarity, with the bundle name.
    pub apolarity_bundle: Option<String>,
    /// Pair `(a, a + 1)` of ternary forms: `Some(bound)` for even `a = 2t`.
    pub pair_lower_bound: Option<u64>,
    /// Pair `(a, a + 1)` of ternary forms is identifiable only for `a = 2`.
    pub pair_identifiable: Option<bool>,
}

pub fn identifiability_flags(case: &CaseSpec) -> IdentifiabilityFlags {
    let d = case.degrees();
    let pair = case.n() == 2 && d.len() == 2 && d[1] == d[0] + 1;
    let even_pair = pair && d[0].is_multiple_of(2);
    IdentifiabilityFlags {
        binary_identifiable: binary_identifiable(case),
        apolarity_bundle: crate::apolarity::BundleSpec::for_case(case).ok().map(|b| b.name()),
        pair_lower_bound: even_pair.then(|| pair_lower_bound(u64::from(d[0] / 2))),
        pair_identifiable: pair.then_some(d[0] == 2),
    }
}
