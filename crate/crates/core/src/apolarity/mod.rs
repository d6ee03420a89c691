//! Catalecticant and quotient-bundle contraction matrices, the base locus of
//! their kernels, and recovery of the unique decomposition in the
//! identifiable cases.

mod decompose;
mod decomposition;
mod locus;
mod matrices;
mod quotient;

use std::fmt;

use serde::Serialize;

use crate::combinatorics::{form_space_dim, CaseSpec};
use crate::error::{Result, WaringError};
use crate::linalg::{kernel, numerical_rank, CMatrix, RankInfo};

pub use decompose::{decompose, decompose_with_report, DecomposeReport};
pub use decomposition::{WaringDecomposition, CANONICAL_TOL};
pub use locus::{base_locus, KernelSections, LOCUS_RESIDUAL};
pub use matrices::{catalecticant, nonabelian_matrix};
pub use quotient::{quotient_basis, quotient_pairing, quotient_section_dim, QuotientSection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BundleKind {
    /// `O(e)`: the kernel consists of degree-`e` forms.
    LineBundle(u32),
    /// `Q(e)` on the plane.
    QuotientTwist(u32),
}

/// The bundle used for apolarity, with the kernel dimension and number of
/// base points expected for a general vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleSpec {
    pub kind: BundleKind,
    pub expected_kernel_dim: usize,
    pub expected_points: usize,
}

impl BundleSpec {
    /// `O(e)` on `P^n` for `n ∈ {1, 2}`: `n` kernel forms cutting out `e^n`
    /// points.
    pub fn line(e: u32, n: usize) -> Result<Self> {
        if !(1..=2).contains(&n) || e == 0 {
            return Err(WaringError::IncompatibleBundle {
                bundle: format!("line:{e}"),
                reason: format!("line bundles are supported on P^1 and P^2 only (n = {n})"),
            });
        }
        Ok(BundleSpec {
            kind: BundleKind::LineBundle(e),
            expected_kernel_dim: n,
            expected_points: (e as usize).pow(n as u32),
        })
    }

    /// `Q(e)` on the plane: one kernel section vanishing at `c_2(Q(e)) =
    /// e² + e + 1` points.
    pub fn quotient(e: u32) -> Self {
        let e = e as usize;
        BundleSpec {
            kind: BundleKind::QuotientTwist(e as u32),
            expected_kernel_dim: 1,
            expected_points: e * e + e + 1,
        }
    }

    /// The bundle that recovers the unique decomposition for one of the
    /// four identifiable families: binary with `k ≤ a_1 + 1`,
    /// `(Sym² C³)^4`, `Sym² C³ ⊕ Sym³ C³` and `(Sym³ C³)^2 ⊕ Sym⁴ C³`.
    pub fn for_case(case: &CaseSpec) -> Result<Self> {
        let d = case.degrees();
        match case.n() {
            1 if crate::combinatorics::binary_identifiable(case) => {
                let k = case.require_k()?;
                BundleSpec::line(k as u32, 1)
            }
            2 if d == [2, 2, 2, 2] || d == [2, 3] => BundleSpec::line(2, 2),
            2 if d == [3, 3, 4] => Ok(BundleSpec::quotient(2)),
            _ => Err(WaringError::IncompatibleBundle {
                bundle: "auto".into(),
                reason: format!("{} is not one of the apolarity-identifiable cases", case.label()),
            }),
        }
    }

    /// Parse `line:<e>`, `quotient:<e>` or `auto`.
    pub fn parse(name: &str, case: &CaseSpec) -> Result<Self> {
        if name == "auto" {
            return BundleSpec::for_case(case);
        }
        let bad = || WaringError::IncompatibleBundle {
            bundle: name.into(),
            reason: "expected line:<e>, quotient:<e> or auto".into(),
        };
        let (kind, e) = name.split_once(':').ok_or_else(bad)?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        match kind {
            "line" => BundleSpec::line(e, case.n()),
            "quotient" if case.n() == 2 => Ok(BundleSpec::quotient(e)),
            "quotient" => Err(WaringError::IncompatibleBundle {
                bundle: name.into(),
                reason: "quotient twists are implemented on the plane only".into(),
            }),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            BundleKind::LineBundle(e) => format!("line:{e}"),
            BundleKind::QuotientTwist(e) => format!("quotient:{e}"),
        }
    }

    /// `dim H^0(E)` on `P^n`.
    pub fn section_dim(&self, n: usize) -> usize {
        match self.kind {
            BundleKind::LineBundle(e) => form_space_dim(e, n),
            BundleKind::QuotientTwist(e) => quotient_section_dim(e),
        }
    }

    /// Rank of the bundle.
    pub fn rank(&self) -> usize {
        match self.kind {
            BundleKind::LineBundle(_) => 1,
            BundleKind::QuotientTwist(_) => 2,
        }
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Matrix of a contraction map, rows indexed by the target basis and
/// columns by the source basis.
#[derive(Debug, Clone)]
pub struct ContractionMatrix {
    pub entries: CMatrix,
    pub source_basis: String,
    pub target_basis: String,
    pub case: CaseSpec,
    pub bundle: BundleSpec,
}

impl ContractionMatrix {
    pub fn source_dim(&self) -> usize {
        self.entries.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn rank_info(&self) -> RankInfo {
        numerical_rank(&self.entries)
    }

    /// Rank information and an orthonormal kernel basis (as coefficient
    /// vectors in the source basis).
    pub fn kernel(&self) -> (RankInfo, Vec<Vec<num_complex::Complex64>>) {
        kernel(&self.entries)
    }
}
