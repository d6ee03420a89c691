//! Simultaneous Waring decompositions of vectors of homogeneous forms
//! `f_j = Σ_i λ_i^j ℓ_i^{a_j}`: perfectness and closed-form counts, Terracini
//! defect checks, apolarity recovery in the identifiable cases, and
//! monodromy counting of decompositions.

pub mod apolarity;
pub mod combinatorics;
pub mod error;
pub mod homotopy;
pub mod linalg;
pub mod polycore;
pub mod random;
pub mod table;
pub mod terracini;

pub use apolarity::{decompose, BundleSpec, WaringDecomposition};
pub use combinatorics::{is_perfect, veronese_count, CaseSpec};
pub use error::{Result, WaringError};
pub use homotopy::{count_decompositions, CountOptions, CountReport, CountStatus};
pub use polycore::{HomogeneousPoly, LinearForm, MultiIndex, PolyVector};
pub use terracini::{secant_defect, DefectReport};
