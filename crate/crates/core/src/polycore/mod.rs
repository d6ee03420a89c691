//! Dense homogeneous polynomials over the complex numbers and the apolar
//! (derivative) contraction between forms and differential operators.

mod basis;
mod poly;
mod vector;

pub use basis::{monomial_basis, MonomialBasis, MultiIndex};
pub use poly::{HomogeneousPoly, LinearForm};
pub use vector::PolyVector;
