//! Sections of twists of the quotient bundle on the plane, presented through
//! the Euler sequence: a section of `Q(e)` is a triple of degree-`e` forms
//! modulo triples `(x_0 h, x_1 h, x_2 h)`.

use num_complex::Complex64;

use crate::error::{Result, WaringError};
use crate::polycore::{monomial_basis, HomogeneousPoly, MultiIndex};

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientSection {
    lift: [HomogeneousPoly; 3],
}

impl QuotientSection {
    pub fn new(lift: [HomogeneousPoly; 3]) -> Result<Self> {
        let d = lift[0].degree();
        if lift.iter().any(|g| g.num_vars() != 3 || g.degree() != d) {
            return Err(WaringError::ShapeMismatch(
                "a quotient section needs three ternary forms of one degree".into(),
            ));
        }
        Ok(QuotientSection { lift })
    }

    pub fn zero(degree: u32) -> Self {
        let z = HomogeneousPoly::zero(3, degree);
        QuotientSection {
            lift: [z.clone(), z.clone(), z],
        }
    }

    /// The Euler element `(x_0 h, x_1 h, x_2 h)`, which represents zero.
    pub fn euler(h: &HomogeneousPoly) -> Self {
        assert_eq!(h.num_vars(), 3, "Euler lifts live on the plane");
        let lift = [0, 1, 2].map(|v| {
            let x = HomogeneousPoly::monomial(&MultiIndex::unit(3, v), Complex64::new(1.0, 0.0));
            &x * h
        });
        QuotientSection { lift }
    }

    pub fn degree(&self) -> u32 {
        self.lift[0].degree()
    }

    pub fn lift(&self) -> &[HomogeneousPoly; 3] {
        &self.lift
    }

    pub fn add(&self, other: &QuotientSection) -> QuotientSection {
        QuotientSection {
            lift: [0, 1, 2].map(|v| &self.lift[v] + &other.lift[v]),
        }
    }

    pub fn scale(&self, c: Complex64) -> QuotientSection {
        QuotientSection {
            lift: [0, 1, 2].map(|v| self.lift[v].scale(c)),
        }
    }

    /// The representative whose first entry has no monomial divisible by
    /// `x_0`. Two lifts give the same section iff these agree.
    pub fn reduced(&self) -> QuotientSection {
        let e = self.degree();
        if e == 0 {
            return self.clone();
        }
        let mut h = HomogeneousPoly::zero(3, e - 1);
        let basis = monomial_basis(e, 3);
        let hb = monomial_basis(e - 1, 3);
        for (m, c) in basis.iter().zip(self.lift[0].coeffs()) {
            if m.0[0] > 0 {
                let lower = MultiIndex(vec![m.0[0] - 1, m.0[1], m.0[2]]);
                let pos = hb.position(&lower).expect("lowered monomial");
                h.coeffs_mut()[pos] = *c;
            }
        }
        let euler = QuotientSection::euler(&h);
        QuotientSection {
            lift: [0, 1, 2].map(|v| &self.lift[v] - &euler.lift[v]),
        }
    }

    /// Value of the lift at `p`.
    pub fn eval(&self, p: &[Complex64]) -> [Complex64; 3] {
        [0, 1, 2].map(|v| self.lift[v].eval(p))
    }

    /// The three 2 × 2 minors of `[x; G(x)]`, which vanish exactly where the
    /// section vanishes: `(m_01, m_02, m_12)`.
    pub fn minors(&self) -> [HomogeneousPoly; 3] {
        let x = [0, 1, 2].map(|v| HomogeneousPoly::monomial(&MultiIndex::unit(3, v), Complex64::new(1.0, 0.0)));
        let minor = |i: usize, j: usize| &(&x[i] * &self.lift[j]) - &(&x[j] * &self.lift[i]);
        [minor(0, 1), minor(0, 2), minor(1, 2)]
    }
}

/// `dim H^0(Q(e)) = 3·binom(e+2, 2) − binom(e+1, 2)` on the plane.
pub fn quotient_section_dim(e: u32) -> usize {
    let e = e as usize;
    3 * (e + 2) * (e + 1) / 2 - (e + 1) * e / 2
}

/// Basis of `H^0(Q(e))`: `(m, 0, 0)` for monomials `m` in `x_1, x_2` only,
/// then `(0, m, 0)` and `(0, 0, m)` for every degree-`e` monomial.
pub fn quotient_basis(e: u32) -> Vec<QuotientSection> {
    let one = Complex64::new(1.0, 0.0);
    let basis = monomial_basis(e, 3);
    let mut out = Vec::with_capacity(quotient_section_dim(e));
    for slot in 0..3 {
        for m in basis.iter() {
            if slot == 0 && m.0[0] > 0 {
                continue;
            }
            let mut lift = [0, 1, 2].map(|_| HomogeneousPoly::zero(3, e));
            lift[slot] = HomogeneousPoly::monomial(m, one);
            out.push(QuotientSection { lift });
        }
    }
    out
}

/// `det [[x_0, x_1, x_2], G, H]`: the pairing of sections of `Q(e)` and
/// `Q(e')` into forms of degree `e + e' + 1`.
pub fn quotient_pairing(g: &QuotientSection, h: &QuotientSection) -> HomogeneousPoly {
    let [g0, g1, g2] = &g.lift;
    let [h0, h1, h2] = &h.lift;
    let x = [0, 1, 2].map(|v| HomogeneousPoly::monomial(&MultiIndex::unit(3, v), Complex64::new(1.0, 0.0)));
    let c0 = &(g1 * h2) - &(g2 * h1);
    let c1 = &(g0 * h2) - &(g2 * h0);
    let c2 = &(g0 * h1) - &(g1 * h0);
    let t0 = &x[0] * &c0;
    let t1 = &x[1] * &c1;
    let t2 = &x[2] * &c2;
    &(&t0 - &t1) + &t2
}
