//! Monomial bases of degree-d forms in graded-lex order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

/// Exponent vector of a monomial (one entry per variable).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        MultiIndex(vec![0; num_vars])
    }

    /// The index of the variable `x_h`.
    pub fn unit(num_vars: usize, h: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[h] = 1;
        MultiIndex(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `α!` = product of the factorials of the exponents.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// `d! / α!` with `d = |α|`.
    pub fn multinomial(&self) -> f64 {
        factorial(self.degree()) / self.factorial()
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.divides(self) {
            return None;
        }
        Some(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// All monomials of one degree in a fixed number of variables, with an
/// O(1) position lookup.
///
/// Order is graded lexicographic with `x_0 > x_1 > ... > x_n`; inside a
/// single degree this is plain lexicographic order on the exponent vectors,
/// descending.
#[derive(Debug)]
pub struct MonomialBasis {
    degree: u32,
    num_vars: usize,
    monomials: Vec<MultiIndex>,
    positions: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    fn build(degree: u32, num_vars: usize) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u32; num_vars];
        if num_vars > 0 {
            fill(&mut monomials, &mut current, 0, degree);
        }
        let positions = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis {
            degree,
            num_vars,
            monomials,
            positions,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.monomials[i]
    }

    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        self.positions.get(m).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.monomials.iter()
    }
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

type BasisCache = HashMap<(u32, usize), Arc<MonomialBasis>>;

static BASES: Lazy<Mutex<BasisCache>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Shared monomial basis for forms of `degree` in `num_vars` variables.
pub fn monomial_basis(degree: u32, num_vars: usize) -> Arc<MonomialBasis> {
    let mut cache = BASES.lock().expect("basis cache poisoned");
    cache
        .entry((degree, num_vars))
        .or_insert_with(|| Arc::new(MonomialBasis::build(degree, num_vars)))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    #[test]
    fn linear_forms_in_three_variables() {
        let b = monomial_basis(1, 3);
        let got: Vec<Vec<u32>> = b.iter().map(|m| m.0.clone()).collect();
        assert_eq!(got, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn sizes_match_binomials() {
        assert_eq!(monomial_basis(4, 3).len(), 15);
        // brute force enumeration of exponent vectors summing to 3 in 4 variables
        let mut count = 0;
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for c in 0..=3u32 {
                    for d in 0..=3u32 {
                        if a + b + c + d == 3 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 20);
        assert_eq!(monomial_basis(3, 4).len(), count);
        for d in 0..8u32 {
            for nv in 1..6usize {
                assert_eq!(
                    monomial_basis(d, nv).len(),
                    binomial(d as u64 + nv as u64 - 1, nv as u64 - 1) as usize
                );
            }
        }
    }

    #[test]
    fn order_is_descending_lex_and_positions_round_trip() {
        let b = monomial_basis(5, 3);
        for w in b.monomials().windows(2) {
            assert!(w[0] > w[1]);
        }
        for (i, m) in b.iter().enumerate() {
            assert_eq!(b.position(m), Some(i));
            assert_eq!(m.degree(), 5);
        }
        assert_eq!(b.position(&MultiIndex(vec![1, 1, 1])), None);
    }

    #[test]
    fn degree_zero_has_one_monomial() {
        let b = monomial_basis(0, 3);
        assert_eq!(b.len(), 1);
        assert_eq!(b.get(0), &MultiIndex::zero(3));
    }
}
