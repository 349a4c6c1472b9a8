//! Sparse multivariate polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Rational, Ring};

/// Sorted multiset of unknown indices; `[]` is the constant monomial.
pub type Monomial = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { terms }
    }

    pub fn var(index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![index], Rational::one());
        Self { terms }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Terms in canonical order: higher degree first, then lexicographic
    /// on the index multiset.
    pub fn terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        t
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = crate::scalar::Scalar::to_f64(c);
                m.iter().fold(c, |acc, &i| acc * x[i])
            })
            .sum()
    }

    pub fn eval_exact(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, &i| acc * &x[i]))
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Ring for Poly {
    fn from_i64(n: i64) -> Self {
        Poly::constant(<Rational as Ring>::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn arithmetic() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let q = x.clone() * x.clone() - y.clone() * y.clone();
        assert_eq!(p, q);
        assert_eq!(p.degree(), 2);
        assert!((x.clone() - x).is_zero());
        assert_eq!(p.eval_exact(&[rat(3, 1), rat(1, 2)]), rat(35, 4));
        assert_eq!(p.eval_f64(&[3.0, 0.5]), 8.75);
    }

    #[test]
    fn canonical_term_order() {
        let p = Poly::var(2) + Poly::var(0) * Poly::var(1) + Poly::constant(rat(5, 1));
        let ms: Vec<_> = p.terms().into_iter().map(|(m, _)| m.clone()).collect();
        assert_eq!(ms, vec![vec![0, 1], vec![2], vec![]]);
    }
}
