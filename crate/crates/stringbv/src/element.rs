//! Sparse exact linear combinations of monomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// A sparse linear combination of normal-form monomials with nonzero exact
/// coefficients. The zero element has no terms.
///
/// Elements do not carry their algebra; operations that need the presentation
/// (multiplication, degrees, rewriting) live on
/// [`AlgebraSpec`](crate::algebra::AlgebraSpec).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one(p: u32) -> Element {
        Element::from_monomial(Monomial::one(), Scalar::one(p))
    }

    pub fn from_monomial(m: Monomial, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn monomial(m: Monomial, p: u32) -> Element {
        Element::from_monomial(m, Scalar::one(p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Option<Monomial>) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            if let Some(n) = f(m) {
                out.add_term(n, c.clone());
            }
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Scalar> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Scalar) -> Element {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_never_stored() {
        let p = 3;
        let mut e = Element::zero();
        e.add_term(Monomial::poly_gen(0), Scalar::from_int(p, 1));
        e.add_term(Monomial::poly_gen(0), Scalar::from_int(p, 2));
        assert!(e.is_zero());
    }

    #[test]
    fn addition_merges_terms() {
        let p = 5;
        let a = Element::from_monomial(Monomial::poly_gen(0), Scalar::from_int(p, 2));
        let b = Element::from_monomial(Monomial::poly_gen(0), Scalar::from_int(p, 4));
        let sum = &a + &b;
        assert_eq!(
            sum.coefficient(&Monomial::poly_gen(0)),
            Some(&Scalar::from_int(p, 1))
        );
    }
}
