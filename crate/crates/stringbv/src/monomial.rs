//! Signed basis monomials of a finitely presented graded-commutative algebra:
//! a sparse exponent vector over the polynomial generators together with a
//! strictly increasing set of exterior generator indices.

use std::cmp::Ordering;

/// A normal-form monomial `y_1^{a_1} ... y_P^{a_P} x_{i_1} ... x_{i_l}` with
/// `i_1 < ... < i_l`. The coefficient lives in the enclosing [`Element`].
///
/// [`Element`]: crate::element::Element
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    /// Sparse `(generator index, exponent)` pairs, sorted by index, exponents > 0.
    pub poly: Vec<(u16, u32)>,
    /// Strictly increasing exterior generator indices.
    pub ext: Vec<u16>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn poly_gen(index: usize) -> Monomial {
        Monomial {
            poly: vec![(index as u16, 1)],
            ext: Vec::new(),
        }
    }

    pub fn poly_power(index: usize, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            poly: vec![(index as u16, exp)],
            ext: Vec::new(),
        }
    }

    pub fn ext_gen(index: usize) -> Monomial {
        Monomial {
            poly: Vec::new(),
            ext: vec![index as u16],
        }
    }

    /// Exterior monomial `x_I` for a sorted, duplicate-free index set.
    pub fn ext_set(indices: &[usize]) -> Monomial {
        let ext: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
        debug_assert!(ext.windows(2).all(|w| w[0] < w[1]), "ext set must be sorted");
        Monomial {
            poly: Vec::new(),
            ext,
        }
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_empty() && self.ext.is_empty()
    }

    pub fn exponent_of(&self, index: usize) -> u32 {
        self.poly
            .iter()
            .find(|(i, _)| *i as usize == index)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn has_ext(&self, index: usize) -> bool {
        self.ext.contains(&(index as u16))
    }

    /// The purely polynomial part, exterior factors dropped.
    pub fn poly_part(&self) -> Monomial {
        Monomial {
            poly: self.poly.clone(),
            ext: Vec::new(),
        }
    }

    /// The purely exterior part.
    pub fn ext_part(&self) -> Monomial {
        Monomial {
            poly: Vec::new(),
            ext: self.ext.clone(),
        }
    }

    pub fn total_poly_exponent(&self) -> u64 {
        self.poly.iter().map(|(_, e)| *e as u64).sum()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.total_poly_exponent() as usize + self.ext.len()
    }
}

/// Canonical monomial order: exterior sets by length then lexicographically,
/// then graded-lex on the polynomial exponents. All emitted tables use it.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ext.len(), &self.ext)
            .cmp(&(other.ext.len(), &other.ext))
            .then_with(|| self.total_poly_exponent().cmp(&other.total_poly_exponent()))
            .then_with(|| self.poly.cmp(&other.poly))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
