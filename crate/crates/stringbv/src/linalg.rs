//! Exact linear algebra over the coefficient field: Gaussian elimination,
//! ranks and solving, both on raw matrices and on homogeneous elements
//! expressed over their monomial basis.

use std::collections::BTreeMap;

use crate::algebra::AlgebraSpec;
use crate::element::Element;
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// Dense column-major system `A x = b` over one field.
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            data: vec![Scalar::zero(p); rows * cols],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn rank(mut self) -> usize {
        self.eliminate_multi(Vec::new()).0
    }

    /// Particular solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solve_multi(std::slice::from_ref(&b.to_vec()))
            .into_iter()
            .next()
            .unwrap()
    }

    /// Particular solutions for several right-hand sides sharing one
    /// elimination pass.
    pub fn solve_multi(mut self, bs: &[Vec<Scalar>]) -> Vec<Option<Vec<Scalar>>> {
        for b in bs {
            assert_eq!(b.len(), self.rows);
        }
        let (_, pivots, rhs) = self.eliminate_multi(bs.to_vec());
        rhs.into_iter()
            .map(|b| {
                // any nonzero entry of the reduced rhs outside pivot rows is
                // an inconsistency
                for r in pivots.len()..self.rows {
                    if !b[r].is_zero() {
                        return None;
                    }
                }
                let mut x = vec![Scalar::zero(self.p); self.cols];
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = b[r].clone();
                }
                Some(x)
            })
            .collect()
    }

    /// Row reduction to reduced echelon form. Returns the rank, the pivot
    /// column per pivot row, and the transformed right-hand sides.
    fn eliminate_multi(&mut self, mut rhs: Vec<Vec<Scalar>>) -> (usize, Vec<usize>, Vec<Vec<Scalar>>) {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            for v in rhs.iter_mut() {
                v.swap(row, pr);
            }
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for v in rhs.iter_mut() {
                v[row] = &v[row] * &inv;
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&factor * self.get(row, c));
                    self.set(r, c, v);
                }
                for v in rhs.iter_mut() {
                    v[r] = &v[r] - &(&factor * &v[row]);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        (pivots.len(), pivots, rhs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Index all monomials appearing in the given elements, in canonical order.
pub fn monomial_index(elements: &[&Element]) -> BTreeMap<Monomial, usize> {
    let mut set = BTreeMap::new();
    for e in elements {
        for (m, _) in e.iter() {
            let next = set.len();
            set.entry(m.clone()).or_insert(next);
        }
    }
    // reindex in sorted order
    set.iter_mut()
        .enumerate()
        .for_each(|(k, (_, v))| *v = k);
    set
}

/// Matrix whose columns are the coordinates of `columns` over the combined
/// monomial support.
pub fn element_matrix(p: u32, columns: &[Element], index: &BTreeMap<Monomial, usize>) -> Matrix {
    let mut mat = Matrix::zero(p, index.len(), columns.len());
    for (c, e) in columns.iter().enumerate() {
        for (m, v) in e.iter() {
            mat.set(index[m], c, v.clone());
        }
    }
    mat
}

/// Exact Gaussian elimination: a coefficient vector `x` with
/// `sum_i x_i columns_i = target`, or `None` when no solution exists.
///
/// All nonzero inputs must be homogeneous of one common degree.
pub fn solve_linear(
    spec: &AlgebraSpec,
    columns: &[Element],
    target: &Element,
) -> Result<Option<Vec<Scalar>>, AlgebraError> {
    let mut degree: Option<i64> = None;
    for e in columns.iter().chain(std::iter::once(target)) {
        if let Some(d) = spec.degree(e)? {
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(AlgebraError::MixedDegrees),
                _ => {}
            }
        }
    }
    let mut all: Vec<&Element> = columns.iter().collect();
    all.push(target);
    let index = monomial_index(&all);
    let mat = element_matrix(spec.prime(), columns, &index);
    let mut b = vec![Scalar::zero(spec.prime()); index.len()];
    for (m, v) in target.iter() {
        b[index[m]] = v.clone();
    }
    Ok(mat.solve(&b))
}

/// Rank of the span of the given elements.
pub fn rank_of(p: u32, elements: &[Element]) -> usize {
    let refs: Vec<&Element> = elements.iter().collect();
    let index = monomial_index(&refs);
    element_matrix(p, elements, &index).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn spec_f3() -> AlgebraSpec {
        AlgebraSpec::new(3, vec![Generator::new("v", 2)], vec![]).unwrap()
    }

    #[test]
    fn solve_scalar_multiple() {
        let spec = spec_f3();
        let v = Element::monomial(Monomial::poly_gen(0), 3);
        let target = v.scale(&Scalar::from_int(3, 2));
        let sol = solve_linear(&spec, &[v], &target).unwrap().unwrap();
        assert_eq!(sol, vec![Scalar::from_int(3, 2)]);
    }

    #[test]
    fn solve_zero_target() {
        let spec = spec_f3();
        let v = Element::monomial(Monomial::poly_gen(0), 3);
        let sol = solve_linear(&spec, &[v], &Element::zero()).unwrap().unwrap();
        assert_eq!(sol, vec![Scalar::zero(3)]);
    }

    #[test]
    fn inconsistent_system_reports_none() {
        let spec = spec_f3();
        let v = Element::monomial(Monomial::poly_gen(0), 3);
        let w = Element::monomial(Monomial::poly_power(0, 2), 3);
        // v spans degree 2 only; w has degree 4
        assert!(solve_linear(&spec, &[v], &w).is_err());
        // inside one degree: no columns at all
        let target = Element::monomial(Monomial::poly_gen(0), 3);
        assert_eq!(solve_linear(&spec, &[], &target).unwrap(), None);
    }

    #[test]
    fn rank_over_rationals() {
        let spec = AlgebraSpec::new(
            0,
            vec![Generator::new("a", 2), Generator::new("b", 2)],
            vec![],
        )
        .unwrap();
        let a = Element::monomial(Monomial::poly_gen(0), 0);
        let b = Element::monomial(Monomial::poly_gen(1), 0);
        let sum = &a + &b;
        assert_eq!(rank_of(spec.prime(), &[a.clone(), b.clone(), sum]), 2);
        assert_eq!(rank_of(spec.prime(), &[a, b]), 2);
    }
}
