//! Finitely presented graded-commutative algebras over `F_p` or `Q`:
//! normal forms, Koszul signs, square-rule rewriting, formal derivatives and
//! per-degree bases.

use crate::element::Element;
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Generator {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// Presentation of a graded-commutative algebra
/// `K[y_1,...,y_P] (x) Delta(x_1,...,x_E)` where each exterior square `x_i^2`
/// rewrites to a fixed homogeneous element (zero when no rule is given).
///
/// For `p != 2` graded commutativity forces odd exterior and even polynomial
/// generators; this is enforced at construction.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    prime: u32,
    poly_gens: Vec<Generator>,
    ext_gens: Vec<Generator>,
    /// `square_rules[i]` is the value of `x_i^2`; zero means the square vanishes.
    square_rules: Vec<Element>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl AlgebraSpec {
    pub fn new(
        prime: u32,
        poly_gens: Vec<Generator>,
        ext_gens: Vec<Generator>,
    ) -> Result<AlgebraSpec, AlgebraError> {
        if prime != 0 && !is_prime(prime) {
            return Err(AlgebraError::NotPrime(prime));
        }
        for g in poly_gens.iter().chain(ext_gens.iter()) {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegreeGenerator(g.name.clone()));
            }
        }
        if prime != 2 {
            for g in &poly_gens {
                if g.degree % 2 != 0 {
                    return Err(AlgebraError::BadGenerator {
                        name: g.name.clone(),
                        reason: format!(
                            "polynomial generator of odd degree {} needs p = 2",
                            g.degree
                        ),
                    });
                }
            }
            for g in &ext_gens {
                if g.degree % 2 == 0 {
                    return Err(AlgebraError::BadGenerator {
                        name: g.name.clone(),
                        reason: format!(
                            "exterior generator of even degree {} needs p = 2",
                            g.degree
                        ),
                    });
                }
            }
        }
        let rules = vec![Element::zero(); ext_gens.len()];
        Ok(AlgebraSpec {
            prime,
            poly_gens,
            ext_gens,
            square_rules: rules,
        })
    }

    /// Install the rewriting rule `x_i^2 := rhs`.
    ///
    /// The right-hand side must be homogeneous of degree `2 |x_i|` and each of
    /// its monomials may carry at most one exterior factor; this is what makes
    /// rewriting terminate (every rewrite strictly drops the number of
    /// exterior factors).
    pub fn set_square_rule(&mut self, i: usize, rhs: Element) -> Result<(), AlgebraError> {
        let name = self.ext_gens[i].name.clone();
        let expected = 2 * self.ext_gens[i].degree;
        for (m, _) in rhs.iter() {
            if self.monomial_degree(m) != expected {
                return Err(AlgebraError::BadSquareRule {
                    name,
                    reason: format!(
                        "right-hand side must be homogeneous of degree {expected}"
                    ),
                });
            }
            if m.ext.len() > 1 {
                return Err(AlgebraError::BadSquareRule {
                    name,
                    reason: "right-hand side monomials may carry at most one exterior factor"
                        .into(),
                });
            }
        }
        self.square_rules[i] = rhs;
        Ok(())
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn poly_gens(&self) -> &[Generator] {
        &self.poly_gens
    }

    pub fn ext_gens(&self) -> &[Generator] {
        &self.ext_gens
    }

    pub fn square_rule(&self, i: usize) -> &Element {
        &self.square_rules[i]
    }

    pub fn has_square_rules(&self) -> bool {
        self.square_rules.iter().any(|r| !r.is_zero())
    }

    pub fn poly_degree(&self, i: usize) -> i64 {
        self.poly_gens[i].degree
    }

    pub fn ext_degree(&self, i: usize) -> i64 {
        self.ext_gens[i].degree
    }

    pub fn one(&self) -> Element {
        Element::one(self.prime)
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_int(self.prime, n)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        let poly: i64 = m
            .poly
            .iter()
            .map(|(i, e)| self.poly_gens[*i as usize].degree * *e as i64)
            .sum();
        let ext: i64 = m
            .ext
            .iter()
            .map(|i| self.ext_gens[*i as usize].degree)
            .sum();
        poly + ext
    }

    /// Degree of a homogeneous element, `None` for zero.
    pub fn degree(&self, e: &Element) -> Result<Option<i64>, AlgebraError> {
        let mut deg = None;
        for (m, _) in e.iter() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Err(AlgebraError::NotHomogeneous(d0, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self, e: &Element) -> bool {
        self.degree(e).is_ok()
    }

    // ------------------------------------------------------------------
    // Multiplication
    // ------------------------------------------------------------------

    /// Normal-form product: exterior factors sorted with Koszul signs, repeated
    /// exterior indices rewritten through the square rules until square-free.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.multiply_with_order(a, b, &mut |_| 0)
    }

    /// As [`multiply`](Self::multiply), with a hook choosing which repeated
    /// exterior index to rewrite first. Used by the confluence tests; the
    /// default picks the leftmost.
    pub(crate) fn multiply_with_order(
        &self,
        a: &Element,
        b: &Element,
        pick: &mut dyn FnMut(usize) -> usize,
    ) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let c = ca * cb;
                self.accumulate_product(ma, mb, &c, &mut out, pick);
            }
        }
        out
    }

    pub fn multiply_monomials(&self, ma: &Monomial, mb: &Monomial, c: &Scalar) -> Element {
        let mut out = Element::zero();
        self.accumulate_product(ma, mb, c, &mut out, &mut |_| 0);
        out
    }

    fn accumulate_product(
        &self,
        ma: &Monomial,
        mb: &Monomial,
        c: &Scalar,
        out: &mut Element,
        pick: &mut dyn FnMut(usize) -> usize,
    ) {
        let mut poly = merge_poly(&ma.poly, &mb.poly);
        let (sign, ext) = self.merge_ext(&ma.ext, &mb.ext);
        let coeff = if sign % 2 == 0 { c.clone() } else { -c };
        self.rewrite(&mut poly, ext, coeff, out, pick);
    }

    /// Rewrites repeated exterior indices until the monomial is square-free.
    /// Each step removes one adjacent pair `x_i x_i` (extracting a square is
    /// sign-free since its degree is even) and splices in the rule for `x_i^2`.
    fn rewrite(
        &self,
        poly: &mut Vec<(u16, u32)>,
        ext: Vec<u16>,
        coeff: Scalar,
        out: &mut Element,
        pick: &mut dyn FnMut(usize) -> usize,
    ) {
        if coeff.is_zero() {
            return;
        }
        let repeats: Vec<usize> = ext
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(k, _)| k)
            .collect();
        if repeats.is_empty() {
            out.add_term(
                Monomial {
                    poly: std::mem::take(poly),
                    ext,
                },
                coeff,
            );
            return;
        }
        let at = repeats[pick(repeats.len()).min(repeats.len() - 1)];
        let i = ext[at] as usize;
        let mut rest = ext;
        rest.remove(at);
        rest.remove(at);
        let rule = &self.square_rules[i];
        for (rm, rc) in rule.iter() {
            let mut new_poly = merge_poly(poly, &rm.poly);
            let (sign, new_ext) = self.merge_ext(&rm.ext, &rest);
            let mut c = &coeff * rc;
            if sign % 2 != 0 {
                c = -&c;
            }
            self.rewrite(&mut new_poly, new_ext, c, out, pick);
        }
    }

    /// Merge two sorted exterior index lists, keeping duplicates, and return
    /// the Koszul sign exponent: each factor of `b` moved left past a factor
    /// of `a` of strictly greater index contributes the product of degrees.
    fn merge_ext(&self, a: &[u16], b: &[u16]) -> (i64, Vec<u16>) {
        let mut sign: i64 = 0;
        if self.prime != 2 {
            for &j in b {
                let dj = self.ext_gens[j as usize].degree;
                for &i in a {
                    if i > j {
                        sign += dj * self.ext_gens[i as usize].degree;
                    }
                }
            }
        }
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut ia, mut ib) = (0, 0);
        while ia < a.len() && ib < b.len() {
            // on ties take a's copy first so the pair sits adjacent
            if a[ia] <= b[ib] {
                merged.push(a[ia]);
                ia += 1;
            } else {
                merged.push(b[ib]);
                ib += 1;
            }
        }
        merged.extend_from_slice(&a[ia..]);
        merged.extend_from_slice(&b[ib..]);
        (sign, merged)
    }

    // ------------------------------------------------------------------
    // Derivatives
    // ------------------------------------------------------------------

    /// Formal partial derivative of a polynomial element with respect to the
    /// polynomial generator `j`, integer coefficients reduced into the field.
    pub fn partial_derivative(&self, p: &Element, j: usize) -> Result<Element, AlgebraError> {
        let mut out = Element::zero();
        for (m, c) in p.iter() {
            if !m.ext.is_empty() {
                return Err(AlgebraError::NotPolynomial);
            }
            let e = m.exponent_of(j);
            if e == 0 {
                continue;
            }
            let mut poly = Vec::new();
            for &(i, exp) in &m.poly {
                if i as usize == j {
                    if exp > 1 {
                        poly.push((i, exp - 1));
                    }
                } else {
                    poly.push((i, exp));
                }
            }
            let factor = self.scalar(e as i64);
            out.add_term(Monomial { poly, ext: vec![] }, c * &factor);
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Degree bases
    // ------------------------------------------------------------------

    /// Complete, duplicate-free, canonically ordered list of the normal-form
    /// monomials of total degree `n`.
    pub fn basis_of_degree(&self, n: i64) -> Result<Vec<Monomial>, AlgebraError> {
        let mut sign = 0i64;
        for g in &self.poly_gens {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegreeGenerator(g.name.clone()));
            }
            if sign == 0 {
                sign = g.degree.signum();
            } else if g.degree.signum() != sign {
                return Err(AlgebraError::MixedDegreeSigns(sign, g.degree));
            }
        }
        let mut basis = Vec::new();
        let ext_count = self.ext_gens.len();
        assert!(ext_count < 24, "too many exterior generators to enumerate");
        for mask in 0u32..(1 << ext_count) {
            let mut ext = Vec::new();
            let mut ext_deg = 0i64;
            for i in 0..ext_count {
                if mask & (1 << i) != 0 {
                    ext.push(i as u16);
                    ext_deg += self.ext_gens[i].degree;
                }
            }
            let remaining = n - ext_deg;
            let mut poly = Vec::new();
            self.enumerate_poly(0, remaining, &mut poly, &mut |poly| {
                basis.push(Monomial {
                    poly: poly.to_vec(),
                    ext: ext.clone(),
                });
            });
        }
        basis.sort();
        Ok(basis)
    }

    fn enumerate_poly(
        &self,
        from: usize,
        remaining: i64,
        acc: &mut Vec<(u16, u32)>,
        emit: &mut impl FnMut(&[(u16, u32)]),
    ) {
        if remaining == 0 {
            emit(acc);
            return;
        }
        if from == self.poly_gens.len() {
            return;
        }
        let d = self.poly_gens[from].degree;
        // all polynomial degrees share the sign of `remaining` here or there
        // is nothing to emit
        if remaining.signum() != d.signum() {
            return;
        }
        let max = (remaining / d) as u32;
        // exponent 0 first keeps recursion simple; the caller sorts anyway
        for e in 0..=max {
            if e > 0 {
                acc.push((from as u16, e));
            }
            self.enumerate_poly(from + 1, remaining - d * e as i64, acc, emit);
            if e > 0 {
                acc.pop();
            }
        }
    }

    pub fn dim_of_degree(&self, n: i64) -> Result<usize, AlgebraError> {
        Ok(self.basis_of_degree(n)?.len())
    }

    // ------------------------------------------------------------------
    // Display
    // ------------------------------------------------------------------

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for &i in &m.ext {
            parts.push(self.ext_gens[i as usize].name.clone());
        }
        for &(i, e) in &m.poly {
            let name = &self.poly_gens[i as usize].name;
            if e == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }

    pub fn element_string(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in e.iter() {
            let ms = self.monomial_string(m);
            if m.is_one() {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(ms);
            } else {
                parts.push(format!("{c}*{ms}"));
            }
        }
        parts.join(" + ")
    }
}

fn merge_poly(a: &[(u16, u32)], b: &[(u16, u32)]) -> Vec<(u16, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].0.cmp(&b[ib].0) {
            std::cmp::Ordering::Less => {
                out.push(a[ia]);
                ia += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[ib]);
                ib += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[ia].0, a[ia].1 + b[ib].1));
                ia += 1;
                ib += 1;
            }
        }
    }
    out.extend_from_slice(&a[ia..]);
    out.extend_from_slice(&b[ib..]);
    out
}
