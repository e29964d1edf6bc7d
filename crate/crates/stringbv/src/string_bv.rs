//! The dual loop coproduct on `H^*(LX)` and its shifted product `m`, computed
//! by the inductive reduction rules:
//!
//! 1. `m(a (x) x_i b) = (-1)^{|x_i|(|a|-d)} x_i m(a (x) b) - (-1)^{d|x_i|} m(a x_i (x) b)`
//! 2. `m(x_{i_1}...x_{i_l} (x) x_{j_1}...x_{j_m}) = (-1)^{Nm+m} eps` on full index sets
//! 3. zero when the index sets do not cover `{1,...,N}`
//! 4. `m(P a (x) Q b) = (-1)^{|Q|(|a|-d)} P Q m(a (x) b)` for polynomial `P, Q`
//!
//! plus the closed form available when every exterior square vanishes, the
//! unit, the Gerstenhaber bracket and the canonical splitting isomorphism.

use crate::element::Element;
use crate::error::AlgebraError;
use crate::loop_model::LoopModel;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// Which exterior factor of the right argument rule 1 strips first. The
/// results agree; `Rightmost` is the shipped default and `Leftmost` feeds the
/// confluence tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StripOrder {
    #[default]
    Rightmost,
    Leftmost,
}

/// A loop model together with the cached unit of `(H^{*+d}(LX), m)`.
#[derive(Clone, Debug)]
pub struct BvContext {
    pub model: LoopModel,
    unit: Element,
}

impl BvContext {
    pub fn new(model: LoopModel) -> Result<BvContext, AlgebraError> {
        let mut ctx = BvContext {
            model,
            unit: Element::zero(),
        };
        let top = ctx.model.top_exterior();
        ctx.unit = if ctx.model.prime() == 2 {
            ctx.dlcop(&top, &top)?
        } else {
            // hypothesis (H) holds away from p = 2; the unit is x_1...x_N
            top
        };
        Ok(ctx)
    }

    /// The unit of the product `m` (equivalently of `Dlcop`):
    /// `Dlcop(x_1...x_N (x) x_1...x_N)` mod 2, `x_1...x_N` under (H).
    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn prime(&self) -> u32 {
        self.model.prime()
    }

    /// The shifted product `m(a (x) b) = (-1)^{d(|a|-d)} Dlcop(a (x) b)`.
    pub fn m(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.m_with_order(a, b, StripOrder::Rightmost)
    }

    /// The dual loop coproduct.
    pub fn dlcop(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        let deg_a = match self.model.loop_spec.degree(a)? {
            None => return Ok(Element::zero()),
            Some(d) => d,
        };
        let m = self.m(a, b)?;
        Ok(m.scale(&Scalar::sign_pow(
            self.prime(),
            self.model.d * (deg_a - self.model.d),
        )))
    }

    pub fn m_with_order(
        &self,
        a: &Element,
        b: &Element,
        order: StripOrder,
    ) -> Result<Element, AlgebraError> {
        self.model.loop_spec.degree(a)?;
        self.model.loop_spec.degree(b)?;
        let mut out = Element::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let c = ca * cb;
                out = &out + &self.m_monomials(ma, &c, mb, order);
            }
        }
        Ok(out)
    }

    fn m_monomials(&self, ma: &Monomial, ca: &Scalar, mb: &Monomial, order: StripOrder) -> Element {
        let spec = &self.model.loop_spec;
        let p = self.prime();
        let d = self.model.d;

        // rule 4 with P = 1: pull the polynomial coefficient of the right
        // argument out in front
        if !mb.poly.is_empty() {
            let q = mb.poly_part();
            let deg_q = spec.monomial_degree(&q);
            let deg_a = spec.monomial_degree(ma);
            let sign = Scalar::sign_pow(p, deg_q * (deg_a - d));
            let rec = self.m_monomials(ma, &(ca * &sign), &mb.ext_part(), order);
            return spec.multiply(&Element::monomial(q, p), &rec);
        }

        // base case: m(P x_I (x) 1) = P when I = {1,...,N}, else 0
        if mb.ext.is_empty() {
            if ma.ext.len() == self.model.n {
                return Element::from_monomial(ma.poly_part(), ca.clone());
            }
            return Element::zero();
        }

        // rule 1, stripping one exterior factor x_i of the right argument
        let pos = match order {
            StripOrder::Rightmost => mb.ext.len() - 1,
            StripOrder::Leftmost => 0,
        };
        let i = mb.ext[pos] as usize;
        let mut rest = mb.ext.clone();
        rest.remove(pos);
        // Koszul sign for writing x_J = +- x_i x_{J \ i}
        let mut koszul = 0i64;
        if p != 2 {
            let di = spec.ext_degree(i);
            for &t in &mb.ext[..pos] {
                koszul += di * spec.ext_degree(t as usize);
            }
        }
        let c = ca * &Scalar::sign_pow(p, koszul);
        let b_rest = Monomial {
            poly: vec![],
            ext: rest,
        };

        let deg_a = spec.monomial_degree(ma);
        let di = spec.ext_degree(i);

        // (-1)^{|x_i|(|a|-d)} x_i m(a (x) b')
        let sign1 = Scalar::sign_pow(p, di * (deg_a - d));
        let rec1 = self.m_monomials(ma, &(&c * &sign1), &b_rest, order);
        let t1 = spec.multiply(&Element::monomial(Monomial::ext_gen(i), p), &rec1);

        // -(-1)^{d |x_i|} m(a x_i (x) b'), with a x_i normal-formed (square
        // rules may fire, so this is bilinear recursion)
        let sign2 = -&Scalar::sign_pow(p, d * di);
        let axi = spec.multiply_monomials(ma, &Monomial::ext_gen(i), &(&c * &sign2));
        let mut t2 = Element::zero();
        for (m, cc) in axi.iter() {
            t2 = &t2 + &self.m_monomials(m, cc, &b_rest, order);
        }
        &t1 + &t2
    }

    /// Closed form of `m` under hypothesis (H):
    /// `m(sv_I a (x) sv_J b) = (-1)^{eps' + eps + m + u + lu + Nm} sv_K a b`
    /// when `I u J = {1,...,N}` (with `K = I n J`), zero otherwise.
    pub fn m_closed_form(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        if !self.model.hypothesis_h {
            return Err(AlgebraError::RequiresHypothesisH);
        }
        let spec = &self.model.loop_spec;
        let p = self.prime();
        let n = self.model.n;
        spec.degree(a)?;
        spec.degree(b)?;
        let mut out = Element::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let i_set: Vec<usize> = ma.ext.iter().map(|&x| x as usize).collect();
                let j_set: Vec<usize> = mb.ext.iter().map(|&x| x as usize).collect();
                let mut union: Vec<usize> = i_set.iter().chain(j_set.iter()).copied().collect();
                union.sort();
                union.dedup();
                if union.len() != n {
                    continue;
                }
                let k_set: Vec<usize> = i_set
                    .iter()
                    .copied()
                    .filter(|i| j_set.contains(i))
                    .collect();
                let j_minus_k: Vec<usize> = j_set
                    .iter()
                    .copied()
                    .filter(|j| !k_set.contains(j))
                    .collect();

                // eps: J -> (K, J \ K), both sides in ascending order
                let mut word: Vec<usize> = Vec::with_capacity(j_set.len());
                for v in k_set.iter().chain(j_minus_k.iter()) {
                    word.push(j_set.iter().position(|x| x == v).unwrap());
                }
                let eps = inversions(&word);

                // eps': (I, J \ K) -> (1,...,N)
                let word2: Vec<usize> = i_set.iter().chain(j_minus_k.iter()).copied().collect();
                let eps_prime = inversions(&word2);

                let l = i_set.len() as i64;
                let m_len = j_set.len() as i64;
                let u = k_set.len() as i64;
                let exponent = eps_prime + eps + m_len + u + l * u + (n as i64) * m_len;
                let sign = Scalar::sign_pow(p, exponent);

                let coeff = &(ca * cb) * &sign;
                let ab = self.base_product(&ma.poly_part(), &mb.poly_part());
                let xk = Monomial::ext_set(&k_set);
                let term = spec.multiply_monomials(&ab, &xk, &coeff);
                out = &out + &term;
            }
        }
        Ok(out)
    }

    fn base_product(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let spec = &self.model.loop_spec;
        let prod = spec.multiply_monomials(a, b, &Scalar::one(self.prime()));
        debug_assert_eq!(prod.len(), 1);
        let m = prod.iter().next().unwrap().0.clone();
        m
    }

    /// `{a, b} = (-1)^{|a|} Delta(m(a (x) b)) - (-1)^{|a|} m(Delta a (x) b)
    ///  - m(a (x) Delta b)`.
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        let deg_a = match self.model.loop_spec.degree(a)? {
            None => return Ok(Element::zero()),
            Some(d) => d,
        };
        let sign = Scalar::sign_pow(self.prime(), deg_a);
        let t1 = self.model.delta(&self.m(a, b)?)?.scale(&sign);
        let t2 = self.m(&self.model.delta(a)?, b)?.scale(&sign);
        let t3 = self.m(a, &self.model.delta(b)?)?;
        Ok(&(&t1 - &t2) - &t3)
    }

    /// The involution `z -> Dlcop(x_1...x_N (x) z)` of the second proof of the
    /// splitting theorem; squares to the identity mod 2.
    pub fn psi_involution(&self, z: &Element) -> Result<Element, AlgebraError> {
        if self.prime() != 2 {
            return Err(AlgebraError::RequiresMod2);
        }
        self.dlcop(&self.model.top_exterior(), z)
    }

    /// Canonical splitting `psi(a (x) x_K) = Dlcop(x_1...x_N (x) a x_K)`
    /// realizing `K[V] (x) Lambda(sV)^v = H^{*+d}(LX; F_2)` as algebras.
    pub fn canonical_splitting(
        &self,
        a: &Element,
        k_set: &[usize],
    ) -> Result<Element, AlgebraError> {
        if self.prime() != 2 {
            return Err(AlgebraError::RequiresMod2);
        }
        for (m, _) in a.iter() {
            if !m.ext.is_empty() {
                return Err(AlgebraError::NotPolynomial);
            }
        }
        let xk = Element::monomial(Monomial::ext_set(k_set), 2);
        let axk = self.model.loop_spec.multiply(a, &xk);
        self.psi_involution(&axk)
    }

    /// `ev^*`: a base class viewed in the loop algebra (the polynomial
    /// generators share indices).
    pub fn ev_pullback(&self, p: &Element) -> Element {
        p.clone()
    }
}

fn inversions(word: &[usize]) -> i64 {
    let mut count = 0i64;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}
