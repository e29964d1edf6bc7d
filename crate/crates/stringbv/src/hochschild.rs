//! Hochschild cohomology of a free graded-commutative algebra
//! `A = Lambda(U) (x) K[W]`, modeled as `A (x) S(s^{-1} V^v)` with one dual
//! generator of degree `1 - |v|` per generator `v` of `V = U + W`. The
//! Gerstenhaber bracket pairs dual generators against their mates,
//! `{1 (x) s^{-1}phi, v (x) 1} = (-1)^{|phi|} phi(v)`, and vanishes on
//! `A (x) A` and on the dual part; the BV operator exists for purely exterior
//! `V` and is trivial on both tensor factors.
//!
//! The module also carries the trace criteria deciding `1 in Im Delta` for a
//! finite-dimensional Frobenius algebra: `1 in Im Delta` iff some degree-0
//! derivation commutes with the trace.

use crate::algebra::{AlgebraSpec, Generator};
use crate::element::Element;
use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::loop_model::LoopModel;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// One generator of `V` with its exterior/polynomial placement and the
/// display name of its dual.
#[derive(Clone, Debug)]
pub struct HhGen {
    pub name: String,
    pub degree: i64,
    pub exterior: bool,
    pub dual_name: String,
}

impl HhGen {
    pub fn exterior(name: impl Into<String>, degree: i64, dual_name: impl Into<String>) -> HhGen {
        HhGen {
            name: name.into(),
            degree,
            exterior: true,
            dual_name: dual_name.into(),
        }
    }

    pub fn polynomial(
        name: impl Into<String>,
        degree: i64,
        dual_name: impl Into<String>,
    ) -> HhGen {
        HhGen {
            name: name.into(),
            degree,
            exterior: false,
            dual_name: dual_name.into(),
        }
    }
}

/// Where a combined-spec generator lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Ext(usize),
    Poly(usize),
}

/// The model `A (x) S(s^{-1} V^v)` as one graded-commutative presentation,
/// remembering which generators form `A` and the `v <-> s^{-1} v^v` pairing.
#[derive(Clone, Debug)]
pub struct HhAlgebra {
    pub spec: AlgebraSpec,
    gens: Vec<HhGen>,
    a_slots: Vec<Slot>,
    dual_slots: Vec<Slot>,
    u_count: usize,
    w_count: usize,
}

pub fn build_hh(gens: &[HhGen], prime: u32) -> Result<HhAlgebra, AlgebraError> {
    for g in gens {
        if prime != 2 && !g.exterior && g.degree % 2 != 0 {
            return Err(AlgebraError::Hochschild(format!(
                "polynomial generator `{}` of odd degree {} requires p = 2",
                g.name, g.degree
            )));
        }
        if prime != 2 && g.exterior && g.degree % 2 == 0 {
            return Err(AlgebraError::Hochschild(format!(
                "exterior generator `{}` of even degree {} requires p = 2",
                g.name, g.degree
            )));
        }
    }
    let u: Vec<(usize, &HhGen)> = gens.iter().enumerate().filter(|(_, g)| g.exterior).collect();
    let w: Vec<(usize, &HhGen)> = gens.iter().enumerate().filter(|(_, g)| !g.exterior).collect();

    // exterior part: U, then the duals of W; polynomial part: W, then the
    // duals of U; deg(dual of v) = 1 - |v|
    let mut ext = Vec::new();
    let mut poly = Vec::new();
    for (_, g) in &u {
        ext.push(Generator::new(g.name.clone(), g.degree));
    }
    for (_, g) in &w {
        ext.push(Generator::new(g.dual_name.clone(), 1 - g.degree));
    }
    for (_, g) in &w {
        poly.push(Generator::new(g.name.clone(), g.degree));
    }
    for (_, g) in &u {
        poly.push(Generator::new(g.dual_name.clone(), 1 - g.degree));
    }
    let spec = AlgebraSpec::new(prime, poly, ext)?;

    let mut a_slots = vec![Slot::Ext(0); gens.len()];
    let mut dual_slots = vec![Slot::Ext(0); gens.len()];
    for (pos, (k, _)) in u.iter().enumerate() {
        a_slots[*k] = Slot::Ext(pos);
        dual_slots[*k] = Slot::Poly(w.len() + pos);
    }
    for (pos, (k, _)) in w.iter().enumerate() {
        a_slots[*k] = Slot::Poly(pos);
        dual_slots[*k] = Slot::Ext(u.len() + pos);
    }
    Ok(HhAlgebra {
        spec,
        gens: gens.to_vec(),
        a_slots,
        dual_slots,
        u_count: u.len(),
        w_count: w.len(),
    })
}

/// The Hochschild model of `H_*(G) = Lambda(sV)^v` for a loop model: exterior
/// generators in negative degrees `-( |y_j| - 1 )`, duals back in degree
/// `|y_j|`.
pub fn hh_of_loop_homology(model: &LoopModel) -> Result<HhAlgebra, AlgebraError> {
    let degrees: Vec<i64> = model
        .base
        .poly_gens()
        .iter()
        .map(|g| -(g.degree - 1))
        .collect();
    let distinct = {
        let mut s = degrees.clone();
        s.sort();
        s.dedup();
        s.len() == degrees.len()
    };
    let gens: Vec<HhGen> = degrees
        .iter()
        .enumerate()
        .map(|(i, &deg)| {
            let (name, dual_name) = if distinct {
                (format!("x{deg}"), format!("y{}", 1 - deg))
            } else {
                (format!("x{}", i + 1), format!("y{}", i + 1))
            };
            HhGen {
                name,
                degree: deg,
                exterior: true,
                dual_name,
            }
        })
        .collect();
    build_hh(&gens, model.prime())
}

/// A single generator factor of a monomial, in the combined spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Factor {
    slot: Slot,
    degree: i64,
}

impl HhAlgebra {
    pub fn prime(&self) -> u32 {
        self.spec.prime()
    }

    pub fn generators(&self) -> &[HhGen] {
        &self.gens
    }

    /// `v` as an element of the model.
    pub fn a_generator(&self, k: usize) -> Element {
        self.slot_element(self.a_slots[k])
    }

    /// `s^{-1} v^v` as an element of the model.
    pub fn dual_generator(&self, k: usize) -> Element {
        self.slot_element(self.dual_slots[k])
    }

    fn slot_element(&self, slot: Slot) -> Element {
        let m = match slot {
            Slot::Ext(i) => Monomial::ext_gen(i),
            Slot::Poly(i) => Monomial::poly_gen(i),
        };
        Element::monomial(m, self.prime())
    }

    fn slot_degree(&self, slot: Slot) -> i64 {
        match slot {
            Slot::Ext(i) => self.spec.ext_degree(i),
            Slot::Poly(i) => self.spec.poly_degree(i),
        }
    }

    /// Factors of a normal-form monomial: polynomial generators ascending
    /// with multiplicity, then exterior ascending. Peeling the first or the
    /// last factor off this list is sign-free.
    fn factors(&self, m: &Monomial) -> Vec<Factor> {
        let mut out = Vec::new();
        for &(i, e) in &m.poly {
            for _ in 0..e {
                out.push(Factor {
                    slot: Slot::Poly(i as usize),
                    degree: self.spec.poly_degree(i as usize),
                });
            }
        }
        for &i in &m.ext {
            out.push(Factor {
                slot: Slot::Ext(i as usize),
                degree: self.spec.ext_degree(i as usize),
            });
        }
        out
    }

    fn monomial_of(&self, factors: &[Factor]) -> Monomial {
        let mut poly: Vec<(u16, u32)> = Vec::new();
        let mut ext = Vec::new();
        for f in factors {
            match f.slot {
                Slot::Poly(i) => match poly.iter_mut().find(|(j, _)| *j as usize == i) {
                    Some((_, e)) => *e += 1,
                    None => poly.push((i as u16, 1)),
                },
                Slot::Ext(i) => ext.push(i as u16),
            }
        }
        poly.sort();
        ext.sort();
        Monomial { poly, ext }
    }

    /// Bracket value on a pair of generators: nonzero only on dual pairs,
    /// `{s^{-1} phi, v} = (-1)^{|phi|} phi(v)` with `|phi| = |s^{-1} phi| - 1`,
    /// extended to `{v, s^{-1} phi}` by shifted antisymmetry.
    fn generator_bracket(&self, g: Slot, h: Slot) -> Scalar {
        let p = self.prime();
        for k in 0..self.gens.len() {
            let v = self.a_slots[k];
            let phi = self.dual_slots[k];
            let dv = self.slot_degree(v);
            let dphi = self.slot_degree(phi);
            if g == phi && h == v {
                return Scalar::sign_pow(p, dphi - 1);
            }
            if g == v && h == phi {
                // {v, phi} = -(-1)^{(|v|-1)(|phi|-1)} {phi, v}
                let s = Scalar::sign_pow(p, (dv - 1) * (dphi - 1));
                return -&(&s * &Scalar::sign_pow(p, dphi - 1));
            }
        }
        Scalar::zero(p)
    }

    /// Gerstenhaber bracket, extended from the generators as a biderivation:
    /// `{a, bc} = {a,b} c + (-1)^{(|a|-1)|b|} b {a,c}` and
    /// `{ab, c} = a {b,c} + (-1)^{(|c|-1)|b|} {a,c} b`.
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.spec.degree(a)?;
        self.spec.degree(b)?;
        let mut out = Element::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let term = self.bracket_monomials(ma, mb);
                out = &out + &term.scale(&(ca * cb));
            }
        }
        Ok(out)
    }

    fn bracket_monomials(&self, ma: &Monomial, mb: &Monomial) -> Element {
        let fa = self.factors(ma);
        self.bracket_factors(&fa, mb)
    }

    fn bracket_factors(&self, fa: &[Factor], mb: &Monomial) -> Element {
        let p = self.prime();
        match fa.len() {
            0 => Element::zero(),
            1 => self.bracket_gen_monomial(fa[0], mb),
            _ => {
                // {g rest, c} = g {rest, c} + (-1)^{(|c|-1)|rest|} {g, c} rest
                let g = fa[0];
                let rest = &fa[1..];
                let rest_deg: i64 = rest.iter().map(|f| f.degree).sum();
                let c_deg = self.spec.monomial_degree(mb);
                let t1 = self.spec.multiply(
                    &self.slot_element(g.slot),
                    &self.bracket_factors(rest, mb),
                );
                let sign = Scalar::sign_pow(p, (c_deg - 1) * rest_deg);
                let rest_el = Element::monomial(self.monomial_of(rest), p);
                let t2 = self
                    .spec
                    .multiply(&self.bracket_gen_monomial(g, mb), &rest_el)
                    .scale(&sign);
                &t1 + &t2
            }
        }
    }

    fn bracket_gen_monomial(&self, g: Factor, mb: &Monomial) -> Element {
        let p = self.prime();
        let fb = self.factors(mb);
        match fb.len() {
            0 => Element::zero(),
            1 => Element::from_monomial(Monomial::one(), self.generator_bracket(g.slot, fb[0].slot)),
            _ => {
                // {g, h rest} = {g,h} rest + (-1)^{(|g|-1)|h|} h {g, rest}
                let h = fb[0];
                let rest = self.monomial_of(&fb[1..]);
                let rest_el = Element::monomial(rest.clone(), p);
                let t1 = rest_el.scale(&self.generator_bracket(g.slot, h.slot));
                let sign = Scalar::sign_pow(p, (g.degree - 1) * h.degree);
                let t2 = self
                    .spec
                    .multiply(&self.slot_element(h.slot), &self.bracket_gen_monomial(g, &rest))
                    .scale(&sign);
                &t1 + &t2
            }
        }
    }

    /// The BV operator for purely exterior `V`: zero on generators, extended
    /// by `Delta(a b) = Delta(a) b + (-1)^{|a|} a Delta(b) + (-1)^{|a|} {a, b}`
    /// peeling one generator at a time.
    pub fn delta(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.check_delta_defined()?;
        self.spec.degree(a)?;
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            out = &out + &self.delta_monomial(m, false).scale(c);
        }
        Ok(out)
    }

    fn check_delta_defined(&self) -> Result<(), AlgebraError> {
        if self.w_count > 0 {
            return Err(AlgebraError::Hochschild(
                "the BV operator is defined only for purely exterior V".into(),
            ));
        }
        let _ = self.u_count;
        Ok(())
    }

    fn delta_monomial(&self, m: &Monomial, peel_last: bool) -> Element {
        let factors = self.factors(m);
        if factors.len() <= 1 {
            return Element::zero();
        }
        let p = self.prime();
        if peel_last {
            // Delta(rest g) = Delta(rest) g + (-1)^{|rest|} {rest, g}
            let g = *factors.last().unwrap();
            let rest = self.monomial_of(&factors[..factors.len() - 1]);
            let rest_deg = self.spec.monomial_degree(&rest);
            let t1 = self.spec.multiply(
                &self.delta_monomial(&rest, peel_last),
                &self.slot_element(g.slot),
            );
            let t2 = self
                .bracket_factors(&factors[..factors.len() - 1], &self.monomial_of(&[g]))
                .scale(&Scalar::sign_pow(p, rest_deg));
            &t1 + &t2
        } else {
            // Delta(g rest) = (-1)^{|g|} (g Delta(rest) + {g, rest})
            let g = factors[0];
            let rest = self.monomial_of(&factors[1..]);
            let t1 = self.spec.multiply(
                &self.slot_element(g.slot),
                &self.delta_monomial(&rest, peel_last),
            );
            let t2 = self.bracket_gen_monomial(g, &rest);
            (&t1 + &t2).scale(&Scalar::sign_pow(p, g.degree))
        }
    }

    /// Same operator, peeling the last factor; used to check order
    /// independence.
    pub fn delta_peel_last(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.check_delta_defined()?;
        self.spec.degree(a)?;
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            out = &out + &self.delta_monomial(m, true).scale(c);
        }
        Ok(out)
    }
}

// ----------------------------------------------------------------------
// Frobenius algebras and the 1 in Im(Delta) criteria
// ----------------------------------------------------------------------

/// A finite-dimensional graded-commutative algebra with a distinguished top
/// class: an [`AlgebraSpec`] whose polynomial generators are truncated by
/// exponent caps, together with the top monomial. The trace is the
/// coefficient functional of the top monomial.
#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra {
    pub spec: AlgebraSpec,
    caps: Vec<u32>,
    pub top: Monomial,
}

impl FrobeniusAlgebra {
    /// Exterior algebra `Lambda(V)` with top class `x_1 ... x_N`.
    pub fn exterior(gens: Vec<Generator>, prime: u32) -> Result<FrobeniusAlgebra, AlgebraError> {
        let n = gens.len();
        let spec = AlgebraSpec::new(prime, vec![], gens)?;
        Ok(FrobeniusAlgebra {
            spec,
            caps: vec![],
            top: Monomial::ext_set(&(0..n).collect::<Vec<_>>()),
        })
    }

    /// Truncated polynomial algebra `K[x]/x^{n+1}` with top class `x^n`.
    pub fn truncated_poly(
        name: impl Into<String>,
        degree: i64,
        n: u32,
        prime: u32,
    ) -> Result<FrobeniusAlgebra, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::Hochschild(
                "truncation exponent must be at least 1".into(),
            ));
        }
        let spec = AlgebraSpec::new(prime, vec![Generator::new(name, degree)], vec![])?;
        Ok(FrobeniusAlgebra {
            spec,
            caps: vec![n],
            top: Monomial::poly_power(0, n),
        })
    }

    fn truncate(&self, e: &Element) -> Element {
        if self.caps.is_empty() {
            return e.clone();
        }
        e.map_monomials(|m| {
            self.caps
                .iter()
                .enumerate()
                .all(|(i, &cap)| m.exponent_of(i) <= cap)
                .then(|| m.clone())
        })
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.truncate(&self.spec.multiply(a, b))
    }

    pub fn basis(&self, degree: i64) -> Result<Vec<Monomial>, AlgebraError> {
        Ok(self
            .spec
            .basis_of_degree(degree)?
            .into_iter()
            .filter(|m| {
                self.caps
                    .iter()
                    .enumerate()
                    .all(|(i, &cap)| m.exponent_of(i) <= cap)
            })
            .collect())
    }

    pub fn top_degree(&self) -> i64 {
        self.spec.monomial_degree(&self.top)
    }

    /// Every basis monomial, over the full (finite) degree range.
    pub fn all_basis(&self) -> Result<Vec<Monomial>, AlgebraError> {
        let mut lo = 0i64;
        let mut hi = 0i64;
        for g in self.spec.ext_gens() {
            lo += g.degree.min(0);
            hi += g.degree.max(0);
        }
        for (i, g) in self.spec.poly_gens().iter().enumerate() {
            let span = g.degree * self.caps[i] as i64;
            lo += span.min(0);
            hi += span.max(0);
        }
        let mut out = Vec::new();
        for n in lo..=hi {
            out.extend(self.basis(n)?);
        }
        Ok(out)
    }

    /// The graded trace: coefficient of the top monomial.
    pub fn trace(&self, e: &Element) -> Scalar {
        e.coefficient(&self.top)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.spec.prime()))
    }

    /// Trace nondegeneracy on the monomial basis: every basis monomial has a
    /// complementary monomial multiplying to the top class.
    pub fn trace_is_nondegenerate(&self) -> Result<bool, AlgebraError> {
        let all = self.all_basis()?;
        let p = self.spec.prime();
        for m in &all {
            let me = Element::monomial(m.clone(), p);
            let mut hit = false;
            for w in &all {
                let prod = self.multiply(&me, &Element::monomial(w.clone(), p));
                if !self.trace(&prod).is_zero() {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A derivation given by generator images (exterior generators first, then
/// polynomial generators, in spec order).
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationTable {
    pub ext_images: Vec<Element>,
    pub poly_images: Vec<Element>,
}

impl DerivationTable {
    pub fn zero(fa: &FrobeniusAlgebra) -> DerivationTable {
        DerivationTable {
            ext_images: vec![Element::zero(); fa.spec.ext_gens().len()],
            poly_images: vec![Element::zero(); fa.spec.poly_gens().len()],
        }
    }

    fn image(&self, slot: Slot) -> &Element {
        match slot {
            Slot::Ext(i) => &self.ext_images[i],
            Slot::Poly(i) => &self.poly_images[i],
        }
    }

    /// Common degree shift of the derivation; `None` when all images vanish.
    pub fn degree(&self, fa: &FrobeniusAlgebra) -> Result<Option<i64>, AlgebraError> {
        let mut shift = None;
        let gens = fa
            .spec
            .ext_gens()
            .iter()
            .enumerate()
            .map(|(i, g)| (Slot::Ext(i), g.degree))
            .chain(
                fa.spec
                    .poly_gens()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (Slot::Poly(i), g.degree)),
            );
        for (slot, gdeg) in gens {
            if let Some(d) = fa.spec.degree(self.image(slot))? {
                let s = d - gdeg;
                match shift {
                    None => shift = Some(s),
                    Some(s0) if s0 != s => {
                        return Err(AlgebraError::Hochschild(
                            "derivation images have mixed degree shifts".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(shift)
    }
}

fn factor_list(fa: &FrobeniusAlgebra, m: &Monomial) -> Vec<(Slot, i64)> {
    let mut out = Vec::new();
    for &(i, e) in &m.poly {
        for _ in 0..e {
            out.push((Slot::Poly(i as usize), fa.spec.poly_degree(i as usize)));
        }
    }
    for &i in &m.ext {
        out.push((Slot::Ext(i as usize), fa.spec.ext_degree(i as usize)));
    }
    out
}

/// Leibniz extension of a generator-image table to a monomial:
/// `d(f_1...f_k) = sum_i (-1)^{|d| |f_1...f_{i-1}|} f_1... d(f_i) ...f_k`.
fn apply_derivation(
    fa: &FrobeniusAlgebra,
    table: &DerivationTable,
    d_degree: i64,
    m: &Monomial,
) -> Element {
    let p = fa.spec.prime();
    let factors = factor_list(fa, m);
    let mut out = Element::zero();
    let mut prefix_degree = 0i64;
    for (i, (slot, gdeg)) in factors.iter().enumerate() {
        let image = table.image(*slot);
        if !image.is_zero() {
            let prefix = Element::monomial(
                monomial_from_factors(&factors[..i]),
                p,
            );
            let suffix = Element::monomial(
                monomial_from_factors(&factors[i + 1..]),
                p,
            );
            let sign = Scalar::sign_pow(p, d_degree * prefix_degree);
            let term = fa.multiply(&fa.multiply(&prefix, image), &suffix);
            out = &out + &term.scale(&sign);
        }
        prefix_degree += gdeg;
    }
    out
}

fn apply_derivation_element(
    fa: &FrobeniusAlgebra,
    table: &DerivationTable,
    d_degree: i64,
    e: &Element,
) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.iter() {
        out = &out + &apply_derivation(fa, table, d_degree, m).scale(c);
    }
    out
}

fn monomial_from_factors(factors: &[(Slot, i64)]) -> Monomial {
    let mut poly: Vec<(u16, u32)> = Vec::new();
    let mut ext = Vec::new();
    for (slot, _) in factors {
        match slot {
            Slot::Poly(i) => match poly.iter_mut().find(|(j, _)| *j as usize == *i) {
                Some((_, e)) => *e += 1,
                None => poly.push((*i as u16, 1)),
            },
            Slot::Ext(i) => ext.push(*i as u16),
        }
    }
    poly.sort();
    ext.sort();
    Monomial { poly, ext }
}

/// The Leibniz consistency defects of a table: for each exterior generator,
/// `d(x) x + (-1)^{|d||x|} x d(x) - d(x^2 rule)`, and for each capped
/// polynomial generator, `(c+1) x^c d(x)` in the truncated algebra.
fn leibniz_defects(
    fa: &FrobeniusAlgebra,
    table: &DerivationTable,
    d_degree: i64,
) -> Result<Vec<Element>, AlgebraError> {
    let p = fa.spec.prime();
    let mut out = Vec::new();
    for (i, _) in fa.spec.ext_gens().iter().enumerate() {
        let x = Element::monomial(Monomial::ext_gen(i), p);
        let dx = &table.ext_images[i];
        let sign = Scalar::sign_pow(p, d_degree * fa.spec.ext_degree(i));
        let lhs = &fa.multiply(dx, &x) + &fa.multiply(&x, dx).scale(&sign);
        let rhs = apply_derivation_element(fa, table, d_degree, fa.spec.square_rule(i));
        out.push(&lhs - &rhs);
    }
    for (i, &cap) in fa.caps.iter().enumerate() {
        let xc = Element::monomial(Monomial::poly_power(i, cap), p);
        let factor = Scalar::from_int(p, cap as i64 + 1);
        let defect = fa
            .multiply(&xc, &table.poly_images[i])
            .scale(&factor);
        out.push(defect);
    }
    Ok(out)
}

/// Decide `1 in Im Delta` in `HH^*(A, A)` by searching for a degree-0
/// derivation commuting with the trace (`tr o d = tr`); returns the witness.
pub fn derivation_commuting_with_trace(
    fa: &FrobeniusAlgebra,
) -> Result<Option<DerivationTable>, AlgebraError> {
    if !fa.trace_is_nondegenerate()? {
        return Err(AlgebraError::Hochschild("degenerate trace".into()));
    }
    let p = fa.spec.prime();
    // unknowns: one scalar per (generator, basis monomial of the same degree)
    let mut unknowns: Vec<(Slot, Monomial)> = Vec::new();
    for (i, g) in fa.spec.ext_gens().iter().enumerate() {
        for m in fa.basis(g.degree)? {
            unknowns.push((Slot::Ext(i), m));
        }
    }
    for (i, g) in fa.spec.poly_gens().iter().enumerate() {
        for m in fa.basis(g.degree)? {
            unknowns.push((Slot::Poly(i), m));
        }
    }

    let unit_table = |&(slot, ref m): &(Slot, Monomial)| {
        let mut t = DerivationTable::zero(fa);
        let e = Element::monomial(m.clone(), p);
        match slot {
            Slot::Ext(i) => t.ext_images[i] = e,
            Slot::Poly(i) => t.poly_images[i] = e,
        }
        t
    };

    // rows: trace condition on the top-degree basis, then the Leibniz
    // consistency defects coordinate by coordinate
    let top_basis = fa.basis(fa.top_degree())?;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();

    let mut defect_supports: Vec<Vec<Monomial>> = Vec::new();
    let per_unknown: Vec<(Vec<Scalar>, Vec<Element>)> = unknowns
        .iter()
        .map(|u| {
            let t = unit_table(u);
            let traces: Vec<Scalar> = top_basis
                .iter()
                .map(|a0| fa.trace(&apply_derivation(fa, &t, 0, a0)))
                .collect();
            let defects = leibniz_defects(fa, &t, 0).expect("defects");
            (traces, defects)
        })
        .collect();

    for (_, defects) in &per_unknown {
        for (k, d) in defects.iter().enumerate() {
            if defect_supports.len() <= k {
                defect_supports.push(Vec::new());
            }
            for (m, _) in d.iter() {
                if !defect_supports[k].contains(m) {
                    defect_supports[k].push(m.clone());
                }
            }
        }
    }

    for (r, a0) in top_basis.iter().enumerate() {
        let row: Vec<Scalar> = per_unknown.iter().map(|(t, _)| t[r].clone()).collect();
        rows.push(row);
        rhs.push(fa.trace(&Element::monomial(a0.clone(), p)));
    }
    for (k, support) in defect_supports.iter().enumerate() {
        for m in support {
            let row: Vec<Scalar> = per_unknown
                .iter()
                .map(|(_, defects)| {
                    defects[k]
                        .coefficient(m)
                        .cloned()
                        .unwrap_or_else(|| Scalar::zero(p))
                })
                .collect();
            rows.push(row);
            rhs.push(Scalar::zero(p));
        }
    }

    let mut mat = Matrix::zero(p, rows.len(), unknowns.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            mat.set(r, c, v.clone());
        }
    }
    let Some(solution) = mat.solve(&rhs) else {
        return Ok(None);
    };
    let mut table = DerivationTable::zero(fa);
    for ((slot, m), lambda) in unknowns.iter().zip(solution) {
        if lambda.is_zero() {
            continue;
        }
        let term = Element::from_monomial(m.clone(), lambda);
        match slot {
            Slot::Ext(i) => table.ext_images[*i] = &table.ext_images[*i] + &term,
            Slot::Poly(i) => table.poly_images[*i] = &table.poly_images[*i] + &term,
        }
    }
    Ok(Some(table))
}

/// Criterion for `Delta([d o s^{-1}]) = [a]`: checks
/// `(-1)^{1+|d|} tr(d(a_0)) = tr(a a_0)` on the whole basis. Errors when the
/// table fails the Leibniz consistency check.
pub fn delta_of_derivation_class(
    fa: &FrobeniusAlgebra,
    table: &DerivationTable,
    a: &Element,
) -> Result<bool, AlgebraError> {
    let d_degree = table.degree(fa)?.unwrap_or(0);
    for defect in leibniz_defects(fa, table, d_degree)? {
        if !defect.is_zero() {
            return Err(AlgebraError::Hochschild(
                "generator images do not extend to a derivation".into(),
            ));
        }
    }
    let p = fa.spec.prime();
    let sign = Scalar::sign_pow(p, 1 + d_degree);
    for a0 in fa.all_basis()? {
        let a0e = Element::monomial(a0, p);
        let lhs = &sign * &fa.trace(&apply_derivation_element(fa, table, d_degree, &a0e));
        let rhs = fa.trace(&fa.multiply(a, &a0e));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
