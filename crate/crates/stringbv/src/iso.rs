//! Exhaustive bounded-degree search for graded-algebra / Gerstenhaber / BV
//! isomorphisms between two freely presented BV algebras, transport of the
//! BV operator along an isomorphism, and the `1 in Im Delta` obstruction.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::element::Element;
use crate::error::AlgebraError;
use crate::hochschild::HhAlgebra;
use crate::linalg::{rank_of, solve_linear};
use crate::monomial::Monomial;
use crate::par::{map_indexed, ExecMode};
use crate::scalar::Scalar;
use crate::string_bv::BvContext;

// ----------------------------------------------------------------------
// BV algebras in free presentation
// ----------------------------------------------------------------------

#[derive(Clone, Debug)]
enum DeltaProvider {
    /// Tabulated on basis monomials for degrees in a window (transported
    /// operators).
    Table {
        entries: HashMap<Monomial, Element>,
        lo: i64,
        hi: i64,
    },
    /// Computed on demand (Hochschild models).
    Hochschild(HhAlgebra),
}

/// A freely presented graded-commutative algebra (unit = 1) with a degree -1
/// BV operator. Both sides of an isomorphism search are of this shape.
#[derive(Clone, Debug)]
pub struct BvSide {
    pub spec: AlgebraSpec,
    delta: DeltaProvider,
}

impl BvSide {
    pub fn from_hochschild(hh: HhAlgebra) -> Result<BvSide, AlgebraError> {
        if hh.spec.has_square_rules() {
            return Err(AlgebraError::Iso("side must be freely presented".into()));
        }
        // the BV operator must exist on this model
        hh.delta(&Element::one(hh.prime()))?;
        Ok(BvSide {
            spec: hh.spec.clone(),
            delta: DeltaProvider::Hochschild(hh),
        })
    }

    pub fn prime(&self) -> u32 {
        self.spec.prime()
    }

    pub fn delta(&self, e: &Element) -> Result<Element, AlgebraError> {
        match &self.delta {
            DeltaProvider::Hochschild(hh) => hh.delta(e),
            DeltaProvider::Table { entries, lo, hi } => {
                let mut out = Element::zero();
                for (m, c) in e.iter() {
                    let d = self.spec.monomial_degree(m);
                    if d < *lo || d > *hi {
                        return Err(AlgebraError::Transport(format!(
                            "Delta table covers degrees {lo}..={hi}, monomial has degree {d}"
                        )));
                    }
                    if let Some(v) = entries.get(m) {
                        out = &out + &v.scale(c);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Entries of the tabulated operator within a degree range, in canonical
    /// monomial order.
    pub fn delta_table(&self, lo: i64, hi: i64) -> Result<Vec<(Monomial, Element)>, AlgebraError> {
        let mut out = Vec::new();
        for n in lo..=hi {
            for m in self.spec.basis_of_degree(n)? {
                let v = self.delta(&Element::monomial(m.clone(), self.prime()))?;
                out.push((m, v));
            }
        }
        Ok(out)
    }

    /// Bracket derived from the BV operator:
    /// `{a,b} = (-1)^{|a|} Delta(ab) - (-1)^{|a|} Delta(a) b - a Delta(b)`.
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        let Some(da) = self.spec.degree(a)? else {
            return Ok(Element::zero());
        };
        let sign = Scalar::sign_pow(self.prime(), da);
        let t1 = self.delta(&self.spec.multiply(a, b))?.scale(&sign);
        let t2 = self.spec.multiply(&self.delta(a)?, b).scale(&sign);
        let t3 = self.spec.multiply(a, &self.delta(b)?);
        Ok(&(&t1 - &t2) - &t3)
    }

    /// Exact solve for `Delta(w) = 1` over the degree-1 basis.
    pub fn unit_in_image_delta(&self) -> Result<bool, AlgebraError> {
        let basis = self.spec.basis_of_degree(1)?;
        let columns: Vec<Element> = basis
            .iter()
            .map(|m| self.delta(&Element::monomial(m.clone(), self.prime())))
            .collect::<Result<_, _>>()?;
        Ok(solve_linear(&self.spec, &columns, &Element::one(self.prime()))?.is_some())
    }
}

/// Generators of a free presentation: exterior generators first, then
/// polynomial, following the spec order. Candidate images align with this.
pub fn generator_list(spec: &AlgebraSpec) -> Vec<(String, i64)> {
    spec.ext_gens()
        .iter()
        .chain(spec.poly_gens().iter())
        .map(|g| (g.name.clone(), g.degree))
        .collect()
}

fn generator_elements(spec: &AlgebraSpec) -> Vec<Element> {
    let p = spec.prime();
    let mut out = Vec::new();
    for i in 0..spec.ext_gens().len() {
        out.push(Element::monomial(Monomial::ext_gen(i), p));
    }
    for i in 0..spec.poly_gens().len() {
        out.push(Element::monomial(Monomial::poly_gen(i), p));
    }
    out
}

// ----------------------------------------------------------------------
// Morphism candidates
// ----------------------------------------------------------------------

/// Generator-image tuple for a candidate graded-algebra map; images follow
/// [`generator_list`] order and match generator degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct MorphismCandidate {
    pub images: Vec<Element>,
}

impl MorphismCandidate {
    /// Evaluate the induced map on a source monomial: the product of the
    /// generator images in the canonical factor order.
    pub fn apply_monomial(
        &self,
        source: &AlgebraSpec,
        target: &AlgebraSpec,
        m: &Monomial,
    ) -> Element {
        let ext_count = source.ext_gens().len();
        let mut acc = Element::one(target.prime());
        // exterior generators come first in the image list
        for &(i, e) in &m.poly {
            for _ in 0..e {
                acc = target.multiply(&acc, &self.images[ext_count + i as usize]);
            }
        }
        for &i in &m.ext {
            acc = target.multiply(&acc, &self.images[i as usize]);
        }
        // normal form writes polynomial factors first
        let mut ordered = Element::one(target.prime());
        let _ = std::mem::replace(&mut ordered, acc);
        ordered
    }

    pub fn apply(&self, source: &AlgebraSpec, target: &AlgebraSpec, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            out = &out + &self.apply_monomial(source, target, m).scale(c);
        }
        out
    }

    pub fn render(&self, source: &AlgebraSpec, target: &AlgebraSpec) -> Vec<(String, String)> {
        generator_list(source)
            .into_iter()
            .zip(&self.images)
            .map(|((name, _), img)| (name, target.element_string(img)))
            .collect()
    }
}

/// Deterministic stream of all generator-image tuples: the cartesian product
/// of the target degree bases with all field coefficients, indexed by a
/// mixed-radix integer.
pub struct CandidateEnumerator {
    source: AlgebraSpec,
    target: AlgebraSpec,
    bases: Vec<Vec<Monomial>>,
    total: u128,
}

impl CandidateEnumerator {
    pub fn new(source: &AlgebraSpec, target: &AlgebraSpec) -> Result<CandidateEnumerator, AlgebraError> {
        let p = target.prime();
        if p == 0 {
            return Err(AlgebraError::Iso(
                "exhaustive enumeration needs a finite coefficient field".into(),
            ));
        }
        let mut bases = Vec::new();
        let mut total: u128 = 1;
        for (name, degree) in generator_list(source) {
            let basis = target.basis_of_degree(degree)?;
            let count = (p as u128)
                .checked_pow(basis.len() as u32)
                .ok_or_else(|| AlgebraError::Iso(format!("degree piece for `{name}` is too large")))?;
            total = total
                .checked_mul(count)
                .ok_or_else(|| AlgebraError::Iso("candidate space overflows".into()))?;
            bases.push(basis);
        }
        Ok(CandidateEnumerator {
            source: source.clone(),
            target: target.clone(),
            bases,
            total,
        })
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn candidate(&self, index: u128) -> MorphismCandidate {
        let p = self.target.prime() as u128;
        let mut rest = index;
        let mut images = Vec::with_capacity(self.bases.len());
        for basis in &self.bases {
            let mut e = Element::zero();
            for m in basis {
                let digit = (rest % p) as i64;
                rest /= p;
                e.add_term(m.clone(), Scalar::from_int(self.target.prime(), digit));
            }
            images.push(e);
        }
        MorphismCandidate { images }
    }

    pub fn source(&self) -> &AlgebraSpec {
        &self.source
    }

    pub fn target(&self) -> &AlgebraSpec {
        &self.target
    }
}

// ----------------------------------------------------------------------
// Filter chain
// ----------------------------------------------------------------------

/// Does the candidate respect every defining relation of the source, i.e.
/// `phi(x)^2 = phi(x^2 rule)` for each exterior generator?
pub fn is_algebra_morphism(
    source: &AlgebraSpec,
    target: &AlgebraSpec,
    cand: &MorphismCandidate,
) -> bool {
    for (k, (_, degree)) in generator_list(source).iter().enumerate() {
        match target.degree(&cand.images[k]) {
            Ok(None) => {}
            Ok(Some(d)) if d == *degree => {}
            _ => return false,
        }
    }
    for i in 0..source.ext_gens().len() {
        let img = &cand.images[i];
        let square = target.multiply(img, img);
        let rhs = cand.apply(source, target, source.square_rule(i));
        if square != rhs {
            return false;
        }
    }
    true
}

/// Surjectivity through the indecomposables: in a free presentation the
/// decomposables of each degree are spanned by the monomials with at least
/// two generator factors, so `Q(f)` is the single-factor part of the images.
/// With equal dimensions degreewise this decides bijectivity.
pub fn is_surjective(
    source: &AlgebraSpec,
    target: &AlgebraSpec,
    cand: &MorphismCandidate,
) -> bool {
    let p = target.prime();
    for (degree, gens_here) in target_generator_degrees(target) {
        let sources: Vec<Element> = generator_list(source)
            .iter()
            .enumerate()
            .filter(|(_, (_, d))| *d == degree)
            .map(|(k, _)| indecomposable_part(&cand.images[k]))
            .collect();
        if rank_of(p, &sources) < gens_here {
            return false;
        }
    }
    true
}

fn indecomposable_part(e: &Element) -> Element {
    e.map_monomials(|m| (m.factor_count() == 1).then(|| m.clone()))
}

fn target_generator_degrees(target: &AlgebraSpec) -> Vec<(i64, usize)> {
    let mut counts: std::collections::BTreeMap<i64, usize> = Default::default();
    for (_, d) in generator_list(target) {
        *counts.entry(d).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// `phi({g,h}) = {phi g, phi h}` on all unordered generator pairs; brackets
/// on both sides are derived from the BV operators.
pub fn gerstenhaber_compatible(
    source: &BvSide,
    target: &BvSide,
    cand: &MorphismCandidate,
) -> Result<bool, AlgebraError> {
    let gens = generator_elements(&source.spec);
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let lhs = cand.apply(
                &source.spec,
                &target.spec,
                &source.bracket(&gens[i], &gens[j])?,
            );
            let rhs = target.bracket(&cand.images[i], &cand.images[j])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `phi o Delta = Delta o phi` on a basis of every degree in the window.
pub fn commutes_with_delta(
    source: &BvSide,
    target: &BvSide,
    cand: &MorphismCandidate,
    lo: i64,
    max_degree: i64,
) -> Result<bool, AlgebraError> {
    for n in lo..=max_degree {
        for m in source.spec.basis_of_degree(n)? {
            let e = Element::monomial(m, source.prime());
            let lhs = cand.apply(
                &source.spec,
                &target.spec,
                &source.delta(&e)?,
            );
            let rhs = target.delta(&cand.apply(&source.spec, &target.spec, &e))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoLevel {
    Algebra,
    Gerstenhaber,
    Bv,
}

impl IsoLevel {
    pub fn from_name(name: &str) -> Result<IsoLevel, AlgebraError> {
        match name {
            "algebra" => Ok(IsoLevel::Algebra),
            "gerstenhaber" => Ok(IsoLevel::Gerstenhaber),
            "bv" => Ok(IsoLevel::Bv),
            _ => Err(AlgebraError::Iso(format!(
                "unknown level `{name}` (algebra, gerstenhaber, bv)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub level: IsoLevel,
    pub max_degree: i64,
    pub scanned: u64,
    pub algebra_morphisms: u64,
    pub surjective: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gerstenhaber: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bv: Option<u64>,
    pub unit_in_im_delta_source: bool,
    pub unit_in_im_delta_target: bool,
    pub dims_match: bool,
    /// Survivors of the deepest requested filter, as generator-image tables.
    pub survivors: Vec<Vec<(String, String)>>,
}

pub struct IsoProblem {
    pub source: BvSide,
    pub target: BvSide,
    pub max_degree: i64,
    /// Lowest degree checked (negative for loop-homology sides).
    pub lo: i64,
}

impl IsoProblem {
    pub fn new(source: BvSide, target: BvSide, max_degree: i64) -> IsoProblem {
        let lo = |spec: &AlgebraSpec| -> i64 {
            spec.ext_gens().iter().map(|g| g.degree.min(0)).sum()
        };
        let lo = lo(&source.spec).min(lo(&target.spec));
        IsoProblem {
            source,
            target,
            max_degree,
            lo,
        }
    }

    pub fn dims_match(&self) -> Result<bool, AlgebraError> {
        for n in self.lo..=self.max_degree {
            if self.source.spec.dim_of_degree(n)? != self.target.spec.dim_of_degree(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Filter outcomes for a single candidate.
    pub fn check_candidate(&self, cand: &MorphismCandidate) -> Result<CandidateOutcome, AlgebraError> {
        let algebra =
            is_algebra_morphism(&self.source.spec, &self.target.spec, cand);
        let surjective = algebra
            && self.dims_match()?
            && is_surjective(&self.source.spec, &self.target.spec, cand);
        let gerstenhaber =
            surjective && gerstenhaber_compatible(&self.source, &self.target, cand)?;
        let bv = gerstenhaber
            && self.source.unit_in_image_delta()? == self.target.unit_in_image_delta()?
            && commutes_with_delta(&self.source, &self.target, cand, self.lo, self.max_degree)?;
        Ok(CandidateOutcome {
            algebra_morphism: algebra,
            surjective,
            gerstenhaber,
            bv,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateOutcome {
    pub algebra_morphism: bool,
    pub surjective: bool,
    pub gerstenhaber: bool,
    pub bv: bool,
}

const SURVIVOR_CAP: usize = 32;

/// Run the filter chain over the full candidate stream. Candidates are
/// processed in enumeration order and the report is identical across thread
/// counts.
pub fn search(
    problem: &IsoProblem,
    level: IsoLevel,
    mode: ExecMode,
) -> Result<IsoReport, AlgebraError> {
    let enumerator = CandidateEnumerator::new(&problem.source.spec, &problem.target.spec)?;
    let total = enumerator.total();
    if total > (1 << 24) {
        return Err(AlgebraError::Iso(format!(
            "candidate space of size {total} is too large to enumerate; \
             check an explicit candidate instead"
        )));
    }
    let dims_match = problem.dims_match()?;
    let unit_src = problem.source.unit_in_image_delta()?;
    let unit_tgt = problem.target.unit_in_image_delta()?;
    let obstruction_clear = unit_src == unit_tgt;

    struct Tally {
        algebra: u64,
        surjective: u64,
        gerstenhaber: u64,
        bv: u64,
        survivor: Option<MorphismCandidate>,
    }

    let evaluate = |idx: usize| -> Result<Tally, AlgebraError> {
        let cand = enumerator.candidate(idx as u128);
        let mut t = Tally {
            algebra: 0,
            surjective: 0,
            gerstenhaber: 0,
            bv: 0,
            survivor: None,
        };
        if !is_algebra_morphism(&problem.source.spec, &problem.target.spec, &cand) {
            return Ok(t);
        }
        t.algebra = 1;
        let mut surviving = level == IsoLevel::Algebra;
        if dims_match && is_surjective(&problem.source.spec, &problem.target.spec, &cand) {
            t.surjective = 1;
            if level >= IsoLevel::Gerstenhaber
                && gerstenhaber_compatible(&problem.source, &problem.target, &cand)?
            {
                t.gerstenhaber = 1;
                surviving = level == IsoLevel::Gerstenhaber;
                if level == IsoLevel::Bv
                    && obstruction_clear
                    && commutes_with_delta(
                        &problem.source,
                        &problem.target,
                        &cand,
                        problem.lo,
                        problem.max_degree,
                    )?
                {
                    t.bv = 1;
                    surviving = true;
                }
            }
        }
        if surviving {
            t.survivor = Some(cand);
        }
        Ok(t)
    };

    let tallies: Vec<Result<Tally, AlgebraError>> =
        map_indexed(mode, total as usize, evaluate);

    let mut report = IsoReport {
        level,
        max_degree: problem.max_degree,
        scanned: total as u64,
        algebra_morphisms: 0,
        surjective: 0,
        gerstenhaber: None,
        bv: None,
        unit_in_im_delta_source: unit_src,
        unit_in_im_delta_target: unit_tgt,
        dims_match,
        survivors: Vec::new(),
    };
    let mut gerstenhaber = 0;
    let mut bv = 0;
    for t in tallies {
        let t = t?;
        report.algebra_morphisms += t.algebra;
        report.surjective += t.surjective;
        gerstenhaber += t.gerstenhaber;
        bv += t.bv;
        if let Some(cand) = t.survivor {
            if report.survivors.len() < SURVIVOR_CAP {
                report
                    .survivors
                    .push(cand.render(&problem.source.spec, &problem.target.spec));
            }
        }
    }
    if level >= IsoLevel::Gerstenhaber {
        report.gerstenhaber = Some(gerstenhaber);
    }
    if level == IsoLevel::Bv {
        report.bv = Some(bv);
    }
    Ok(report)
}

// ----------------------------------------------------------------------
// Transport of the BV operator along an isomorphism into the loop algebra
// ----------------------------------------------------------------------

/// A graded-algebra map from a free presentation into `(H^{*+d}(LX), m)`,
/// given by generator images; evaluation multiplies images with the dual
/// loop coproduct.
pub struct Transport<'a> {
    pub ctx: &'a BvContext,
    pub source: AlgebraSpec,
    pub images: Vec<Element>,
    cache: std::cell::RefCell<HashMap<Monomial, Element>>,
}

impl<'a> Transport<'a> {
    pub fn new(
        ctx: &'a BvContext,
        source: AlgebraSpec,
        images: Vec<Element>,
    ) -> Result<Transport<'a>, AlgebraError> {
        let gens = generator_list(&source);
        if gens.len() != images.len() {
            return Err(AlgebraError::Transport(
                "one image per source generator required".into(),
            ));
        }
        // shifted degree of the image must match the generator degree
        for ((name, degree), img) in gens.iter().zip(&images) {
            match ctx.model.loop_spec.degree(img)? {
                Some(d) if d - ctx.model.d == *degree => {}
                _ => {
                    return Err(AlgebraError::Transport(format!(
                        "image of `{name}` must be homogeneous of shifted degree {degree}"
                    )))
                }
            }
        }
        Ok(Transport {
            ctx,
            source,
            images,
            cache: Default::default(),
        })
    }

    /// Image of a source monomial: the `m`-product of the generator images.
    pub fn apply_monomial(&self, m: &Monomial) -> Result<Element, AlgebraError> {
        if m.is_one() {
            return Ok(self.ctx.unit().clone());
        }
        if let Some(hit) = self.cache.borrow().get(m) {
            return Ok(hit.clone());
        }
        // peel the first factor; the remainder is again a monomial
        let ext_count = self.source.ext_gens().len();
        let (image, rest) = if let Some(&(i, e)) = m.poly.first() {
            let mut rest = m.clone();
            if e > 1 {
                rest.poly[0].1 -= 1;
            } else {
                rest.poly.remove(0);
            }
            (&self.images[ext_count + i as usize], rest)
        } else {
            let i = m.ext[0] as usize;
            let mut rest = m.clone();
            rest.ext.remove(0);
            (&self.images[i], rest)
        };
        let rest_image = self.apply_monomial(&rest)?;
        let out = self.ctx.m(image, &rest_image)?;
        self.cache.borrow_mut().insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn apply(&self, e: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            out = &out + &self.apply_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// The map is an algebra morphism (images satisfy the exterior squares)
    /// and degreewise bijective up to the bound.
    pub fn validate(&self, lo: i64, hi: i64) -> Result<(), AlgebraError> {
        for i in 0..self.source.ext_gens().len() {
            let sq = self.ctx.m(&self.images[i], &self.images[i])?;
            let rhs = self.apply(self.source.square_rule(i))?;
            if sq != rhs {
                return Err(AlgebraError::Transport(format!(
                    "image of exterior generator {} does not square correctly",
                    self.source.ext_gens()[i].name
                )));
            }
        }
        for n in lo..=hi {
            let basis = self.source.basis_of_degree(n)?;
            let dim_target = self
                .ctx
                .model
                .loop_spec
                .dim_of_degree(n + self.ctx.model.d)?;
            if basis.len() != dim_target {
                return Err(AlgebraError::Transport(format!(
                    "dimension mismatch in degree {n}: {} vs {}",
                    basis.len(),
                    dim_target
                )));
            }
            let images: Vec<Element> = basis
                .iter()
                .map(|m| self.apply_monomial(m))
                .collect::<Result<_, _>>()?;
            if rank_of(self.ctx.prime(), &images) != basis.len() {
                return Err(AlgebraError::Transport(format!(
                    "images are not linearly independent in degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Tabulate `Delta_source = phi^{-1} o Delta o phi` on the source basis
    /// for all degrees in `lo..=hi`. Fails when some degree piece is not
    /// bijective.
    pub fn transported_delta(&self, lo: i64, hi: i64) -> Result<BvSide, AlgebraError> {
        let mut entries = HashMap::new();
        for n in lo..=hi {
            self.transport_degree(n, &mut entries)?;
        }
        Ok(BvSide {
            spec: self.source.clone(),
            delta: DeltaProvider::Table { entries, lo, hi },
        })
    }

    /// As [`transported_delta`](Self::transported_delta) but only for the
    /// listed degrees; the table errors when queried elsewhere.
    pub fn transported_delta_at(&self, degrees: &[i64]) -> Result<BvSide, AlgebraError> {
        let mut entries = HashMap::new();
        let mut sorted = degrees.to_vec();
        sorted.sort();
        sorted.dedup();
        for &n in &sorted {
            self.transport_degree(n, &mut entries)?;
        }
        let lo = sorted.first().copied().unwrap_or(0);
        let hi = sorted.last().copied().unwrap_or(0);
        Ok(BvSide {
            spec: self.source.clone(),
            delta: DeltaProvider::Table { entries, lo, hi },
        })
    }

    /// Solve `phi(value) = Delta(phi(m))` for every basis monomial `m` of one
    /// degree, sharing a single elimination.
    fn transport_degree(
        &self,
        n: i64,
        entries: &mut HashMap<Monomial, Element>,
    ) -> Result<(), AlgebraError> {
        let basis = self.source.basis_of_degree(n)?;
        if basis.is_empty() {
            return Ok(());
        }
        let prev_basis = self.source.basis_of_degree(n - 1)?;
        let prev_images: Vec<Element> = prev_basis
            .iter()
            .map(|m| self.apply_monomial(m))
            .collect::<Result<_, _>>()?;
        let spec = &self.ctx.model.loop_spec;
        let deltas: Vec<Element> = basis
            .iter()
            .map(|m| {
                let img = self.apply_monomial(m)?;
                self.ctx.model.delta(&img)
            })
            .collect::<Result<_, _>>()?;

        let mut all: Vec<&Element> = prev_images.iter().collect();
        all.extend(deltas.iter());
        let index = crate::linalg::monomial_index(&all);
        let matrix = crate::linalg::element_matrix(spec.prime(), &prev_images, &index);
        let rhs: Vec<Vec<Scalar>> = deltas
            .iter()
            .map(|d| {
                let mut b = vec![Scalar::zero(spec.prime()); index.len()];
                for (m, v) in d.iter() {
                    b[index[m]] = v.clone();
                }
                b
            })
            .collect();
        for (m, coords) in basis.iter().zip(matrix.solve_multi(&rhs)) {
            let Some(coords) = coords else {
                return Err(AlgebraError::Transport(format!(
                    "degree {} piece is not invertible",
                    n - 1
                )));
            };
            let mut value = Element::zero();
            for (pm, c) in prev_basis.iter().zip(coords) {
                value.add_term(pm.clone(), c);
            }
            entries.insert(m.clone(), value);
        }
        Ok(())
    }
}

/// The free presentation `K[V] (x) Lambda(sV)^v` of the loop algebra together
/// with the standard generator images: the dual class `u_j` goes to
/// `(-1)^{j-1} x_1...x_j-hat...x_N` and `v_i` to `y_i` times the unit.
pub fn free_loop_presentation(
    ctx: &BvContext,
) -> Result<(AlgebraSpec, Vec<Element>), AlgebraError> {
    let model = &ctx.model;
    let n = model.n;
    let p = ctx.prime();
    let u_degrees: Vec<i64> = (0..n).map(|j| -model.loop_spec.ext_degree(j)).collect();
    let v_degrees: Vec<i64> = (0..n).map(|i| model.base.poly_degree(i)).collect();
    let distinct = |ds: &[i64]| {
        let mut s = ds.to_vec();
        s.sort();
        s.dedup();
        s.len() == ds.len()
    };
    let u_names: Vec<String> = if distinct(&u_degrees) {
        u_degrees.iter().map(|d| format!("u{d}")).collect()
    } else {
        (1..=n).map(|i| format!("u{i}")).collect()
    };
    let v_names: Vec<String> = if distinct(&v_degrees) {
        v_degrees.iter().map(|d| format!("v{d}")).collect()
    } else {
        (1..=n).map(|i| format!("v{i}")).collect()
    };
    let ext: Vec<crate::algebra::Generator> = u_names
        .iter()
        .zip(&u_degrees)
        .map(|(name, &d)| crate::algebra::Generator::new(name.clone(), d))
        .collect();
    let poly: Vec<crate::algebra::Generator> = v_names
        .iter()
        .zip(&v_degrees)
        .map(|(name, &d)| crate::algebra::Generator::new(name.clone(), d))
        .collect();
    let source = AlgebraSpec::new(p, poly, ext)?;

    let mut images = Vec::new();
    for j in 0..n {
        let complement: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let sign = Scalar::sign_pow(p, j as i64);
        images.push(Element::from_monomial(Monomial::ext_set(&complement), sign));
    }
    for i in 0..n {
        let yi = Element::monomial(Monomial::poly_gen(i), p);
        images.push(model.loop_spec.multiply(&yi, ctx.unit()));
    }
    Ok((source, images))
}

/// The identity-shaped candidate between the Hochschild model of `H_*(G)` and
/// the free loop presentation: `x_j^v -> u_j`, `s^{-1}(x_j^v)^v -> sign v_j`.
/// Mod 2 the sign is immaterial; away from 2 both signs are tried by the
/// caller.
pub fn relabeling_candidate(
    hh_spec: &AlgebraSpec,
    target_spec: &AlgebraSpec,
    dual_sign: i64,
) -> MorphismCandidate {
    let p = target_spec.prime();
    let n = hh_spec.ext_gens().len();
    let mut images = Vec::new();
    for j in 0..n {
        images.push(Element::monomial(Monomial::ext_gen(j), p));
    }
    for i in 0..n {
        images.push(Element::from_monomial(
            Monomial::poly_gen(i),
            Scalar::sign_pow(p, dual_sign),
        ));
    }
    MorphismCandidate { images }
}
