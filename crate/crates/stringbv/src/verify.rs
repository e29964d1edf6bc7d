//! Seeded property suites for the BV structure: shifted commutativity and
//! associativity, the seven-term BV identity, the module and derivation rules
//! for cup products, the iterated rule, the degree-d antipode oracle, the
//! mod-2 reduction table, and agreement of the closed form with the inductive
//! algorithm. Reports are deterministic for a fixed seed, independent of the
//! thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::Element;
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::par::{map_indexed, ExecMode};
use crate::scalar::Scalar;
use crate::string_bv::{BvContext, StripOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Shifted commutativity `m(b,a) = (-1)^{||a|| ||b||} m(a,b)`.
    Comm,
    /// Shifted associativity `m(m(a,b),c) = m(a,m(b,c))`.
    Assoc,
    /// Seven-term Batalin-Vilkovisky identity in shifted degrees.
    Bv,
    /// `m` is a morphism of left `H^*(X) (x) H^*(X)`-modules.
    Module,
    /// Cup with `Delta(ev^* P)` is a derivation of `m`.
    Derivation,
    /// Iterated module-derivation rule with up to three factors.
    Iterated,
    /// Degree-d oracle through the fiber: `tau(i^* a . S i^* b)`.
    DegreeD,
    /// Mod-2 reduction `Dlcop(x_I, x_J) = Dlcop(x_top, x_{I n J})`.
    Mod2,
    /// `x_i Dlcop(a,a) = 0` and the square factorization lemma, mod 2.
    Square,
    /// `i^* Dlcop(x_I, x_J) = s_{I n J}` on covering pairs, mod 2.
    Fiber,
    /// Closed form equals the inductive algorithm under hypothesis (H).
    ClosedForm,
    /// `Delta o Delta = 0` on bases and the Leibniz rule on random pairs.
    Delta,
    /// Rightmost and leftmost strip orders agree.
    Confluence,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::Comm,
        Check::Assoc,
        Check::Bv,
        Check::Module,
        Check::Derivation,
        Check::Iterated,
        Check::DegreeD,
        Check::Mod2,
        Check::Square,
        Check::Fiber,
        Check::ClosedForm,
        Check::Delta,
        Check::Confluence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Comm => "comm",
            Check::Assoc => "assoc",
            Check::Bv => "bv",
            Check::Module => "module",
            Check::Derivation => "derivation",
            Check::Iterated => "iterated",
            Check::DegreeD => "degree-d",
            Check::Mod2 => "mod2",
            Check::Square => "square",
            Check::Fiber => "fiber",
            Check::ClosedForm => "closed-form",
            Check::Delta => "delta",
            Check::Confluence => "confluence",
        }
    }

    pub fn from_name(name: &str) -> Result<Check, AlgebraError> {
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.name() == name)
            .ok_or_else(|| AlgebraError::UnknownCheck(name.to_string()))
    }

    pub fn description(&self) -> &'static str {
        match self {
            Check::Comm => "m(b,a) = (-1)^{||a|| ||b||} m(a,b)",
            Check::Assoc => "m(m(a,b),c) = m(a,m(b,c))",
            Check::Bv => "seven-term BV identity for (m, Delta)",
            Check::Module => "m(Pa, Qb) = (-1)^{(|a|-d)|Q|} PQ m(a,b)",
            Check::Derivation => "Delta(ev P) is a derivation of m",
            Check::Iterated => "iterated module-derivation rule, r <= 3",
            Check::DegreeD => "m in degree d equals tau(i* a . S i* b)",
            Check::Mod2 => "Dlcop(x_I, x_J) reduces to Dlcop(top, x_{I n J})",
            Check::Square => "x_i Dlcop(a,a) = 0 and its factorization",
            Check::Fiber => "i* intertwines Dlcop with the fiber product",
            Check::ClosedForm => "closed form = inductive m under (H)",
            Check::Delta => "Delta^2 = 0 and the Leibniz rule",
            Check::Confluence => "strip orders of rule 1 agree",
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckOutcome {
    pub check: String,
    pub description: String,
    pub samples: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub max_degree: i64,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

/// Outcome of a single sample: `None` is a pass, otherwise a printable
/// counterexample together with a size used to pick the smallest one.
type SampleResult = Option<(usize, String)>;

pub fn run_verify(
    ctx: &BvContext,
    checks: &[Check],
    samples: usize,
    seed: u64,
    max_degree: Option<i64>,
    mode: ExecMode,
) -> Result<VerifyReport, AlgebraError> {
    let max_degree = max_degree.unwrap_or(3 * ctx.model.d);
    let sampler = Sampler::new(ctx, max_degree)?;
    let mut outcomes = Vec::new();
    for &check in checks {
        outcomes.push(run_check(ctx, &sampler, check, samples, seed, max_degree, mode)?);
    }
    Ok(VerifyReport {
        seed,
        samples,
        max_degree,
        outcomes,
    })
}

fn run_check(
    ctx: &BvContext,
    sampler: &Sampler,
    check: Check,
    samples: usize,
    seed: u64,
    max_degree: i64,
    mode: ExecMode,
) -> Result<CheckOutcome, AlgebraError> {
    let p = ctx.prime();
    let skip = match check {
        Check::Mod2 | Check::Square | Check::Fiber if p != 2 => {
            Some("requires p = 2".to_string())
        }
        Check::ClosedForm if !ctx.model.hypothesis_h => {
            Some("requires hypothesis (H)".to_string())
        }
        _ => None,
    };
    if let Some(reason) = skip {
        return Ok(CheckOutcome {
            check: check.name().to_string(),
            description: check.description().to_string(),
            samples: 0,
            failures: 0,
            passed: true,
            skipped: Some(reason),
            counterexample: None,
        });
    }

    let results: Vec<SampleResult> = match check {
        // deterministic basis sweeps
        Check::Mod2 => subset_pairs(ctx.model.n)
            .into_iter()
            .map(|(i_set, j_set)| check_mod2_pair(ctx, &i_set, &j_set))
            .collect(),
        Check::Fiber => subset_pairs(ctx.model.n)
            .into_iter()
            .map(|(i_set, j_set)| check_fiber_pair(ctx, &i_set, &j_set))
            .collect(),
        Check::Delta => {
            let mut out: Vec<SampleResult> = Vec::new();
            for n in 0..=max_degree {
                for m in ctx.model.loop_spec.basis_of_degree(n)? {
                    let e = Element::monomial(m, p);
                    let dd = ctx.model.delta(&ctx.model.delta(&e)?)?;
                    out.push(if dd.is_zero() {
                        None
                    } else {
                        Some((
                            e.len(),
                            format!(
                                "Delta^2({}) = {}",
                                ctx.model.loop_spec.element_string(&e),
                                ctx.model.loop_spec.element_string(&dd)
                            ),
                        ))
                    });
                }
            }
            // plus seeded Leibniz samples
            out.extend(map_indexed(mode, samples, |i| {
                let mut rng = sample_rng(seed, check, i);
                check_delta_leibniz(ctx, sampler, &mut rng)
            }));
            out
        }
        _ => map_indexed(mode, samples, |i| {
            let mut rng = sample_rng(seed, check, i);
            match check {
                Check::Comm => check_comm(ctx, sampler, &mut rng),
                Check::Assoc => check_assoc(ctx, sampler, &mut rng),
                Check::Bv => check_bv(ctx, sampler, &mut rng),
                Check::Module => check_module(ctx, sampler, &mut rng),
                Check::Derivation => check_derivation(ctx, sampler, &mut rng),
                Check::Iterated => check_iterated(ctx, sampler, &mut rng),
                Check::DegreeD => check_degree_d(ctx, sampler, &mut rng),
                Check::Square => check_square(ctx, sampler, &mut rng),
                Check::ClosedForm => check_closed_form(ctx, sampler, &mut rng),
                Check::Confluence => check_confluence(ctx, sampler, &mut rng),
                Check::Mod2 | Check::Fiber | Check::Delta => unreachable!(),
            }
        }),
    };

    let total = results.len();
    let mut failures = 0usize;
    let mut best: Option<(usize, String)> = None;
    for r in results.into_iter().flatten() {
        failures += 1;
        best = match best {
            None => Some(r),
            Some(b) if r.0 < b.0 => Some(r),
            b => b,
        };
    }
    Ok(CheckOutcome {
        check: check.name().to_string(),
        description: check.description().to_string(),
        samples: total,
        failures,
        passed: failures == 0,
        skipped: None,
        counterexample: best.map(|(_, s)| s),
    })
}

fn sample_rng(seed: u64, check: Check, index: usize) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9E3779B97F4A7C15)
        .wrapping_add((check as u64 + 1).wrapping_mul(0xD1B54A32D192ED03))
        .wrapping_add(index as u64);
    ChaCha8Rng::seed_from_u64(mix)
}

/// Precomputed degree bases used by the random-element draws: uniform degree
/// among the nonempty pieces, one to three basis monomials, nonzero uniform
/// coefficients, zero draws redrawn.
struct Sampler {
    loop_degrees: Vec<(i64, Vec<Monomial>)>,
    base_degrees: Vec<(i64, Vec<Monomial>)>,
}

impl Sampler {
    fn new(ctx: &BvContext, max_degree: i64) -> Result<Sampler, AlgebraError> {
        let mut loop_degrees = Vec::new();
        let mut base_degrees = Vec::new();
        for n in 0..=max_degree {
            let b = ctx.model.loop_spec.basis_of_degree(n)?;
            if !b.is_empty() {
                loop_degrees.push((n, b));
            }
            let b = ctx.model.base.basis_of_degree(n)?;
            if !b.is_empty() {
                base_degrees.push((n, b));
            }
        }
        Ok(Sampler {
            loop_degrees,
            base_degrees,
        })
    }

    fn random_scalar(&self, p: u32, rng: &mut ChaCha8Rng) -> Scalar {
        if p == 0 {
            let mut v = 0i64;
            while v == 0 {
                v = rng.gen_range(-3..=3);
            }
            Scalar::from_int(0, v)
        } else {
            Scalar::from_int(p, rng.gen_range(1..p) as i64)
        }
    }

    fn draw(&self, pool: &[(i64, Vec<Monomial>)], p: u32, rng: &mut ChaCha8Rng) -> Element {
        let (_, basis) = &pool[rng.gen_range(0..pool.len())];
        let mut e = Element::zero();
        let terms = rng.gen_range(1..=3usize.min(basis.len()));
        while e.is_zero() {
            for _ in 0..terms {
                let m = basis[rng.gen_range(0..basis.len())].clone();
                e.add_term(m, self.random_scalar(p, rng));
            }
        }
        e
    }

    fn loop_element(&self, ctx: &BvContext, rng: &mut ChaCha8Rng) -> Element {
        self.draw(&self.loop_degrees, ctx.prime(), rng)
    }

    fn base_element(&self, ctx: &BvContext, rng: &mut ChaCha8Rng) -> Element {
        self.draw(&self.base_degrees, ctx.prime(), rng)
    }
}

fn shifted(ctx: &BvContext, e: &Element) -> i64 {
    ctx.model
        .loop_spec
        .degree(e)
        .expect("homogeneous")
        .unwrap_or(ctx.model.d)
        - ctx.model.d
}

fn fail(
    ctx: &BvContext,
    label: &str,
    inputs: &[(&str, &Element)],
    lhs: &Element,
    rhs: &Element,
) -> SampleResult {
    let spec = &ctx.model.loop_spec;
    let size: usize = inputs.iter().map(|(_, e)| e.len()).sum();
    let vars = inputs
        .iter()
        .map(|(n, e)| format!("{n} = {}", spec.element_string(e)))
        .collect::<Vec<_>>()
        .join(", ");
    Some((
        size,
        format!(
            "{label}: {vars}; lhs = {}, rhs = {}",
            spec.element_string(lhs),
            spec.element_string(rhs)
        ),
    ))
}

fn check_comm(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let lhs = ctx.m(&b, &a).unwrap();
    let sign = Scalar::sign_pow(ctx.prime(), shifted(ctx, &a) * shifted(ctx, &b));
    let rhs = ctx.m(&a, &b).unwrap().scale(&sign);
    if lhs == rhs {
        None
    } else {
        fail(ctx, "comm", &[("a", &a), ("b", &b)], &lhs, &rhs)
    }
}

fn check_assoc(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let c = s.loop_element(ctx, rng);
    let lhs = ctx.m(&ctx.m(&a, &b).unwrap(), &c).unwrap();
    let rhs = ctx.m(&a, &ctx.m(&b, &c).unwrap()).unwrap();
    if lhs == rhs {
        None
    } else {
        fail(ctx, "assoc", &[("a", &a), ("b", &b), ("c", &c)], &lhs, &rhs)
    }
}

fn check_bv(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let p = ctx.prime();
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let c = s.loop_element(ctx, rng);
    let (na, nb) = (shifted(ctx, &a), shifted(ctx, &b));
    let mul = |x: &Element, y: &Element| ctx.m(x, y).unwrap();
    let delta = |x: &Element| ctx.model.delta(x).unwrap();

    let ab = mul(&a, &b);
    let bc = mul(&b, &c);
    let ac = mul(&a, &c);
    let abc = mul(&ab, &c);

    let lhs = delta(&abc);
    let mut rhs = mul(&delta(&ab), &c);
    rhs = &rhs + &mul(&a, &delta(&bc)).scale(&Scalar::sign_pow(p, na));
    rhs = &rhs + &mul(&b, &delta(&ac)).scale(&Scalar::sign_pow(p, nb * na + nb));
    rhs = &rhs - &mul(&mul(&delta(&a), &b), &c);
    rhs = &rhs - &mul(&mul(&a, &delta(&b)), &c).scale(&Scalar::sign_pow(p, na));
    rhs = &rhs - &mul(&ab, &delta(&c)).scale(&Scalar::sign_pow(p, na + nb));
    if lhs == rhs {
        None
    } else {
        fail(ctx, "bv", &[("a", &a), ("b", &b), ("c", &c)], &lhs, &rhs)
    }
}

fn check_module(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let spec = &ctx.model.loop_spec;
    let p_el = s.base_element(ctx, rng);
    let q_el = s.base_element(ctx, rng);
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let deg_q = spec.degree(&q_el).unwrap().unwrap();
    let lhs = ctx
        .m(&spec.multiply(&p_el, &a), &spec.multiply(&q_el, &b))
        .unwrap();
    let sign = Scalar::sign_pow(ctx.prime(), shifted(ctx, &a) * deg_q);
    let rhs = spec
        .multiply(&spec.multiply(&p_el, &q_el), &ctx.m(&a, &b).unwrap())
        .scale(&sign);
    if lhs == rhs {
        None
    } else {
        fail(
            ctx,
            "module",
            &[("P", &p_el), ("Q", &q_el), ("a", &a), ("b", &b)],
            &lhs,
            &rhs,
        )
    }
}

fn check_derivation(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let spec = &ctx.model.loop_spec;
    let p = ctx.prime();
    let p_el = s.base_element(ctx, rng);
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let deg_p = spec.degree(&p_el).unwrap().unwrap();
    let x = ctx.model.delta(&p_el).unwrap();
    let lhs = spec.multiply(&x, &ctx.m(&a, &b).unwrap());
    let sign = Scalar::sign_pow(p, (deg_p - 1) * shifted(ctx, &a));
    let rhs = &ctx.m(&spec.multiply(&x, &a), &b).unwrap()
        + &ctx.m(&a, &spec.multiply(&x, &b)).unwrap().scale(&sign);
    if lhs == rhs {
        None
    } else {
        fail(ctx, "derivation", &[("P", &p_el), ("a", &a), ("b", &b)], &lhs, &rhs)
    }
}

fn check_iterated(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let spec = &ctx.model.loop_spec;
    let p = ctx.prime();
    let r = rng.gen_range(1..=3usize);
    let p_el = s.base_element(ctx, rng);
    let q_el = s.base_element(ctx, rng);
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let xs: Vec<Element> = (0..r)
        .map(|_| ctx.model.delta(&s.base_element(ctx, rng)).unwrap())
        .collect();
    let xdegs: Vec<i64> = xs
        .iter()
        .map(|x| spec.degree(x).unwrap().unwrap_or(0))
        .collect();

    // lhs: m(P a (x) Q X_1...X_r b)
    let mut right = q_el.clone();
    for x in &xs {
        right = spec.multiply(&right, x);
    }
    right = spec.multiply(&right, &b);
    let lhs = ctx.m(&spec.multiply(&p_el, &a), &right).unwrap();

    let deg_q = spec.degree(&q_el).unwrap().unwrap();
    let prefactor = Scalar::sign_pow(
        p,
        shifted(ctx, &a) * (deg_q + xdegs.iter().sum::<i64>()),
    );
    let mut rhs = Element::zero();
    for mask in 0u32..(1 << r) {
        let j = |k: usize| ((mask >> k) & 1) as i64;
        let mut exponent: i64 = (0..r).map(&j).sum();
        for k in 0..r {
            if j(k) == 0 {
                let inner: i64 = (0..k).map(|t| j(t) * xdegs[t]).sum();
                exponent += xdegs[k] * inner;
            }
        }
        let mut outside = spec.multiply(&p_el, &q_el);
        for k in 0..r {
            if j(k) == 0 {
                outside = spec.multiply(&outside, &xs[k]);
            }
        }
        let mut inside = Element::one(p);
        for k in 0..r {
            if j(k) == 1 {
                inside = spec.multiply(&inside, &xs[k]);
            }
        }
        let m = ctx.m(&spec.multiply(&inside, &a), &b).unwrap();
        let term = spec
            .multiply(&outside, &m)
            .scale(&Scalar::sign_pow(p, exponent));
        rhs = &rhs + &term;
    }
    rhs = rhs.scale(&prefactor);
    if lhs == rhs {
        None
    } else {
        fail(
            ctx,
            "iterated",
            &[("P", &p_el), ("Q", &q_el), ("a", &a), ("b", &b)],
            &lhs,
            &rhs,
        )
    }
}

fn check_degree_d(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let d = ctx.model.d;
    let p = ctx.prime();
    // draw degrees p + q = d with nonempty bases on both sides
    let pairs: Vec<(i64, i64)> = s
        .loop_degrees
        .iter()
        .filter_map(|(n, _)| {
            let m = d - n;
            s.loop_degrees
                .iter()
                .any(|(k, _)| *k == m)
                .then_some((*n, m))
        })
        .collect();
    let (na, _) = pairs[rng.gen_range(0..pairs.len())];
    let pick = |s: &Sampler, n: i64, rng: &mut ChaCha8Rng| {
        let basis = &s.loop_degrees.iter().find(|(k, _)| *k == n).unwrap().1;
        let mut e = Element::zero();
        while e.is_zero() {
            for _ in 0..rng.gen_range(1..=2usize.min(basis.len())) {
                e.add_term(
                    basis[rng.gen_range(0..basis.len())].clone(),
                    s.random_scalar(p, rng),
                );
            }
        }
        e
    };
    let a = pick(s, na, rng);
    let b = pick(s, d - na, rng);
    let lhs = ctx.m(&a, &b).unwrap();
    let prod = ctx.model.fiber.multiply(
        &ctx.model.restrict(&a),
        &ctx.model.antipode(&ctx.model.restrict(&b)),
    );
    let tau = ctx.model.tau(&prod).unwrap();
    let sign = Scalar::sign_pow(p, d * (d - na));
    let rhs = Element::from_monomial(Monomial::one(), &tau * &sign);
    if lhs == rhs {
        None
    } else {
        fail(ctx, "degree-d", &[("a", &a), ("b", &b)], &lhs, &rhs)
    }
}

fn subset_pairs(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for i_mask in 0u32..(1 << n) {
        for j_mask in 0u32..(1 << n) {
            let i_set: Vec<usize> = (0..n).filter(|k| i_mask & (1 << k) != 0).collect();
            let j_set: Vec<usize> = (0..n).filter(|k| j_mask & (1 << k) != 0).collect();
            out.push((i_set, j_set));
        }
    }
    out
}

fn check_mod2_pair(ctx: &BvContext, i_set: &[usize], j_set: &[usize]) -> SampleResult {
    let n = ctx.model.n;
    let a = Element::monomial(Monomial::ext_set(i_set), 2);
    let b = Element::monomial(Monomial::ext_set(j_set), 2);
    let lhs = ctx.dlcop(&a, &b).unwrap();
    let mut union: Vec<usize> = i_set.iter().chain(j_set.iter()).copied().collect();
    union.sort();
    union.dedup();
    let rhs = if union.len() == n {
        let inter: Vec<usize> = i_set
            .iter()
            .copied()
            .filter(|i| j_set.contains(i))
            .collect();
        ctx.dlcop(
            &ctx.model.top_exterior(),
            &Element::monomial(Monomial::ext_set(&inter), 2),
        )
        .unwrap()
    } else {
        Element::zero()
    };
    if lhs == rhs {
        None
    } else {
        fail(ctx, "mod2", &[("x_I", &a), ("x_J", &b)], &lhs, &rhs)
    }
}

fn check_fiber_pair(ctx: &BvContext, i_set: &[usize], j_set: &[usize]) -> SampleResult {
    let n = ctx.model.n;
    let mut union: Vec<usize> = i_set.iter().chain(j_set.iter()).copied().collect();
    union.sort();
    union.dedup();
    if union.len() != n {
        return None;
    }
    let a = Element::monomial(Monomial::ext_set(i_set), 2);
    let b = Element::monomial(Monomial::ext_set(j_set), 2);
    let lhs = ctx.model.restrict(&ctx.dlcop(&a, &b).unwrap());
    let inter: Vec<usize> = i_set
        .iter()
        .copied()
        .filter(|i| j_set.contains(i))
        .collect();
    let rhs = Element::monomial(Monomial::ext_set(&inter), 2);
    if lhs == rhs {
        None
    } else {
        fail(ctx, "fiber", &[("x_I", &a), ("x_J", &b)], &lhs, &rhs)
    }
}

fn check_square(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let spec = &ctx.model.loop_spec;
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let daa = ctx.dlcop(&a, &a).unwrap();
    for i in 0..ctx.model.n {
        let xi = Element::monomial(Monomial::ext_gen(i), 2);
        let prod = spec.multiply(&xi, &daa);
        if !prod.is_zero() {
            return fail(ctx, "square(1)", &[("a", &a)], &prod, &Element::zero());
        }
    }
    let lhs = ctx.dlcop(&daa, &b).unwrap();
    let rhs = spec.multiply(&b, &ctx.dlcop(&daa, &spec.one()).unwrap());
    if lhs == rhs {
        None
    } else {
        fail(ctx, "square(2)", &[("a", &a), ("b", &b)], &lhs, &rhs)
    }
}

fn check_closed_form(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    // exhaustive on exterior pairs, random polynomial coefficients
    let spec = &ctx.model.loop_spec;
    let n = ctx.model.n;
    let p_el = s.base_element(ctx, rng);
    let q_el = s.base_element(ctx, rng);
    for i_mask in 0u32..(1 << n) {
        for j_mask in 0u32..(1 << n) {
            let i_set: Vec<usize> = (0..n).filter(|k| i_mask & (1 << k) != 0).collect();
            let j_set: Vec<usize> = (0..n).filter(|k| j_mask & (1 << k) != 0).collect();
            let a = spec.multiply(
                &p_el,
                &Element::monomial(Monomial::ext_set(&i_set), ctx.prime()),
            );
            let b = spec.multiply(
                &q_el,
                &Element::monomial(Monomial::ext_set(&j_set), ctx.prime()),
            );
            let inductive = ctx.m(&a, &b).unwrap();
            let closed = ctx.m_closed_form(&a, &b).unwrap();
            if inductive != closed {
                return fail(ctx, "closed-form", &[("a", &a), ("b", &b)], &inductive, &closed);
            }
        }
    }
    None
}

fn check_delta_leibniz(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let spec = &ctx.model.loop_spec;
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let deg_a = spec.degree(&a).unwrap().unwrap();
    let lhs = ctx.model.delta(&spec.multiply(&a, &b)).unwrap();
    let sign = Scalar::sign_pow(ctx.prime(), deg_a);
    let rhs = &spec.multiply(&ctx.model.delta(&a).unwrap(), &b)
        + &spec.multiply(&a, &ctx.model.delta(&b).unwrap()).scale(&sign);
    if lhs == rhs {
        None
    } else {
        fail(ctx, "delta-leibniz", &[("a", &a), ("b", &b)], &lhs, &rhs)
    }
}

fn check_confluence(ctx: &BvContext, s: &Sampler, rng: &mut ChaCha8Rng) -> SampleResult {
    let a = s.loop_element(ctx, rng);
    let b = s.loop_element(ctx, rng);
    let lhs = ctx.m_with_order(&a, &b, StripOrder::Rightmost).unwrap();
    let rhs = ctx.m_with_order(&a, &b, StripOrder::Leftmost).unwrap();
    if lhs == rhs {
        None
    } else {
        fail(ctx, "confluence", &[("a", &a), ("b", &b)], &lhs, &rhs)
    }
}
