//! Acceptance suite: one test per shipped guarantee, each printing a pass
//! line with its runtime (visible under `--nocapture`). Everything is exact
//! arithmetic; the budgets are wall-clock seconds.

use std::time::Instant;

use stringbv::element::Element;
use stringbv::hochschild::{derivation_commuting_with_trace, hh_of_loop_homology, FrobeniusAlgebra};
use stringbv::iso::{
    free_loop_presentation, relabeling_candidate, search, BvSide, IsoLevel, IsoProblem, Transport,
};
use stringbv::linalg::solve_linear;
use stringbv::literal::parse_element;
use stringbv::loop_model::preset_model;
use stringbv::monomial::Monomial;
use stringbv::par::ExecMode;
use stringbv::scalar::Scalar;
use stringbv::string_bv::BvContext;
use stringbv::verify::{run_verify, Check};
use stringbv::{AlgebraSpec, Generator};

fn timed(label: &str, budget: f64, f: impl FnOnce()) {
    let start = Instant::now();
    f();
    let dt = start.elapsed().as_secs_f64();
    println!("PASS {label} ({dt:.3}s, budget {budget}s)");
    assert!(dt < budget, "{label} exceeded budget: {dt:.3}s > {budget}s");
}

fn ctx(name: &str, prime: Option<u32>) -> BvContext {
    BvContext::new(preset_model(name, prime).unwrap()).unwrap()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

fn ext_elem(set: &[usize], p: u32) -> Element {
    Element::monomial(Monomial::ext_set(set), p)
}

/// Criterion 1: the dual loop coproduct on `Delta(x1,x2)` tensor itself
/// reproduces every SO(3) table entry exactly, and every other exterior pair
/// vanishes.
#[test]
fn acceptance_01_so3_dlcop_table() {
    timed("criterion 1: SO(3) Dlcop table", 0.1, || {
        let c = ctx("so3", None);
        let spec = &c.model.loop_spec;
        let e = |s: &str| parse_element(spec, s).unwrap();
        let listed: Vec<(Vec<usize>, Vec<usize>, Element)> = vec![
            (vec![0, 1], vec![], e("1")),
            (vec![0], vec![1], e("1")),
            (vec![0, 1], vec![0], e("x1")),
            (vec![0, 1], vec![1], e("x2 + y2")),
            (vec![0, 1], vec![0, 1], e("x1*x2 + x1*y2 + y3")),
        ];
        let mut nontrivial = 0;
        for i_set in subsets(2) {
            for j_set in subsets(2) {
                let expected = listed
                    .iter()
                    .find(|(a, b, _)| {
                        (*a == i_set && *b == j_set) || (*a == j_set && *b == i_set)
                    })
                    .map(|(_, _, v)| v.clone())
                    .unwrap_or_else(Element::zero);
                let got = c.dlcop(&ext_elem(&i_set, 2), &ext_elem(&j_set, 2)).unwrap();
                assert_eq!(got, expected, "Dlcop(x_{i_set:?} (x) x_{j_set:?})");
                if !got.is_zero() {
                    nontrivial += 1;
                }
            }
        }
        assert_eq!(nontrivial, 9, "exactly nine nontrivial entries");
    });
}

/// Criterion 2: the full G_2 table, with strict commutativity closing the
/// listed entries and zeros everywhere else.
#[test]
fn acceptance_02_g2_dlcop_table() {
    timed("criterion 2: G_2 Dlcop table", 1.0, || {
        let c = ctx("g2", None);
        let spec = &c.model.loop_spec;
        let e = |s: &str| parse_element(spec, s).unwrap();
        // generator indices: x3 = 0, x5 = 1, x6 = 2
        let listed: Vec<(Vec<usize>, Vec<usize>, Element)> = vec![
            (vec![0, 1, 2], vec![], e("1")),
            (vec![0, 1], vec![2], e("1")),
            (vec![0, 2], vec![1], e("1")),
            (vec![1, 2], vec![0], e("1")),
            (vec![0, 1, 2], vec![0], e("x3")),
            (vec![0, 1], vec![0, 2], e("x3")),
            (vec![0, 1, 2], vec![1], e("x5")),
            (vec![0, 1], vec![1, 2], e("x5")),
            (vec![0, 1, 2], vec![2], e("x6 + y6")),
            (vec![0, 2], vec![1, 2], e("x6 + y6")),
            (vec![0, 1, 2], vec![0, 1], e("x3*x5")),
            (vec![0, 1, 2], vec![0, 2], e("x3*x6 + x3*y6")),
            (vec![0, 1, 2], vec![1, 2], e("x5*x6 + x5*y6 + y4*y7")),
            (
                vec![0, 1, 2],
                vec![0, 1, 2],
                e("x3*x5*x6 + x3*x5*y6 + x3*y4*y7 + y7^2"),
            ),
        ];
        for i_set in subsets(3) {
            for j_set in subsets(3) {
                let expected = listed
                    .iter()
                    .find(|(a, b, _)| {
                        (*a == i_set && *b == j_set) || (*a == j_set && *b == i_set)
                    })
                    .map(|(_, _, v)| v.clone())
                    .unwrap_or_else(Element::zero);
                let got = c.dlcop(&ext_elem(&i_set, 2), &ext_elem(&j_set, 2)).unwrap();
                assert_eq!(got, expected, "Dlcop(x_{i_set:?} (x) x_{j_set:?})");
            }
        }
    });
}

/// Criterion 3: two-sided unit laws on full bases up to degree 20 mod 2, and
/// the unit under hypothesis (H) is the top exterior class.
#[test]
fn acceptance_03_units() {
    timed("criterion 3: units", 5.0, || {
        for name in ["so3", "g2"] {
            let c = ctx(name, None);
            for n in 0..=20 {
                for m in c.model.loop_spec.basis_of_degree(n).unwrap() {
                    let b = Element::monomial(m, 2);
                    assert_eq!(c.m(c.unit(), &b).unwrap(), b, "{name} left unit");
                    assert_eq!(c.m(&b, c.unit()).unwrap(), b, "{name} right unit");
                }
            }
        }
        let t3 = ctx("t3", None);
        assert_eq!(t3.unit(), &t3.model.top_exterior());
        let su3 = ctx("su3", Some(5));
        assert_eq!(su3.unit(), &su3.model.top_exterior());
    });
}

/// Criterion 4: the BV property suites on 200 seeded samples per preset with
/// zero failures.
#[test]
fn acceptance_04_bv_suite() {
    timed("criterion 4: BV suite", 20.0, || {
        let checks = [
            Check::Bv,
            Check::Comm,
            Check::Assoc,
            Check::Module,
            Check::Derivation,
            Check::Iterated,
            Check::DegreeD,
        ];
        for (name, prime) in [
            ("so3", None),
            ("g2", None),
            ("t3", None),
            ("su3", Some(5)),
            ("t2", Some(0)),
        ] {
            let c = ctx(name, prime);
            let report =
                run_verify(&c, &checks, 200, 2024, None, ExecMode::Parallel).unwrap();
            for o in &report.outcomes {
                assert!(o.passed, "{name}/{}: {:?}", o.check, o.counterexample);
                assert!(o.samples >= 200, "{name}/{}", o.check);
            }
        }
    });
}

/// Criterion 5: closed form vs the inductive algorithm, exhaustive over the
/// 4^N exterior pairs with random polynomial coefficients.
#[test]
fn acceptance_05_closed_form_vs_induction() {
    timed("criterion 5: closed form = induction", 5.0, || {
        for (name, prime) in [("t3", None), ("su3", Some(5))] {
            let c = ctx(name, prime);
            let report = run_verify(
                &c,
                &[Check::ClosedForm],
                40,
                99,
                None,
                ExecMode::Parallel,
            )
            .unwrap();
            for o in &report.outcomes {
                assert!(o.skipped.is_none(), "{name} satisfies hypothesis (H)");
                assert!(o.passed, "{name}: {:?}", o.counterexample);
            }
        }
    });
}

// shared closed-formula evaluators for criterion 6 -------------------------

fn formula_term(acc: &mut Element, c: i64, u_set: &[usize], exps: &[i64]) {
    if c % 2 == 0 {
        return;
    }
    assert!(exps.iter().all(|&e| e >= 0), "negative exponent with c = {c}");
    let poly: Vec<(u16, u32)> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (i as u16, e as u32))
        .collect();
    acc.add_term(
        Monomial {
            poly,
            ext: u_set.iter().map(|&i| i as u16).collect(),
        },
        Scalar::one(2),
    );
}

fn so3_family(u_set: &[usize], i: i64, j: i64) -> Element {
    let mut e = Element::zero();
    match u_set {
        [] => {}
        [0, 1] => {
            formula_term(&mut e, i, &[1], &[i - 1, j]);
            formula_term(&mut e, j, &[0], &[i, j - 1]);
        }
        [1] => {
            formula_term(&mut e, i, &[0], &[i - 1, j]);
            formula_term(&mut e, j, &[], &[i, j - 1]);
            formula_term(&mut e, j, &[1], &[i + 1, j - 1]);
            formula_term(&mut e, j, &[0, 1], &[i, j]);
        }
        [0] => {
            formula_term(&mut e, i, &[], &[i - 1, j]);
            formula_term(&mut e, i + j, &[1], &[i, j]);
            formula_term(&mut e, i, &[0, 1], &[i - 1, j + 1]);
            formula_term(&mut e, j, &[0], &[i + 1, j - 1]);
        }
        _ => unreachable!(),
    }
    e
}

fn g2_family(u_set: &[usize], i: i64, j: i64, k: i64) -> Element {
    let mut e = Element::zero();
    match u_set {
        [] => {}
        [0, 1, 2] => {
            formula_term(&mut e, i, &[1, 2], &[i - 1, j, k]);
            formula_term(&mut e, j, &[0, 2], &[i, j - 1, k]);
            formula_term(&mut e, k, &[0, 1], &[i, j, k - 1]);
            formula_term(&mut e, k, &[0, 1, 2], &[i, j + 1, k - 1]);
        }
        [1, 2] => {
            formula_term(&mut e, i, &[0, 1], &[i - 1, j, k]);
            formula_term(&mut e, i, &[0, 1, 2], &[i - 1, j + 1, k]);
            formula_term(&mut e, j, &[2], &[i, j - 1, k]);
            formula_term(&mut e, k, &[1], &[i, j, k - 1]);
        }
        [0, 2] => {
            formula_term(&mut e, i, &[2], &[i - 1, j, k]);
            formula_term(&mut e, j, &[1, 2], &[i, j - 1, k + 1]);
            formula_term(&mut e, j, &[0, 1], &[i + 1, j - 1, k]);
            formula_term(&mut e, j, &[0, 1, 2], &[i + 1, j, k]);
            formula_term(&mut e, k, &[0], &[i, j, k - 1]);
        }
        [0, 1] => {
            formula_term(&mut e, i, &[1], &[i - 1, j, k]);
            formula_term(&mut e, i, &[1, 2], &[i - 1, j + 1, k]);
            formula_term(&mut e, j, &[0], &[i, j - 1, k]);
            formula_term(&mut e, j + 1 + k, &[0, 2], &[i, j, k]);
        }
        [2] => {
            formula_term(&mut e, i, &[0], &[i - 1, j, k]);
            formula_term(&mut e, j, &[1], &[i + 1, j - 1, k]);
            formula_term(&mut e, j, &[0, 1], &[i, j - 1, k + 1]);
            formula_term(&mut e, j + k, &[0, 1, 2], &[i, j, k + 1]);
            formula_term(&mut e, k, &[], &[i, j, k - 1]);
            formula_term(&mut e, k, &[2], &[i, j + 1, k - 1]);
            formula_term(&mut e, k, &[1, 2], &[i + 1, j, k]);
        }
        [0] => {
            formula_term(&mut e, i, &[], &[i - 1, j, k]);
            formula_term(&mut e, i, &[2], &[i - 1, j + 1, k]);
            formula_term(&mut e, i + k, &[1, 2], &[i, j, k + 1]);
            formula_term(&mut e, i, &[0, 1, 2], &[i - 1, j, k + 2]);
            formula_term(&mut e, j, &[1], &[i, j - 1, k + 1]);
            formula_term(&mut e, j, &[0, 2], &[i + 1, j - 1, k + 1]);
            formula_term(&mut e, j + k, &[0, 1], &[i + 1, j, k]);
            formula_term(&mut e, j + k, &[0, 1, 2], &[i + 1, j + 1, k]);
            formula_term(&mut e, k, &[0], &[i, j + 1, k - 1]);
        }
        [1] => {
            formula_term(&mut e, i, &[0, 1], &[i - 1, j + 1, k]);
            formula_term(&mut e, i, &[0, 1, 2], &[i - 1, j + 2, k]);
            // forced by Delta o Delta = 0; see the transport formula tests
            formula_term(&mut e, i, &[0, 2], &[i - 1, j, k + 1]);
            formula_term(&mut e, j, &[], &[i, j - 1, k]);
            formula_term(&mut e, j + k, &[2], &[i, j, k]);
            formula_term(&mut e, j, &[1, 2], &[i + 1, j - 1, k + 1]);
            formula_term(&mut e, j, &[0, 1, 2], &[i, j - 1, k + 2]);
            formula_term(&mut e, k, &[1], &[i, j + 1, k - 1]);
        }
        _ => unreachable!(),
    }
    e
}

/// Criterion 6: the transported BV operator reproduces the degree-1 values
/// and the closed formula families for all exponents up to 2.
#[test]
fn acceptance_06_transported_delta() {
    timed("criterion 6: transported Delta", 10.0, || {
        // SO(3): full table over the family degrees
        let c = ctx("so3", None);
        let (spec, images) = free_loop_presentation(&c).unwrap();
        let transport = Transport::new(&c, spec.clone(), images).unwrap();
        let side = transport.transported_delta(-3, 11).unwrap();
        let e = |s: &str| parse_element(&spec, s).unwrap();
        // degree-1 values
        let expected = e("1 + u-2*v2 + u-1*u-2*v3");
        assert_eq!(side.delta(&e("u-2*v3")).unwrap(), expected);
        assert_eq!(side.delta(&e("u-1*v2")).unwrap(), expected);
        assert!(side.delta(&e("u-1*u-2*v2^2")).unwrap().is_zero());
        // four families, exponents <= 2
        for u_set in subsets(2) {
            for i in 0..=2i64 {
                for j in 0..=2i64 {
                    let poly: Vec<(u16, u32)> = [i, j]
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(t, &e)| (t as u16, e as u32))
                        .collect();
                    let m = Monomial {
                        poly,
                        ext: u_set.iter().map(|&x| x as u16).collect(),
                    };
                    let got = side.delta(&Element::monomial(m, 2)).unwrap();
                    assert_eq!(
                        got,
                        so3_family(&u_set, i, j),
                        "SO(3) family u_{u_set:?}, (i,j) = ({i},{j})"
                    );
                }
            }
        }

        // G_2: eight families, exponents <= 2, transported degree by degree
        let c = ctx("g2", None);
        let (spec, images) = free_loop_presentation(&c).unwrap();
        let transport = Transport::new(&c, spec.clone(), images).unwrap();
        let e = |s: &str| parse_element(&spec, s).unwrap();
        let mut monomials = Vec::new();
        let mut degrees = Vec::new();
        for u_set in subsets(3) {
            for i in 0..=2i64 {
                for j in 0..=2i64 {
                    for k in 0..=2i64 {
                        let poly: Vec<(u16, u32)> = [i, j, k]
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(t, &e)| (t as u16, e as u32))
                            .collect();
                        let m = Monomial {
                            poly,
                            ext: u_set.iter().map(|&x| x as u16).collect(),
                        };
                        degrees.push(spec.monomial_degree(&m));
                        monomials.push((u_set.clone(), i, j, k, m));
                    }
                }
            }
        }
        // degree-1 proof values also live in the window
        for extra in ["u-5*u-6*v6^2", "u-3*u-5*u-6*v4^2*v7", "u-5*u-6*v4^3",
                      "u-3*u-6*v4*v6", "u-6*v7", "u-5*v6", "u-3*v4"] {
            let el = e(extra);
            let (m, _) = el.iter().next().unwrap();
            degrees.push(spec.monomial_degree(m));
        }
        let side = transport.transported_delta_at(&degrees).unwrap();
        for (u_set, i, j, k, m) in monomials {
            let got = side.delta(&Element::monomial(m, 2)).unwrap();
            assert_eq!(
                got,
                g2_family(&u_set, i, j, k),
                "G_2 family u_{u_set:?}, (i,j,k) = ({i},{j},{k})"
            );
        }
        assert!(side.delta(&e("u-5*u-6*v6^2")).unwrap().is_zero());
        let val = e("u-3*u-5*v4^2 + u-3*u-5*u-6*v4^2*v6");
        assert_eq!(side.delta(&e("u-3*u-5*u-6*v4^2*v7")).unwrap(), val);
        assert_eq!(side.delta(&e("u-5*u-6*v4^3")).unwrap(), val);
        assert_eq!(
            side.delta(&e("u-3*u-6*v4*v6")).unwrap(),
            e("u-6*v6 + u-5*u-6*v4*v7 + u-3*u-5*v4^2 + u-3*u-5*u-6*v4^2*v6")
        );
        let unit_val = e("1 + u-6*v6 + u-5*u-6*v4*v7 + u-3*u-5*u-6*v7^2");
        assert_eq!(side.delta(&e("u-6*v7")).unwrap(), unit_val);
        assert_eq!(side.delta(&e("u-5*v6")).unwrap(), unit_val);
        assert_eq!(side.delta(&e("u-3*v4")).unwrap(), unit_val);
    });
}

/// Criterion 7: the SO(3) filter chain finds exactly two Gerstenhaber
/// isomorphisms with the expected generator images and no BV isomorphism; the
/// unit lies in the image of Delta on the Hochschild sides but not on the
/// loop sides.
#[test]
fn acceptance_07_iso_verdicts() {
    timed("criterion 7: iso verdicts", 10.0, || {
        let c = ctx("so3", None);
        let (spec, images) = free_loop_presentation(&c).unwrap();
        let transport = Transport::new(&c, spec.clone(), images).unwrap();
        transport.validate(-3, 9).unwrap();
        let target = transport.transported_delta(-3, 9).unwrap();
        let source = BvSide::from_hochschild(hh_of_loop_homology(&c.model).unwrap()).unwrap();
        let problem = IsoProblem::new(source, target, 8);
        let report = search(&problem, IsoLevel::Bv, ExecMode::Parallel).unwrap();
        assert_eq!(report.scanned, 4096);
        assert_eq!(report.gerstenhaber, Some(2), "two Gerstenhaber isomorphisms");
        assert_eq!(report.bv, Some(0), "no BV isomorphism");
        assert!(report.unit_in_im_delta_source, "1 in Im Delta on HH side");
        assert!(!report.unit_in_im_delta_target, "1 not in Im Delta on loop side");
        assert!(report.algebra_morphisms >= report.surjective);
        assert!(report.surjective >= 2);

        // the survivors listed at the bv level are the Gerstenhaber pair;
        // rerun at the gerstenhaber level and pin their images
        let report = search(&problem, IsoLevel::Gerstenhaber, ExecMode::Parallel).unwrap();
        let expect = |strings: [&str; 4]| -> Vec<(String, String)> {
            ["x-1", "x-2", "y2", "y3"]
                .iter()
                .zip(strings)
                .map(|(g, s)| {
                    let el = parse_element(&problem.target.spec, s).unwrap();
                    (g.to_string(), problem.target.spec.element_string(&el))
                })
                .collect()
        };
        // epsilon = b = c = alpha = 1, beta = 0, a = gamma = delta in {0, 1}
        let survivor_a = expect([
            "u-1 + u-1*u-2*v2",
            "u-2",
            "v2 + u-1*v3 + u-1*u-2*v2*v3",
            "v3 + u-2*v2*v3",
        ]);
        let survivor_b = expect([
            "u-1 + u-1*u-2*v2",
            "u-2",
            "v2 + u-1*v3 + u-2*v2^2 + u-1*u-2*v2*v3",
            "v3 + u-1*v2^2 + u-2*v2*v3 + u-1*u-2*v2^3",
        ]);
        assert_eq!(report.survivors.len(), 2);
        assert!(report.survivors.contains(&survivor_a), "{:?}", report.survivors);
        assert!(report.survivors.contains(&survivor_b));

        // 1 not in Im Delta on the G_2 loop side either, via the loop model
        for name in ["so3", "g2"] {
            let c = ctx(name, None);
            let basis = c
                .model
                .loop_spec
                .basis_of_degree(c.model.d + 1)
                .unwrap();
            let columns: Vec<Element> = basis
                .iter()
                .map(|m| c.model.delta(&Element::monomial(m.clone(), 2)).unwrap())
                .collect();
            let hit = solve_linear(&c.model.loop_spec, &columns, c.unit())
                .unwrap()
                .is_some();
            assert!(!hit, "unit not in Im Delta for {name}");
            // ... while the Hochschild side contains it
            let hh = BvSide::from_hochschild(hh_of_loop_homology(&c.model).unwrap()).unwrap();
            assert!(hh.unit_in_image_delta().unwrap(), "HH side of {name}");
        }
    });
}

/// Criterion 8: `1 in Im Delta` for exterior algebras up to four generators,
/// and for truncated polynomial algebras exactly when the truncation exponent
/// is invertible.
#[test]
fn acceptance_08_hochschild_criteria() {
    timed("criterion 8: Hochschild criteria", 2.0, || {
        for p in [2u32, 3, 5] {
            for n in 1..=4usize {
                let gens: Vec<Generator> = (0..n)
                    .map(|i| {
                        let d = -(2 * i as i64 + 3);
                        Generator::new(format!("x{i}"), if p == 2 { d - 1 } else { d })
                    })
                    .collect();
                let fa = FrobeniusAlgebra::exterior(gens, p).unwrap();
                assert!(
                    derivation_commuting_with_trace(&fa).unwrap().is_some(),
                    "Lambda(V), N = {n}, p = {p}"
                );
            }
            for n in 1..=6u32 {
                let fa = FrobeniusAlgebra::truncated_poly("x", 2, n, p).unwrap();
                let witness = derivation_commuting_with_trace(&fa).unwrap();
                assert_eq!(
                    witness.is_some(),
                    n % p != 0,
                    "K[x]/x^{} over F_{p}",
                    n + 1
                );
            }
        }
    });
}

/// Criterion 9: the canonical splitting and the explicit generator images
/// realize algebra isomorphisms onto the loop algebra, verified
/// multiplicatively on full bases up to degree 14.
#[test]
fn acceptance_09_splitting_isomorphisms() {
    timed("criterion 9: splitting isomorphisms", 10.0, || {
        for name in ["so3", "g2"] {
            let c = ctx(name, None);
            let spec = &c.model.loop_spec;
            let n = c.model.n;

            // psi(a (x) x_I) = Dlcop(top (x) a x_I): involutive, multiplicative
            let mut basis14 = Vec::new();
            for deg in 0..=14 {
                basis14.extend(spec.basis_of_degree(deg).unwrap());
            }
            let mut images = Vec::new();
            for m in &basis14 {
                let z = Element::monomial(m.clone(), 2);
                let psi_z = c.psi_involution(&z).unwrap();
                assert_eq!(c.psi_involution(&psi_z).unwrap(), z, "{name}: involution");
                images.push(psi_z);
            }
            for (m1, psi1) in basis14.iter().zip(&images) {
                for (m2, psi2) in basis14.iter().zip(&images) {
                    let product = c.dlcop(psi1, psi2).unwrap();
                    // x_{I u J} full <-> the expected value psi(a b x_{I n J})
                    let mut union: Vec<u16> =
                        m1.ext.iter().chain(m2.ext.iter()).copied().collect();
                    union.sort();
                    union.dedup();
                    let expected = if union.len() == n {
                        let inter: Vec<usize> = m1
                            .ext
                            .iter()
                            .filter(|i| m2.ext.contains(i))
                            .map(|&i| i as usize)
                            .collect();
                        let ab = spec.multiply(
                            &Element::monomial(m1.poly_part(), 2),
                            &Element::monomial(m2.poly_part(), 2),
                        );
                        c.canonical_splitting(&ab, &inter).unwrap()
                    } else {
                        Element::zero()
                    };
                    assert_eq!(product, expected, "{name}: psi multiplicativity");
                }
            }
            // psi(1 (x) top) is the unit
            assert_eq!(
                c.canonical_splitting(&spec.one(), &(0..n).collect::<Vec<_>>())
                    .unwrap(),
                *c.unit()
            );

            // phi: generator images define an algebra morphism, bijective
            // degreewise up to 14, and multiplicative on basis pairs
            let (free_spec, gen_images) = free_loop_presentation(&c).unwrap();
            let transport = Transport::new(&c, free_spec.clone(), gen_images).unwrap();
            transport.validate(-c.model.d, 14).unwrap();
            let mut source_basis = Vec::new();
            for deg in -c.model.d..=7 {
                source_basis.extend(free_spec.basis_of_degree(deg).unwrap());
            }
            for m1 in &source_basis {
                for m2 in &source_basis {
                    let d12 = free_spec.monomial_degree(m1) + free_spec.monomial_degree(m2);
                    if d12 > 14 - c.model.d {
                        continue;
                    }
                    let lhs = c
                        .m(
                            &transport.apply_monomial(m1).unwrap(),
                            &transport.apply_monomial(m2).unwrap(),
                        )
                        .unwrap();
                    let product = free_spec.multiply(
                        &Element::monomial(m1.clone(), 2),
                        &Element::monomial(m2.clone(), 2),
                    );
                    assert_eq!(
                        lhs,
                        transport.apply(&product).unwrap(),
                        "{name}: phi multiplicativity"
                    );
                }
            }
        }
    });
}

/// Criterion 10: under hypothesis (H) the search machinery exhibits a BV
/// isomorphism between the loop algebra and the Hochschild model: a full
/// exhaustive run for t2, the canonical relabeling for t3.
#[test]
fn acceptance_10_hypothesis_h_bv_iso() {
    timed("criterion 10: BV isomorphism under (H)", 10.0, || {
        // t2: exhaustive over all 2^14 candidates
        let c = ctx("t2", None);
        let (spec, images) = free_loop_presentation(&c).unwrap();
        let transport = Transport::new(&c, spec, images).unwrap();
        transport.validate(-2, 6).unwrap();
        let target = transport.transported_delta(-2, 6).unwrap();
        let source = BvSide::from_hochschild(hh_of_loop_homology(&c.model).unwrap()).unwrap();
        let problem = IsoProblem::new(source, target, 5);
        let report = search(&problem, IsoLevel::Bv, ExecMode::Parallel).unwrap();
        assert_eq!(report.scanned, 1 << 14);
        assert!(report.bv.unwrap() >= 1, "t2: a BV isomorphism exists");
        assert!(report.unit_in_im_delta_source && report.unit_in_im_delta_target);

        // t3: the relabeling candidate passes the whole chain
        let c = ctx("t3", None);
        let (spec, images) = free_loop_presentation(&c).unwrap();
        let transport = Transport::new(&c, spec, images).unwrap();
        transport.validate(-3, 8).unwrap();
        let target = transport.transported_delta(-3, 8).unwrap();
        let source = BvSide::from_hochschild(hh_of_loop_homology(&c.model).unwrap()).unwrap();
        let problem = IsoProblem::new(source, target, 6);
        let cand = relabeling_candidate(&problem.source.spec, &problem.target.spec, 0);
        let out = problem.check_candidate(&cand).unwrap();
        assert!(out.algebra_morphism && out.surjective && out.gerstenhaber && out.bv);
    });
}

/// Basis listing shared by the SO(3) non-isomorphism parameterization: the
/// degree-2 piece of the transported presentation.
#[test]
fn acceptance_support_basis_listing() {
    let spec = AlgebraSpec::new(
        2,
        vec![Generator::new("v2", 2), Generator::new("v3", 3)],
        vec![Generator::new("u-1", -1), Generator::new("u-2", -2)],
    )
    .unwrap();
    let names: Vec<String> = spec
        .basis_of_degree(2)
        .unwrap()
        .iter()
        .map(|m| spec.monomial_string(m))
        .collect();
    assert_eq!(names, vec!["v2", "u-1*v3", "u-2*v2^2", "u-1*u-2*v2*v3"]);
}
