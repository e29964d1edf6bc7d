//! From a presentation of `H^*(BG; F_p)` to the realized loop-space algebras:
//! the base `H^*(X) = K[y_1,...,y_N]`, the free loop algebra
//! `H^*(LX) = K[y] (x) Delta(x_1,...,x_N)` with `x_i = Delta(ev^* y_i)` and
//! the squares `x_i^2 = D(Sq^{|y_i|-1} y_i)`, and the fiber
//! `H^*(Omega X) = Delta(s(y_1),...,s(y_N))` with restriction, antipode and
//! the orientation functional `tau`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Generator};
use crate::element::Element;
use crate::error::AlgebraError;
use crate::literal::parse_element;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// User-facing description of `H^*(BG)`: coefficient prime, polynomial
/// generators, and (mod 2 only) the classes `Sq^{|y|-1} y` per generator.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Presentation {
    pub prime: u32,
    pub generators: Vec<PresentationGenerator>,
    /// Top Steenrod squares `y -> Sq^{|y|-1} y`, as element literals over the
    /// generators. Only allowed when `prime = 2`; absent entries mean zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sq_top: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PresentationGenerator {
    pub name: String,
    pub degree: i64,
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Presentation, AlgebraError> {
        serde_json::from_str(text)
            .map_err(|e| AlgebraError::Presentation(format!("malformed JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

/// The realized algebras. Exterior index `i` in `loop_spec` and `fiber`
/// corresponds to polynomial generator `i` of `base`.
#[derive(Clone, Debug)]
pub struct LoopModel {
    pub base: AlgebraSpec,
    pub loop_spec: AlgebraSpec,
    pub fiber: AlgebraSpec,
    /// Degree of `x_1 ... x_N`, the dimension shift.
    pub d: i64,
    pub n: usize,
    /// Hypothesis (H): p odd, p = 0, or p = 2 with vanishing top squares;
    /// equivalently every loop square rule is empty.
    pub hypothesis_h: bool,
}

/// Build the loop model, checking the presentation invariants: degrees at
/// least 2, `sq_top` only mod 2 with homogeneous values of degree `2|y| - 1`.
pub fn validate_presentation(pres: &Presentation) -> Result<LoopModel, AlgebraError> {
    if pres.generators.is_empty() {
        return Err(AlgebraError::Presentation("no generators".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for g in &pres.generators {
        if g.degree < 2 {
            return Err(AlgebraError::BadGenerator {
                name: g.name.clone(),
                reason: format!("generator degree {} < 2", g.degree),
            });
        }
        if !seen.insert(&g.name) {
            return Err(AlgebraError::BadGenerator {
                name: g.name.clone(),
                reason: "duplicate generator name".into(),
            });
        }
    }
    if pres.prime != 2 && !pres.sq_top.is_empty() {
        return Err(AlgebraError::Presentation(
            "sq_top data requires prime = 2".into(),
        ));
    }
    let poly_gens: Vec<Generator> = pres
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    let base = AlgebraSpec::new(pres.prime, poly_gens.clone(), vec![])?;

    let x_names = suspension_names("x", &pres.generators);
    let ext_gens: Vec<Generator> = pres
        .generators
        .iter()
        .zip(&x_names)
        .map(|(g, name)| Generator::new(name.clone(), g.degree - 1))
        .collect();
    let mut loop_spec = AlgebraSpec::new(pres.prime, poly_gens.clone(), ext_gens)?;

    // x_i^2 := D(Sq^{|y_i|-1} y_i), with D the module derivation
    let mut rules: Vec<Element> = vec![Element::zero(); pres.generators.len()];
    for (name, literal) in &pres.sq_top {
        let i = pres
            .generators
            .iter()
            .position(|g| &g.name == name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
        let value = parse_element(&base, literal)?;
        let expected = 2 * pres.generators[i].degree - 1;
        match base.degree(&value)? {
            None => {}
            Some(d) if d == expected => {}
            Some(d) => {
                return Err(AlgebraError::Presentation(format!(
                    "sq_top[{name}] must be homogeneous of degree {expected}, got {d}"
                )))
            }
        }
        rules[i] = derivation_on(&loop_spec, &value)?;
    }
    let hypothesis_h = rules.iter().all(|r| r.is_zero());
    for (i, rule) in rules.iter().enumerate() {
        loop_spec.set_square_rule(i, rule.clone())?;
    }

    // fiber: Delta(s(y_1),...,s(y_N)); mod 2 the squares are the y -> 0
    // truncations of the loop rules
    let s_names = suspension_names("s", &pres.generators);
    let fiber_gens: Vec<Generator> = pres
        .generators
        .iter()
        .zip(&s_names)
        .map(|(g, name)| Generator::new(name.clone(), g.degree - 1))
        .collect();
    let mut fiber = AlgebraSpec::new(pres.prime, vec![], fiber_gens)?;
    if pres.prime == 2 {
        for (i, rule) in rules.iter().enumerate() {
            let truncated = rule.map_monomials(|m| {
                if m.poly.is_empty() {
                    Some(m.clone())
                } else {
                    None
                }
            });
            fiber.set_square_rule(i, truncated)?;
        }
    }

    let d: i64 = pres.generators.iter().map(|g| g.degree - 1).sum();
    Ok(LoopModel {
        base,
        loop_spec,
        fiber,
        d,
        n: pres.generators.len(),
        hypothesis_h,
    })
}

/// Degree-based display names (`x3, x5, x6` for G_2) with a positional
/// fallback when suspension degrees collide (`x1, x2, x3` for a torus).
fn suspension_names(prefix: &str, gens: &[PresentationGenerator]) -> Vec<String> {
    let degs: Vec<i64> = gens.iter().map(|g| g.degree - 1).collect();
    let mut sorted = degs.clone();
    sorted.dedup();
    let distinct = {
        let mut s = degs.clone();
        s.sort();
        s.dedup();
        s.len() == degs.len()
    };
    if distinct {
        degs.iter().map(|d| format!("{prefix}{d}")).collect()
    } else {
        (1..=gens.len()).map(|i| format!("{prefix}{i}")).collect()
    }
}

impl LoopModel {
    /// `D(P) = sum_j x_j dP/dy_j`, the module derivation `Delta o ev^*`
    /// applied to a polynomial class.
    pub fn derivation_d(&self, p: &Element) -> Result<Element, AlgebraError> {
        derivation_on(&self.loop_spec, p)
    }

    /// The BV operator on `H^*(LX)`: the unique degree `-1` derivation with
    /// `Delta(y_i) = x_i` and `Delta(x_i) = 0`.
    pub fn delta(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.loop_spec.degree(a)?;
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            // only polynomial factors contribute; for p != 2 they are even,
            // so no Leibniz sign accumulates in front of them
            for &(j, e) in &m.poly {
                let mut reduced: Vec<(u16, u32)> = m
                    .poly
                    .iter()
                    .filter_map(|&(i, exp)| {
                        let exp = if i == j { exp - 1 } else { exp };
                        (exp > 0).then_some((i, exp))
                    })
                    .collect();
                reduced.sort();
                let coeff = c * &self.loop_spec.scalar(e as i64);
                // x_j inserted at the polynomial slot, then pushed into the
                // exterior part by normal-forming (square rules may fire)
                let xj_xi = self.loop_spec.multiply_monomials(
                    &Monomial::ext_gen(j as usize),
                    &m.ext_part(),
                    &coeff,
                );
                let poly = Element::monomial(
                    Monomial {
                        poly: reduced,
                        ext: vec![],
                    },
                    self.prime(),
                );
                out = &out + &self.loop_spec.multiply(&poly, &xj_xi);
            }
        }
        Ok(out)
    }

    /// Restriction `i^*: H^*(LX) -> H^*(Omega X)`: kills `y_i`, sends
    /// `x_i -> s(y_i)`.
    pub fn restrict(&self, a: &Element) -> Element {
        a.map_monomials(|m| m.poly.is_empty().then(|| m.clone()))
    }

    /// Antipode of the Hopf algebra `H^*(Omega X)`: `-1` on each suspension
    /// generator, extended multiplicatively.
    pub fn antipode(&self, u: &Element) -> Element {
        let p = self.prime();
        let mut out = Element::zero();
        for (m, c) in u.iter() {
            let sign = Scalar::sign_pow(p, m.ext.len() as i64);
            out.add_term(m.clone(), c * &sign);
        }
        out
    }

    /// Orientation functional on `H^d(Omega X)`, normalized by
    /// `tau(s(y_1)...s(y_N)) = 1`: the coefficient of the top monomial.
    pub fn tau(&self, u: &Element) -> Result<Scalar, AlgebraError> {
        match self.fiber.degree(u)? {
            None => Ok(Scalar::zero(self.prime())),
            Some(deg) if deg == self.d => {
                let top = Monomial::ext_set(&(0..self.n).collect::<Vec<_>>());
                Ok(u.coefficient(&top)
                    .cloned()
                    .unwrap_or_else(|| Scalar::zero(self.prime())))
            }
            Some(deg) => Err(AlgebraError::WrongDegree {
                expected: self.d,
                got: deg,
            }),
        }
    }

    pub fn prime(&self) -> u32 {
        self.loop_spec.prime()
    }

    /// The top exterior monomial `x_1 ... x_N`.
    pub fn top_exterior(&self) -> Element {
        Element::monomial(
            Monomial::ext_set(&(0..self.n).collect::<Vec<_>>()),
            self.prime(),
        )
    }
}

fn derivation_on(loop_spec: &AlgebraSpec, p: &Element) -> Result<Element, AlgebraError> {
    let mut out = Element::zero();
    for j in 0..loop_spec.poly_gens().len() {
        let dp = loop_spec.partial_derivative(p, j)?;
        if dp.is_zero() {
            continue;
        }
        let xj = Element::monomial(Monomial::ext_gen(j), loop_spec.prime());
        out = &out + &loop_spec.multiply(&xj, &dp);
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Preset catalog
// ----------------------------------------------------------------------

/// Shipped presentations: `so3`, `g2` (Wu-formula Steenrod data, mod 2),
/// `tn` for the rank-`n` torus and `sun` for `SU(n)`.
pub fn preset(name: &str, prime: Option<u32>) -> Result<Presentation, AlgebraError> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "so3" => {
            if let Some(p) = prime {
                if p != 2 {
                    return Err(AlgebraError::Presentation(
                        "so3 carries mod-2 Steenrod data; prime must be 2".into(),
                    ));
                }
            }
            let mut sq_top = BTreeMap::new();
            sq_top.insert("y2".to_string(), "y3".to_string());
            sq_top.insert("y3".to_string(), "y2*y3".to_string());
            Ok(Presentation {
                prime: 2,
                generators: vec![
                    PresentationGenerator {
                        name: "y2".into(),
                        degree: 2,
                    },
                    PresentationGenerator {
                        name: "y3".into(),
                        degree: 3,
                    },
                ],
                sq_top,
            })
        }
        "g2" => {
            if let Some(p) = prime {
                if p != 2 {
                    return Err(AlgebraError::Presentation(
                        "g2 carries mod-2 Steenrod data; prime must be 2".into(),
                    ));
                }
            }
            let mut sq_top = BTreeMap::new();
            sq_top.insert("y4".to_string(), "y7".to_string());
            sq_top.insert("y6".to_string(), "y4*y7".to_string());
            sq_top.insert("y7".to_string(), "y6*y7".to_string());
            Ok(Presentation {
                prime: 2,
                generators: vec![
                    PresentationGenerator {
                        name: "y4".into(),
                        degree: 4,
                    },
                    PresentationGenerator {
                        name: "y6".into(),
                        degree: 6,
                    },
                    PresentationGenerator {
                        name: "y7".into(),
                        degree: 7,
                    },
                ],
                sq_top,
            })
        }
        _ if lower.starts_with('t') => {
            let rank: usize = lower[1..]
                .parse()
                .map_err(|_| AlgebraError::Presentation(format!("unknown preset `{name}`")))?;
            if rank == 0 || rank > 8 {
                return Err(AlgebraError::Presentation(format!(
                    "torus rank {rank} out of range 1..=8"
                )));
            }
            Ok(Presentation {
                prime: prime.unwrap_or(2),
                generators: (1..=rank)
                    .map(|i| PresentationGenerator {
                        name: format!("y{i}"),
                        degree: 2,
                    })
                    .collect(),
                sq_top: BTreeMap::new(),
            })
        }
        _ if lower.starts_with("su") => {
            let n: usize = lower[2..]
                .parse()
                .map_err(|_| AlgebraError::Presentation(format!("unknown preset `{name}`")))?;
            if n < 2 || n > 8 {
                return Err(AlgebraError::Presentation(format!(
                    "su{n} out of range su2..=su8"
                )));
            }
            Ok(Presentation {
                prime: prime.unwrap_or(5),
                generators: (2..=n)
                    .map(|i| PresentationGenerator {
                        name: format!("y{}", 2 * i),
                        degree: 2 * i as i64,
                    })
                    .collect(),
                sq_top: BTreeMap::new(),
            })
        }
        _ => Err(AlgebraError::Presentation(format!(
            "unknown preset `{name}` (expected so3, g2, tN or suN)"
        ))),
    }
}

pub fn preset_model(name: &str, prime: Option<u32>) -> Result<LoopModel, AlgebraError> {
    validate_presentation(&preset(name, prime)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_model_rules() {
        let model = preset_model("so3", None).unwrap();
        assert_eq!(model.d, 3);
        assert_eq!(model.n, 2);
        assert!(!model.hypothesis_h);
        // x1^2 = x2, x2^2 = x1 y3 + x2 y2
        assert_eq!(
            model.loop_spec.element_string(model.loop_spec.square_rule(0)),
            "x2"
        );
        assert_eq!(
            model.loop_spec.element_string(model.loop_spec.square_rule(1)),
            "x1*y3 + x2*y2"
        );
        // fiber: s1^2 = s2, s2^2 = 0
        assert_eq!(model.fiber.element_string(model.fiber.square_rule(0)), "s2");
        assert!(model.fiber.square_rule(1).is_zero());
    }

    #[test]
    fn g2_model_rules() {
        let model = preset_model("g2", None).unwrap();
        assert_eq!(model.d, 14);
        let ls = &model.loop_spec;
        assert_eq!(ls.element_string(ls.square_rule(0)), "x6");
        assert_eq!(ls.element_string(ls.square_rule(1)), "x3*y7 + x6*y4");
        assert_eq!(ls.element_string(ls.square_rule(2)), "x5*y7 + x6*y6");
    }

    #[test]
    fn torus_hypothesis_h() {
        let model = preset_model("t2", Some(0)).unwrap();
        assert_eq!(model.d, 2);
        assert!(model.hypothesis_h);
        assert!(!model.loop_spec.has_square_rules());
    }

    #[test]
    fn derivation_is_leibniz() {
        let model = preset_model("so3", None).unwrap();
        // D(y2) = x1
        let y2 = Element::monomial(Monomial::poly_gen(0), 2);
        assert_eq!(
            model.derivation_d(&y2).unwrap(),
            Element::monomial(Monomial::ext_gen(0), 2)
        );
        // D(y2 y3) = x1 y3 + x2 y2, which is exactly the x2^2 rule
        let y2y3 = Element::monomial(
            Monomial {
                poly: vec![(0, 1), (1, 1)],
                ext: vec![],
            },
            2,
        );
        assert_eq!(
            model.derivation_d(&y2y3).unwrap(),
            model.loop_spec.square_rule(1).clone()
        );
        // mod 2: D(y^2) = 0
        let y2sq = Element::monomial(Monomial::poly_power(0, 2), 2);
        assert!(model.derivation_d(&y2sq).unwrap().is_zero());
    }

    #[test]
    fn delta_on_so3() {
        let model = preset_model("so3", None).unwrap();
        let y2 = Element::monomial(Monomial::poly_gen(0), 2);
        let x1 = Element::monomial(Monomial::ext_gen(0), 2);
        let x2 = Element::monomial(Monomial::ext_gen(1), 2);
        assert_eq!(model.delta(&y2).unwrap(), x1);
        // Delta(x1 x2) = 0
        let x1x2 = Element::monomial(Monomial::ext_set(&[0, 1]), 2);
        assert!(model.delta(&x1x2).unwrap().is_zero());
        // Leibniz then x1^2 = x2: Delta(y2 x1) = x2
        let y2x1 = Element::monomial(
            Monomial {
                poly: vec![(0, 1)],
                ext: vec![0],
            },
            2,
        );
        assert_eq!(model.delta(&y2x1).unwrap(), x2);
    }

    #[test]
    fn delta_squared_vanishes_on_bases() {
        for name in ["so3", "g2"] {
            let model = preset_model(name, None).unwrap();
            for n in 0..=(2 * model.d.min(8)) {
                for m in model.loop_spec.basis_of_degree(n).unwrap() {
                    let e = Element::monomial(m, model.prime());
                    let dd = model.delta(&model.delta(&e).unwrap()).unwrap();
                    assert!(dd.is_zero(), "Delta^2 != 0 on {}", model.loop_spec.element_string(&e));
                }
            }
        }
    }

    #[test]
    fn delta_is_a_derivation() {
        use rand::Rng;
        use rand::SeedableRng;
        let model = preset_model("g2", None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let spec = &model.loop_spec;
        for _ in 0..200 {
            let na = rng.gen_range(0..12);
            let nb = rng.gen_range(0..12);
            let ba = spec.basis_of_degree(na).unwrap();
            let bb = spec.basis_of_degree(nb).unwrap();
            if ba.is_empty() || bb.is_empty() {
                continue;
            }
            let a = Element::monomial(ba[rng.gen_range(0..ba.len())].clone(), 2);
            let b = Element::monomial(bb[rng.gen_range(0..bb.len())].clone(), 2);
            let lhs = model.delta(&spec.multiply(&a, &b)).unwrap();
            let sign = Scalar::sign_pow(2, na);
            let rhs = &spec.multiply(&model.delta(&a).unwrap(), &b)
                + &spec.multiply(&a, &model.delta(&b).unwrap()).scale(&sign);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn restriction_and_antipode() {
        let model = preset_model("so3", None).unwrap();
        // i*(y2 x1) = 0
        let y2x1 = Element::monomial(
            Monomial {
                poly: vec![(0, 1)],
                ext: vec![0],
            },
            2,
        );
        assert!(model.restrict(&y2x1).is_zero());
        // i*(x1 x2) = s1 s2
        let x1x2 = Element::monomial(Monomial::ext_set(&[0, 1]), 2);
        let s1s2 = Element::monomial(Monomial::ext_set(&[0, 1]), 2);
        assert_eq!(model.restrict(&x1x2), s1s2);
        // i*(x2^2) through both routes: i* of the rule, and the fiber square
        let x2 = Element::monomial(Monomial::ext_gen(1), 2);
        let lhs = model.restrict(&model.loop_spec.multiply(&x2, &x2));
        let s2 = Element::monomial(Monomial::ext_gen(1), 2);
        let rhs = model.fiber.multiply(&s2, &s2);
        assert_eq!(lhs, rhs);
        assert!(lhs.is_zero());
        // i* o D is the suspension on generators
        let y3 = Element::monomial(Monomial::poly_gen(1), 2);
        assert_eq!(
            model.restrict(&model.derivation_d(&y3).unwrap()),
            Element::monomial(Monomial::ext_gen(1), 2)
        );
        // antipode mod 2 is the identity
        assert_eq!(model.antipode(&s1s2), s1s2);
    }

    #[test]
    fn antipode_negates_generators_rationally() {
        let model = preset_model("t2", Some(0)).unwrap();
        let s1 = Element::monomial(Monomial::ext_gen(0), 0);
        assert_eq!(model.antipode(&s1), -&s1);
        let one = model.fiber.one();
        assert_eq!(model.antipode(&one), one);
        // algebra morphism on a product of two generators
        let s1s2 = Element::monomial(Monomial::ext_set(&[0, 1]), 0);
        assert_eq!(model.antipode(&s1s2), s1s2);
    }

    #[test]
    fn tau_normalization() {
        let model = preset_model("so3", None).unwrap();
        let top = Element::monomial(Monomial::ext_set(&[0, 1]), 2);
        assert_eq!(model.tau(&top).unwrap(), Scalar::one(2));
        assert_eq!(model.tau(&Element::zero()).unwrap(), Scalar::zero(2));
        // wrong degree errors
        let s1 = Element::monomial(Monomial::ext_gen(0), 2);
        assert!(model.tau(&s1).is_err());

        // Koszul sign on a swapped product over Q
        let t2 = preset_model("t2", Some(0)).unwrap();
        let s1 = Element::monomial(Monomial::ext_gen(0), 0);
        let s2 = Element::monomial(Monomial::ext_gen(1), 0);
        let swapped = t2.fiber.multiply(&s2, &s1);
        assert_eq!(t2.tau(&swapped).unwrap(), -&Scalar::one(0));
    }

    #[test]
    fn presentation_errors() {
        // sq_top away from p = 2
        let pres = Presentation {
            prime: 3,
            generators: vec![PresentationGenerator {
                name: "y".into(),
                degree: 4,
            }],
            sq_top: [("y".to_string(), "y".to_string())].into_iter().collect(),
        };
        assert!(validate_presentation(&pres).is_err());
        // odd generator away from p = 2 (rejected by the spec layer)
        let pres = Presentation {
            prime: 3,
            generators: vec![PresentationGenerator {
                name: "y".into(),
                degree: 3,
            }],
            sq_top: BTreeMap::new(),
        };
        assert!(validate_presentation(&pres).is_err());
        // degree mismatch in sq_top
        let pres = Presentation {
            prime: 2,
            generators: vec![PresentationGenerator {
                name: "y2".into(),
                degree: 2,
            }],
            sq_top: [("y2".to_string(), "y2".to_string())].into_iter().collect(),
        };
        assert!(validate_presentation(&pres).is_err());
        // unknown generator in sq_top
        let pres = Presentation {
            prime: 2,
            generators: vec![PresentationGenerator {
                name: "y2".into(),
                degree: 2,
            }],
            sq_top: [("y9".to_string(), "y2".to_string())].into_iter().collect(),
        };
        assert!(validate_presentation(&pres).is_err());
    }

    #[test]
    fn presentation_json_roundtrip() {
        for name in ["so3", "g2", "t3", "su3"] {
            let pres = preset(name, None).unwrap();
            let parsed = Presentation::from_json(&pres.to_json()).unwrap();
            assert_eq!(parsed, pres);
        }
        let doc = r#"{"prime":2,"generators":[{"name":"y2","degree":2},{"name":"y3","degree":3}],"sq_top":{"y2":"y3","y3":"y2*y3"}}"#;
        let pres = Presentation::from_json(doc).unwrap();
        assert_eq!(pres, preset("so3", None).unwrap());
        let model = validate_presentation(&pres).unwrap();
        assert_eq!(model.d, 3);
    }
}
