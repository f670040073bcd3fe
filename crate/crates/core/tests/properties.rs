use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use skein_core::presentations::{self, Presentation};
use skein_core::structure::{center_up_to_degree, lemma3_predicate};
use skein_core::torus::{CurveTable, LatticeLink, LinkExpansion, LinkKey, TorusTarget};
use skein_core::{Element, Laurent, QuotientSpec, Specialization, Word};

fn all() -> &'static [Presentation] {
    static P: OnceLock<Vec<Presentation>> = OnceLock::new();
    P.get_or_init(presentations::all)
}

fn f11_table() -> &'static CurveTable {
    static T: OnceLock<CurveTable> = OnceLock::new();
    T.get_or_init(|| CurveTable::new(TorusTarget::F11, 50))
}

type RawTerm = (Vec<u8>, Vec<(i64, i64)>);

fn raw_element() -> impl Strategy<Value = Vec<RawTerm>> {
    let term = (
        prop::collection::vec(any::<u8>(), 0..4),
        prop::collection::vec((-3i64..4, -3i64..4), 1..3),
    );
    prop::collection::vec(term, 0..4)
}

fn build(p: &Presentation, raw: &[RawTerm]) -> Element {
    let n = p.table().len() as u8;
    Element::from_terms(
        p.table(),
        raw.iter().map(|(w, c)| {
            (
                w.iter().map(|g| g % n).collect::<Word>(),
                Laurent::from_terms(c.clone()),
            )
        }),
    )
}

fn rules() -> Vec<Specialization> {
    vec![
        Specialization::eval_minus_one(),
        Specialization::Quotient(QuotientSpec::a2_minus_one()),
        Specialization::Quotient(QuotientSpec::a2_plus_one()),
        Specialization::Quotient(QuotientSpec::a4_minus_one()),
        Specialization::SquareA,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_linear(i in 0usize..6, a in raw_element(), b in raw_element(), s in (-3i64..4, -3i64..4)) {
        let p = &all()[i];
        let (a, b) = (build(p, &a), build(p, &b));
        let s = Laurent::from_terms([s]);
        prop_assert_eq!(p.nf(&(&a + &b)), p.nf(&a) + p.nf(&b));
        prop_assert_eq!(p.nf(&a.scale(&s)), p.nf(&a).scale(&s));
    }

    #[test]
    fn product_is_well_defined(i in 0usize..6, a in raw_element(), b in raw_element()) {
        let p = &all()[i];
        let (a, b) = (build(p, &a), build(p, &b));
        prop_assert_eq!(p.nf(&(&a * &b)), p.mul(&p.nf(&a), &p.nf(&b)));
    }

    #[test]
    fn normal_forms_are_fixed(i in 0usize..6, a in raw_element()) {
        let p = &all()[i];
        let n = p.nf(&build(p, &a));
        prop_assert!(n.terms().all(|(w, _)| p.system.is_normal_word(w)));
        prop_assert_eq!(p.nf(&n), n);
    }

    #[test]
    fn specialization_commutes_with_normal_form(i in 0usize..6, r in 0usize..5, a in raw_element()) {
        let p = &all()[i];
        let rule = &rules()[r];
        let s = p.specialized(rule);
        let e = build(p, &a);
        let down = |x: &Element| s.system.reduce_coeffs(&x.map_coeffs(|c| rule.apply(c)));
        prop_assert_eq!(s.nf(&down(&p.nf(&e))), s.nf(&down(&e)));
    }

    #[test]
    fn central_generators_commute(i in 0usize..6, a in raw_element()) {
        let p = &all()[i];
        let e = build(p, &a);
        let t = p.table();
        for g in (0..t.len() as u8).filter(|g| t.is_central(*g)) {
            let c = p.system.commutator(&Element::generator(t, g), &e, &Laurent::one()).unwrap();
            prop_assert!(c.is_zero());
        }
    }

    #[test]
    fn link_basis_round_trip(terms in prop::collection::vec(((-4i64..5, -4i64..5), (-3i64..4, -3i64..4)), 0..5)) {
        let table = f11_table();
        let exp: LinkExpansion = terms
            .into_iter()
            .map(|((p, q), c)| (LinkKey { link: LatticeLink::new(p, q), boundary: 0 }, Laurent::from_terms([c])))
            .fold(LinkExpansion::new(), |mut m, (k, c)| {
                let s = m.remove(&k).unwrap_or_else(Laurent::zero);
                let s = &s + &c;
                if !s.is_zero() {
                    m.insert(k, s);
                }
                m
            });
        let e = table.from_link_basis(&exp).unwrap();
        prop_assert_eq!(table.to_link_basis(&e).unwrap(), exp);
    }
}

fn det(u: (i64, i64), w: (i64, i64)) -> i64 {
    u.0 * w.1 - u.1 * w.0
}

/// Every splitting `v = u + w` with `det(u, w) = 1` gives the same curve.
#[test]
fn curves_independent_of_parents() {
    let table = f11_table();
    let p = &table.pres;
    let c = |x: (i64, i64)| table.curve(&LatticeLink::new(x.0, x.1)).unwrap().clone();
    let mut splittings = 0;
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let expected = c((a, b));
            for u0 in -6i64..=6 {
                for u1 in -6i64..=6 {
                    let u = (u0, u1);
                    let w = (a - u0, b - u1);
                    if det(u, w) != 1 {
                        continue;
                    }
                    let d = (u.0 - w.0, u.1 - w.1);
                    if LatticeLink::new(d.0, d.1).complexity() > table.bound {
                        continue;
                    }
                    let got = p.mul(&c(u), &c(w)).scale(&Laurent::a_pow(-1))
                        - c(d).scale(&Laurent::a_pow(-2));
                    assert_eq!(p.nf(&got), expected, "{u:?} + {w:?}");
                    splittings += 1;
                }
            }
        }
    }
    assert!(splittings > 100);
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Normal words of weight `≤ d` are exactly the words met in normal forms,
/// and their number matches the commutative monomial count.
#[test]
fn basis_counts_match_commutative_models() {
    for (name, count) in [
        ("f11", (|d| binom(d + 3, 3)) as fn(usize) -> usize),
        ("uso3", |d| binom(d + 3, 3)),
        ("f10", |d| {
            binom(d + 3, 3) - if d >= 3 { binom(d, 3) } else { 0 }
        }),
    ] {
        let p = presentations::by_name(name).unwrap();
        for d in 0..=4usize {
            let basis: BTreeSet<Word> = p.system.basis_words(d as u32, d).into_iter().collect();
            assert_eq!(basis.len(), count(d), "{name} {d}");
            let mut seen = BTreeSet::new();
            let mut frontier = vec![Word::new()];
            let mut words = vec![Word::new()];
            for _ in 0..d {
                frontier = frontier
                    .iter()
                    .flat_map(|w| {
                        (0..3u8).map(move |g| {
                            let mut x = w.clone();
                            x.push(g);
                            x
                        })
                    })
                    .collect();
                words.extend(frontier.iter().cloned());
            }
            for w in words {
                let e = Element::monomial(p.table(), w, Laurent::one());
                seen.extend(p.nf(&e).terms().map(|(w, _)| w.clone()));
            }
            assert_eq!(seen, basis, "{name} {d}");
        }
    }
}

#[test]
fn center_dimension_monotone() {
    let f10 = presentations::f10();
    let f11 = presentations::f11();
    let d10: Vec<usize> = (1..=4)
        .map(|d| center_up_to_degree(&f10, d).0.dimension)
        .collect();
    let d11: Vec<usize> = (1..=4)
        .map(|d| center_up_to_degree(&f11, d).0.dimension)
        .collect();
    assert_eq!(d10, vec![1, 1, 1, 1]);
    assert_eq!(d11, vec![1, 1, 2, 2]);
}

/// The vector lemma against squared Euclidean lengths in floating point.
#[test]
fn vector_inequality_matches_geometry() {
    let len = |v: [f64; 2]| v[0].hypot(v[1]);
    for v1 in [[1, 0], [2, -1], [0, 3], [-2, -2]] {
        for v2 in [[0, 1], [1, 1], [-3, 2]] {
            for w1 in [[1, 2], [-1, 0], [3, 3]] {
                let w2 = [v1[0] + w1[0] - v2[0], v1[1] + w1[1] - v2[1]];
                let f =
                    |a: [i64; 2], b: [i64; 2]| len([(a[0] + b[0]) as f64, (a[1] + b[1]) as f64]);
                let geometric = f(v1, w2).max(f(v2, w1)) > f(v1, w1);
                assert_eq!(lemma3_predicate(&v1, &v2, &w1, &w2).unwrap(), geometric);
            }
        }
    }
}

#[test]
fn delta_is_a_nonzero_nonunit() {
    let d = Laurent::delta();
    assert!(!d.is_zero());
    assert!(!d.is_unit());
    assert!(d.unit_inverse().is_none());
}
