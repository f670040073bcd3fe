//! Truncated checks of centers, zero divisors, the vector-length lemma and
//! root-of-unity degenerations.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Laurent, QuotientSpec, Specialization};
use crate::linalg::kernel;
use crate::ncalg::{Element, Word};
use crate::presentations::{self, Presentation};
use crate::torus::{links_up_to, CurveTable, TorusTarget};

#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub algebra: String,
    pub max_degree: u32,
    pub candidates: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub verified: bool,
}

/// Central elements spanned by basis monomials of weight and length `≤ d`.
pub fn center_up_to_degree(pres: &Presentation, d: u32) -> (CenterReport, Vec<Element>) {
    let words = pres.system.basis_words(d, d as usize);
    let t = pres.table();
    let gens: Vec<Element> = (0..t.len() as u8)
        .map(|g| Element::generator(t, g))
        .collect();
    let columns: Vec<Vec<(usize, Element)>> = words
        .par_iter()
        .map(|w| {
            let m = Element::monomial(t, w.clone(), Laurent::one());
            gens.iter()
                .enumerate()
                .map(|(gi, g)| {
                    let c = pres
                        .system
                        .commutator(g, &m, &Laurent::one())
                        .expect("unit");
                    (gi, c)
                })
                .collect()
        })
        .collect();
    let mut rows: HashMap<(usize, Word), usize> = HashMap::new();
    for col in &columns {
        for (gi, e) in col {
            for (w, _) in e.terms() {
                let n = rows.len();
                rows.entry((*gi, w.clone())).or_insert(n);
            }
        }
    }
    let mut m = vec![vec![Laurent::zero(); words.len()]; rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (gi, e) in col {
            for (w, c) in e.terms() {
                m[rows[&(*gi, w.clone())]][j] = c.clone();
            }
        }
    }
    let ker = kernel(&m, words.len());
    let basis: Vec<Element> = ker
        .iter()
        .map(|v| Element::from_terms(t, words.iter().zip(v).map(|(w, c)| (w.clone(), c.clone()))))
        .collect();
    let verified = basis.iter().all(|e| {
        gens.iter().all(|g| {
            pres.system
                .commutator(g, e, &Laurent::one())
                .unwrap()
                .is_zero()
        })
    });
    (
        CenterReport {
            algebra: pres.name.clone(),
            max_degree: d,
            candidates: words.len(),
            dimension: basis.len(),
            basis: basis.iter().map(|e| e.to_string()).collect(),
            verified,
        },
        basis,
    )
}

/// Boundary-ring sphere presentation with the boundary curves replaced by
/// fixed generic integers.
pub fn sphere_with_generic_boundary() -> Presentation {
    presentations::f04_rbar()
        .with_scalar_values(&[
            ("a1", Laurent::constant(2)),
            ("a2", Laurent::constant(3)),
            ("a3", Laurent::constant(5)),
            ("a4", Laurent::constant(7)),
        ])
        .expect("boundary generators exist")
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroDivisorReport {
    pub algebra: String,
    pub trials: usize,
    pub max_degree: u32,
    pub seed: u64,
    pub counterexamples: Vec<(String, String)>,
}

impl ZeroDivisorReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn coefficient_pool() -> Vec<Laurent> {
    vec![
        Laurent::one(),
        -Laurent::one(),
        Laurent::a(),
        -Laurent::a(),
        Laurent::a_pow(-1),
        -Laurent::a_pow(-1),
        Laurent::delta(),
    ]
}

/// A random nonzero combination of 1–4 distinct basis monomials.
pub fn random_element(pres: &Presentation, words: &[Word], rng: &mut ChaCha8Rng) -> Element {
    let pool = coefficient_pool();
    let n = rng.gen_range(1..=4.min(words.len()));
    let picked: Vec<&Word> = words.choose_multiple(rng, n).collect();
    Element::from_terms(
        pres.table(),
        picked
            .into_iter()
            .map(|w| (w.clone(), pool.choose(rng).unwrap().clone())),
    )
}

/// Products of seeded random nonzero pairs of weight `≤ d` are nonzero.
pub fn zero_divisor_probe(
    pres: &Presentation,
    trials: usize,
    d: u32,
    seed: u64,
) -> ZeroDivisorReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = pres.system.basis_words(d, d as usize);
    let pairs: Vec<(Element, Element)> = (0..trials)
        .map(|_| {
            let a = random_element(pres, &words, &mut rng);
            let b = random_element(pres, &words, &mut rng);
            (a, b)
        })
        .collect();
    let counterexamples = pairs
        .par_iter()
        .filter(|(a, b)| pres.mul(a, b).is_zero())
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    ZeroDivisorReport {
        algebra: pres.name.clone(),
        trials,
        max_degree: d,
        seed,
        counterexamples,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossNormalization {
    pub trials: usize,
    pub agreeing: usize,
    pub differing_forms: usize,
    pub first_disagreement: Option<String>,
}

/// Random free-algebra elements (words of length `≤ max_len` on the sphere
/// generators) normalized by the boundary-ring and base-ring systems; each
/// normal form must be fixed by the other system's reduction of it.
pub fn cross_normalization(trials: usize, max_len: usize, seed: u64) -> CrossNormalization {
    let rbar = presentations::f04_rbar();
    let r = presentations::f04_r();
    let t = rbar.table().clone();
    let pool = coefficient_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<Element> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            Element::from_terms(
                &t,
                (0..n)
                    .map(|_| {
                        let len = rng.gen_range(1..=max_len);
                        let w: Word = (0..len).map(|_| rng.gen_range(0..t.len() as u8)).collect();
                        (w, pool.choose(&mut rng).unwrap().clone())
                    })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let results: Vec<(bool, bool, String)> = elements
        .par_iter()
        .map(|e| {
            let a = rbar.nf(e);
            let b = r.nf(e);
            let ok = r.nf(&a) == b && rbar.nf(&b) == a;
            (ok, a != b, e.to_string())
        })
        .collect();
    CrossNormalization {
        trials,
        agreeing: results.iter().filter(|x| x.0).count(),
        differing_forms: results.iter().filter(|x| x.1).count(),
        first_disagreement: results.iter().find(|x| !x.0).map(|x| x.2.clone()),
    }
}

fn norm2(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

fn plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// For `v1 + w1 = v2 + w2` with `v1 ≠ v2`: one of `v1 + w2`, `v2 + w1` is
/// strictly longer than `v1 + w1`.
pub fn lemma3_predicate(v1: &[i64], v2: &[i64], w1: &[i64], w2: &[i64]) -> Result<bool> {
    let n = v1.len();
    if v2.len() != n || w1.len() != n || w2.len() != n {
        return Err(Error::Precondition("vectors must share a dimension".into()));
    }
    if plus(v1, w1) != plus(v2, w2) {
        return Err(Error::Precondition("v1 + w1 must equal v2 + w2".into()));
    }
    if v1 == v2 {
        return Err(Error::Precondition("v1 and v2 must differ".into()));
    }
    let s = norm2(&plus(v1, w1));
    Ok(norm2(&plus(v1, w2)).max(norm2(&plus(v2, w1))) > s)
}

#[derive(Debug, Clone, Serialize)]
pub struct VectorSweep {
    pub quadruples: usize,
    pub failures: Vec<[[i64; 2]; 4]>,
}

/// Every valid quadruple of plane vectors with entries in `[-r, r]`.
pub fn lemma3_sweep(r: i64) -> VectorSweep {
    let range: Vec<i64> = (-r..=r).collect();
    let mut vecs = Vec::new();
    for &a in &range {
        for &b in &range {
            vecs.push([a, b]);
        }
    }
    let mut quadruples = 0;
    let mut failures = Vec::new();
    for v1 in &vecs {
        for v2 in &vecs {
            if v1 == v2 {
                continue;
            }
            for w1 in &vecs {
                let w2 = [v1[0] + w1[0] - v2[0], v1[1] + w1[1] - v2[1]];
                if w2.iter().any(|x| x.abs() > r) {
                    continue;
                }
                quadruples += 1;
                if !lemma3_predicate(v1, v2, w1, &w2).expect("valid quadruple") {
                    failures.push([*v1, *v2, *w1, w2]);
                }
            }
        }
    }
    VectorSweep {
        quadruples,
        failures,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn first_noncommuting(pres: &Presentation, d: u32) -> Option<String> {
    let t = pres.table();
    let words = pres.system.basis_words(d, d as usize);
    let gens: Vec<u8> = (0..t.len() as u8).collect();
    let pairs: Vec<(u8, &Word)> = gens
        .iter()
        .flat_map(|g| words.iter().map(move |w| (*g, w)))
        .collect();
    pairs.par_iter().find_map_first(|(g, w)| {
        let ge = Element::generator(t, *g);
        let we = Element::monomial(t, (*w).clone(), Laurent::one());
        let c = pres.system.commutator(&ge, &we, &Laurent::one()).unwrap();
        (!c.is_zero()).then(|| format!("[{}, {}] = {}", t.name(*g), we, c))
    })
}

fn commutative_check(pres: &Presentation, d: u32, label: &str) -> RootCheck {
    let witness = first_noncommuting(pres, d);
    RootCheck {
        name: format!("{} commutative to weight {d} {label}", pres.name),
        passed: witness.is_none(),
        detail: witness.unwrap_or_else(|| "all commutators vanish".into()),
    }
}

/// Presentations that come from surfaces (the deformed enveloping algebra
/// does not degenerate to a commutative one).
pub fn skein_presentations() -> Vec<Presentation> {
    vec![
        presentations::f11(),
        presentations::f10(),
        presentations::f04_rbar(),
        presentations::f04_r(),
        presentations::f12(),
    ]
}

pub fn roots_of_unity_suite(d: u32) -> Vec<RootCheck> {
    let mut out = Vec::new();
    let generic = skein_presentations();
    for rule in [
        Specialization::eval_minus_one(),
        Specialization::Quotient(QuotientSpec::a2_minus_one()),
    ] {
        for p in &generic {
            let s = p.specialized(&rule);
            out.push(commutative_check(&s, d, &format!("at {}", rule.label())));
        }
    }
    let i4 = Specialization::Quotient(QuotientSpec::a2_plus_one());
    let sphere = presentations::f04_rbar().specialized(&i4);
    out.push(commutative_check(&sphere, d.min(3), "mod A^2 + 1"));

    for target in [TorusTarget::F11, TorusTarget::F10] {
        let generic = CurveTable::new(target, 8);
        let p = &generic.pres.specialized(&i4);
        let q = |e: &Element| p.system.reduce_coeffs(&e.map_coeffs(|c| i4.apply(c)));
        let one = Laurent::one();
        let x: Vec<Element> = ["x1", "x2", "x3"].iter().map(|n| p.var(n)).collect();
        let c = p.system.commutator(&x[0], &x[1], &one).unwrap();
        out.push(RootCheck {
            name: format!("{} noncommutative mod A^2 + 1", p.name),
            passed: !c.is_zero(),
            detail: format!("[x1, x2] = {c}"),
        });
        let mut bad = Vec::new();
        for g in &x {
            let g2 = p.mul(g, g);
            for h in &x {
                let c = p.system.commutator(&g2, h, &one).unwrap();
                if !c.is_zero() {
                    bad.push(format!("[{g}^2, {h}] = {c}"));
                }
            }
        }
        out.push(RootCheck {
            name: format!("{} squares of generators central mod A^2 + 1", p.name),
            passed: bad.is_empty(),
            detail: bad.first().cloned().unwrap_or_else(|| "all vanish".into()),
        });
        let mut bad = Vec::new();
        let links = links_up_to(8);
        for v in &links {
            let cv = q(generic.curve(v).expect("within bound"));
            let sq = p.mul(&cv, &cv);
            for h in &x {
                let c = p.system.commutator(&sq, h, &one).unwrap();
                if !c.is_zero() {
                    bad.push(format!("[curve{v}^2, {h}] = {c}"));
                }
            }
        }
        out.push(RootCheck {
            name: format!(
                "{} squares of curves of complexity <= 8 central mod A^2 + 1 ({} links)",
                p.name,
                links.len()
            ),
            passed: bad.is_empty(),
            detail: bad.first().cloned().unwrap_or_else(|| "all vanish".into()),
        });
    }
    out
}
