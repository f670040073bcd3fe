//! The presented algebras: once-punctured torus, closed torus,
//! four-punctured sphere (over the boundary ring and over the base ring),
//! twice-punctured torus, and the cyclic deformation of `U(so3)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Specialization};
use crate::ncalg::{deformed_commutator, Element, GeneratorTable};
use crate::rewrite::{orient_relation, MonomialRule, RuleSystem};

#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub system: RuleSystem,
    /// Defining relations as unoriented elements (each is zero in the algebra).
    pub relations: Vec<Element>,
    pub notes: BTreeMap<String, Element>,
}

impl Presentation {
    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.system.table()
    }

    pub fn var(&self, name: &str) -> Element {
        Element::var(self.table(), name)
    }

    pub fn note(&self, name: &str) -> &Element {
        &self.notes[name]
    }

    pub fn nf(&self, e: &Element) -> Element {
        self.system.normal_form(e)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.system.multiply(a, b)
    }

    pub fn is_basis(&self, exponents: &[u32]) -> bool {
        self.system.is_basis_exponent(exponents)
    }

    /// Indices of non-central generators.
    pub fn noncentral(&self) -> Vec<u8> {
        (0..self.table().len() as u8)
            .filter(|&g| !self.table().is_central(g))
            .collect()
    }

    /// Every relation reduces to zero.
    pub fn relations_hold(&self) -> bool {
        self.relations.iter().all(|r| self.nf(r).is_zero())
    }

    /// Coefficients pushed through `rule`.
    pub fn specialized(&self, rule: &Specialization) -> Presentation {
        let system = self.system.specialized(rule);
        let map = |e: &Element| system.reduce_coeffs(&e.map_coeffs(|c| rule.apply(c)));
        Presentation {
            name: format!("{}[{}]", self.name, rule.label()),
            relations: self.relations.iter().map(map).collect(),
            notes: self
                .notes
                .iter()
                .map(|(k, v)| (k.clone(), map(v)))
                .collect(),
            system,
        }
    }

    /// Adds rules `g → value` for the given (weight-zero or central)
    /// generators, so their values become scalars.
    pub fn with_scalar_values(&self, values: &[(&str, Laurent)]) -> Result<Presentation> {
        let mut system = self.system.clone();
        let mut relations = self.relations.clone();
        for (name, value) in values {
            let g = self
                .table()
                .index(name)
                .ok_or_else(|| Error::MissingImage((*name).to_string()))?;
            let mut trigger = vec![0; self.table().len()];
            trigger[g as usize] = 1;
            system.add_monomial(MonomialRule {
                trigger,
                replacement: Element::scalar(self.table(), value.clone()),
            })?;
            relations.push(self.var(name) - Element::scalar(self.table(), value.clone()));
        }
        Ok(Presentation {
            name: format!("{}|scalars", self.name),
            system,
            relations,
            notes: self.notes.clone(),
        })
    }
}

fn a(k: i64) -> Laurent {
    Laurent::a_pow(k)
}

fn sc(t: &Arc<GeneratorTable>, s: Laurent) -> Element {
    Element::scalar(t, s)
}

fn qc(x: &Element, y: &Element, u: &Laurent) -> Element {
    deformed_commutator(x, y, u).expect("unit and shared table")
}

fn install_swaps(sys: &mut RuleSystem, relations: &[Element]) -> Result<()> {
    for r in relations {
        sys.add_swap_relation(r)?;
    }
    Ok(())
}

fn install_central(sys: &mut RuleSystem, relations: &mut Vec<Element>) -> Result<()> {
    let t = sys.table().clone();
    for c in (0..t.len() as u8).filter(|&g| t.is_central(g)) {
        for g in 0..t.len() as u8 {
            if g == c {
                continue;
            }
            let (hi, lo) = if g > c { (g, c) } else { (c, g) };
            if sys.swap(hi, lo).is_none() {
                sys.add_commuting(hi, lo)?;
                let x = Element::generator(&t, hi);
                let y = Element::generator(&t, lo);
                relations.push(&(&x * &y) - &(&y * &x));
            }
        }
    }
    Ok(())
}

/// `[t_i, t_{i+1}]_u − s·t_{i+2}` for `i = 1, 2, 3`, subscripts mod 3.
fn cyclic(t: [&Element; 3], u: &Laurent, s: &Laurent) -> Vec<Element> {
    (0..3)
        .map(|i| qc(t[i], t[(i + 1) % 3], u) - t[(i + 2) % 3].scale(s))
        .collect()
}

fn torus_notes(t: &Arc<GeneratorTable>) -> BTreeMap<String, Element> {
    let x = |n: &str| Element::var(t, n);
    let (x1, x2, x3) = (x("x1"), x("x2"), x("x3"));
    let z = (&x1 * &x2).scale(&a(1)) - x3.scale(&a(2));
    let boundary = (&(&x1 * &x2) * &x3).scale(&a(1))
        - (&x1 * &x1).scale(&a(2))
        - (&x2 * &x2).scale(&a(-2))
        - (&x3 * &x3).scale(&a(2))
        + sc(t, a(2) + a(-2));
    BTreeMap::from([("z".to_string(), z), ("partial".to_string(), boundary)])
}

fn three_table(names: [&str; 3]) -> Arc<GeneratorTable> {
    GeneratorTable::new(&[(names[0], false), (names[1], false), (names[2], false)])
        .expect("distinct names")
}

/// Once-punctured torus: cyclic deformation of `R[x1, x2, x3]`.
pub fn f11() -> Presentation {
    let t = three_table(["x1", "x2", "x3"]);
    let mut system = RuleSystem::new(&t, vec![1, 1, 1]);
    let x: Vec<Element> = (0..3).map(|g| Element::generator(&t, g)).collect();
    let relations = cyclic([&x[0], &x[1], &x[2]], &a(1), &Laurent::delta());
    install_swaps(&mut system, &relations).expect("valid swaps");
    Presentation {
        name: "f11".into(),
        system,
        relations,
        notes: torus_notes(&t),
    }
}

/// The closed-torus relation element
/// `A²x1² + A⁻²x2² + A²x3² − A·x1x2x3 − 2A² − 2A⁻²`.
pub fn torus_relation(t: &Arc<GeneratorTable>) -> Element {
    let x = |n: &str| Element::var(t, n);
    let (x1, x2, x3) = (x("x1"), x("x2"), x("x3"));
    (&x1 * &x1).scale(&a(2)) + (&x2 * &x2).scale(&a(-2)) + (&x3 * &x3).scale(&a(2))
        - (&(&x1 * &x2) * &x3).scale(&a(1))
        - sc(t, Laurent::from_terms([(2, 2), (-2, 2)]))
}

/// Closed torus: the once-punctured torus modulo [`torus_relation`].
pub fn f10() -> Presentation {
    let mut p = f11();
    let rel = torus_relation(p.table());
    let rule = orient_relation(&rel, &p.system).expect("unit leading coefficient");
    p.system.add_monomial(rule).expect("decreasing rule");
    p.relations.push(rel.clone());
    p.notes.insert("r".into(), rel);
    p.name = "f10".into();
    p
}

fn sphere_table() -> Arc<GeneratorTable> {
    GeneratorTable::new(&[
        ("a1", true),
        ("a2", true),
        ("a3", true),
        ("a4", true),
        ("x1", false),
        ("x2", false),
        ("x3", false),
    ])
    .expect("distinct names")
}

/// `p1, p2, p3, q` in terms of the boundary generators.
pub fn sphere_boundary_notes(t: &Arc<GeneratorTable>) -> BTreeMap<String, Element> {
    let g = |n: &str| Element::var(t, n);
    let (a1, a2, a3, a4) = (g("a1"), g("a2"), g("a3"), g("a4"));
    let p1 = &(&a1 * &a2) + &(&a3 * &a4);
    let p2 = &(&a1 * &a3) + &(&a2 * &a4);
    let p3 = &(&a1 * &a4) + &(&a2 * &a3);
    let q = &(&(&(&a1 * &a2) * &a3) * &a4)
        + &(&(&(&a1 * &a1) + &(&a2 * &a2)) + &(&(&a3 * &a3) + &(&a4 * &a4)));
    BTreeMap::from([
        ("p1".to_string(), p1),
        ("p2".to_string(), p2),
        ("p3".to_string(), p3),
        ("q".to_string(), q),
    ])
}

/// `[x_i, x_{i+1}]_{A²} − (A⁴ − A⁻⁴)x_{i+2} − δp_{i+2}`. The sign of the
/// boundary term is the one for which the cubic relation below is central.
fn sphere_commutators(t: &Arc<GeneratorTable>, notes: &BTreeMap<String, Element>) -> Vec<Element> {
    let x: Vec<Element> = ["x1", "x2", "x3"]
        .iter()
        .map(|n| Element::var(t, n))
        .collect();
    let p = [&notes["p1"], &notes["p2"], &notes["p3"]];
    let s = a(4) - a(-4);
    let d = Laurent::delta();
    (0..3)
        .map(|i| {
            qc(&x[i], &x[(i + 1) % 3], &a(2)) - x[(i + 2) % 3].scale(&s) - p[(i + 2) % 3].scale(&d)
        })
        .collect()
}

/// `A²x1x2x3` minus its expansion in squares, boundary terms and `q`.
pub fn sphere_relation(t: &Arc<GeneratorTable>, notes: &BTreeMap<String, Element>) -> Element {
    let x = |n: &str| Element::var(t, n);
    let (x1, x2, x3) = (x("x1"), x("x2"), x("x3"));
    let s2 = (a(2) + a(-2)).pow(2);
    (&(&x1 * &x2) * &x3).scale(&a(2))
        - (&x1 * &x1).scale(&a(4))
        - (&x2 * &x2).scale(&a(-4))
        - (&x3 * &x3).scale(&a(4))
        - (&notes["p1"] * &x1).scale(&a(2))
        - (&notes["p2"] * &x2).scale(&a(-2))
        - (&notes["p3"] * &x3).scale(&a(2))
        - notes["q"].clone()
        + sc(t, s2)
}

fn sphere(weights: Vec<u32>, name: &str) -> Presentation {
    let t = sphere_table();
    let mut notes = sphere_boundary_notes(&t);
    let mut system = RuleSystem::new(&t, weights);
    let mut relations = sphere_commutators(&t, &notes);
    install_swaps(&mut system, &relations).expect("valid swaps");
    install_central(&mut system, &mut relations).expect("valid swaps");
    let rel = sphere_relation(&t, &notes);
    let rule = orient_relation(&rel, &system).expect("unit leading coefficient");
    system.add_monomial(rule).expect("decreasing rule");
    relations.push(rel.clone());
    notes.insert("cubic".into(), rel);
    let x = |n: &str| Element::var(&t, n);
    let z = (&x("x1") * &x("x2")).scale(&a(2)) - x("x3").scale(&a(4)) - notes["p3"].scale(&a(2));
    notes.insert("z".into(), z);
    Presentation {
        name: name.into(),
        system,
        relations,
        notes,
    }
}

/// Four-punctured sphere over the boundary ring: boundary generators have
/// weight 0 and `x1x2x3` is rewritten.
pub fn f04_rbar() -> Presentation {
    sphere(vec![0, 0, 0, 0, 1, 1, 1], "f04")
}

/// Four-punctured sphere over the base ring: all weights 1 and
/// `a1a2a3a4` is rewritten. Shares its generator table layout with
/// [`f04_rbar`].
pub fn f04_r() -> Presentation {
    sphere(vec![1; 7], "f04r")
}

/// Twice-punctured torus with central boundary generator `a`.
pub fn f12() -> Presentation {
    let t = GeneratorTable::new(&[
        ("a", true),
        ("x1", false),
        ("x2", false),
        ("y1", false),
        ("y2", false),
        ("z1", false),
        ("z2", false),
    ])
    .expect("distinct names");
    let g = |n: &str| Element::var(&t, n);
    let (av, x1, x2, y1, y2, z1, z2) =
        (g("a"), g("x1"), g("x2"), g("y1"), g("y2"), g("z1"), g("z2"));
    let d = Laurent::delta();
    let one = Laurent::one();
    let mut relations = vec![
        qc(&x1, &x2, &one),
        qc(&y1, &y2, &one),
        qc(&z1, &z2, &one) - (&(&x2 * &y2) - &(&x1 * &y1)).scale(&d),
    ];
    for triple in [
        [&x1, &y1, &z1],
        [&x2, &y2, &z1],
        [&z2, &y1, &x2],
        [&z2, &y2, &x1],
    ] {
        relations.extend(cyclic(triple, &a(1), &d));
    }
    let mut system = RuleSystem::new(&t, vec![0, 1, 1, 1, 1, 1, 1]);
    install_swaps(&mut system, &relations).expect("valid swaps");
    install_central(&mut system, &mut relations).expect("valid swaps");

    let s2 = (a(2) + a(-2)).pow(2);
    let lhs = (&(&av * &z2) * &z1).scale(&a(2));
    let rhs = (&av * &av).scale(&a(2))
        + (&z2 * &z2).scale(&a(-2))
        + (&z1 * &z1).scale(&a(6))
        + &(&(&y1 * &y2) + &(&x1 * &x2).scale(&a(4))) * &av
        - &(&(&x1 * &y2) + &(&x2 * &y1)).scale(&a(-1)) * &z2
        - &(&(&x2 * &y2).scale(&a(1)) + &(&x1 * &y1).scale(&a(5))) * &z1
        + &(&(&x2 * &y1) * &x1) * &y2
        + (&x1 * &x1).scale(&a(6))
        + (&x2 * &x2).scale(&a(2))
        + (&y1 * &y1).scale(&a(2))
        + (&y2 * &y2).scale(&a(-2))
        - sc(&t, a(2) * &s2);
    let rel = lhs - rhs;
    let rule = orient_relation(&rel, &system).expect("unit leading coefficient");
    system.add_monomial(rule).expect("decreasing rule");
    relations.push(rel.clone());

    let w1 = (&x1 * &y1).scale(&a(1)) - z1.scale(&a(2));
    let w2 = (&y1 * &x2).scale(&a(1)) - z2.scale(&a(2));
    let notes = BTreeMap::from([
        ("w1".to_string(), w1),
        ("w2".to_string(), w2),
        ("cubic".to_string(), rel),
    ]);
    Presentation {
        name: "f12".into(),
        system,
        relations,
        notes,
    }
}

/// `R⟨y1, y2, y3 | [y_i, y_{i+1}]_A = y_{i+2}⟩`.
pub fn uaso3() -> Presentation {
    let t = three_table(["y1", "y2", "y3"]);
    let mut system = RuleSystem::new(&t, vec![1, 1, 1]);
    let y: Vec<Element> = (0..3).map(|g| Element::generator(&t, g)).collect();
    let relations = cyclic([&y[0], &y[1], &y[2]], &a(1), &Laurent::one());
    install_swaps(&mut system, &relations).expect("valid swaps");
    Presentation {
        name: "uso3".into(),
        system,
        relations,
        notes: BTreeMap::new(),
    }
}

pub const NAMES: [&str; 6] = ["f11", "f10", "f04", "f04r", "f12", "uso3"];

pub fn by_name(name: &str) -> Result<Presentation> {
    Ok(match name {
        "f11" => f11(),
        "f10" => f10(),
        "f04" | "f04_rbar" => f04_rbar(),
        "f04r" | "f04_r" => f04_r(),
        "f12" => f12(),
        "uso3" | "uaso3" => uaso3(),
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    })
}

pub fn all() -> Vec<Presentation> {
    NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}
