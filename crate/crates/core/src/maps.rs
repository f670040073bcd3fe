//! Homomorphisms between presentations, checked on defining relations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Specialization};
use crate::ncalg::{substitute_generators, Element};
use crate::presentations::{self, Presentation};

/// Normal forms in `dst` of the images of the relations of `src`. All zero
/// means the assignment extends to a homomorphism.
pub fn check_homomorphism(
    src: &Presentation,
    dst: &Presentation,
    images: &BTreeMap<String, Element>,
    rule: Option<&Specialization>,
) -> Result<Vec<Element>> {
    let st = src.table();
    let mut by_index = BTreeMap::new();
    for g in 0..st.len() as u8 {
        let name = st.name(g);
        let img = images
            .get(name)
            .ok_or_else(|| Error::MissingImage(name.to_string()))?;
        if img.table().names() != dst.table().names() {
            return Err(Error::TableMismatch);
        }
        by_index.insert(g, img.clone());
    }
    src.relations
        .par_iter()
        .map(|r| {
            let r = match rule {
                Some(rule) => r.map_coeffs(|c| rule.apply(c)),
                None => r.clone(),
            };
            let img = substitute_generators(&r, &by_index, dst.table())?;
            Ok(dst.nf(&img))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MapCheck {
    pub name: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

fn all_zero(r: &[Element]) -> bool {
    r.iter().all(Element::is_zero)
}

fn residual_lines(r: &[Element]) -> Vec<String> {
    r.iter()
        .enumerate()
        .map(|(i, e)| format!("relation {}: {}", i + 1, e))
        .collect()
}

fn images_of(pairs: &[(&str, Element)]) -> BTreeMap<String, Element> {
    pairs
        .iter()
        .map(|(n, e)| (n.to_string(), e.clone()))
        .collect()
}

/// `x_i ↦ δ·y_i` from the once-punctured torus to the deformed enveloping
/// algebra, with the undeformed `x_i ↦ y_i` as control.
pub fn so3_map_check() -> MapCheck {
    let src = presentations::f11();
    let dst = presentations::uaso3();
    let d = Laurent::delta();
    let scaled = images_of(&[
        ("x1", dst.var("y1").scale(&d)),
        ("x2", dst.var("y2").scale(&d)),
        ("x3", dst.var("y3").scale(&d)),
    ]);
    let plain = images_of(&[
        ("x1", dst.var("y1")),
        ("x2", dst.var("y2")),
        ("x3", dst.var("y3")),
    ]);
    let r = check_homomorphism(&src, &dst, &scaled, None).expect("all images given");
    let c = check_homomorphism(&src, &dst, &plain, None).expect("all images given");
    let mut lines = residual_lines(&r);
    lines.push(format!("control x_i -> y_i nonzero: {}", !all_zero(&c)));
    MapCheck {
        name: "f11 -> uso3, x_i -> del*y_i".into(),
        passed: all_zero(&r) && !all_zero(&c),
        lines,
    }
}

/// Value of a note of the sphere presentation with every boundary curve
/// replaced by the given scalar.
fn boundary_value(pres: &Presentation, note: &str, values: [&Laurent; 4]) -> Laurent {
    let t = pres.table();
    let mut images: BTreeMap<u8, Element> = (0..t.len() as u8)
        .map(|g| (g, Element::generator(t, g)))
        .collect();
    for (i, v) in values.iter().enumerate() {
        let g = t.index(&format!("a{}", i + 1)).expect("boundary generator");
        images.insert(g, Element::scalar(t, (*v).clone()));
    }
    let e = substitute_generators(pres.note(note), &images, t).expect("all images given");
    debug_assert!(e.terms().all(|(w, _)| w.is_empty()));
    e.scalar_part()
}

/// `A + A⁻¹`.
pub fn boundary_solution() -> Laurent {
    Laurent::from_terms([(1, 1), (-1, 1)])
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryIdentities {
    pub p: [String; 3],
    pub q_plus_delta_sq: String,
    pub control_p: [String; 3],
    pub passed: bool,
}

/// Under `a1 = a2 = a3 = -a4 = A + A⁻¹` the boundary polynomials `p_i`
/// vanish and `q = -δ²`; with all `a_i = 1` they do not.
pub fn eq5_identity_check() -> BoundaryIdentities {
    let pres = presentations::f04_rbar();
    let s = boundary_solution();
    let ms = -&s;
    let sol = [&s, &s, &s, &ms];
    let one = Laurent::one();
    let ones = [&one, &one, &one, &one];
    let p = ["p1", "p2", "p3"].map(|n| boundary_value(&pres, n, sol));
    let d = Laurent::delta();
    let q = &boundary_value(&pres, "q", sol) + &(&d * &d);
    let control = ["p1", "p2", "p3"].map(|n| boundary_value(&pres, n, ones));
    let passed =
        p.iter().all(Laurent::is_zero) && q.is_zero() && control.iter().all(|c| !c.is_zero());
    BoundaryIdentities {
        p: p.map(|c| c.to_string()),
        q_plus_delta_sq: q.to_string(),
        control_p: control.map(|c| c.to_string()),
        passed,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereToTorusReport {
    pub residuals: Vec<String>,
    pub relation_constant: String,
    pub control_nonzero: bool,
    pub passed: bool,
}

/// Constant of the monic form `x1x2x3 = …` of the cubic relation's image.
pub const EXPECTED_CONSTANT: [(i64, i64); 2] = [(2, -2), (-6, -2)];

/// Sphere presentation to the closed torus with `A ↦ A²`: boundary curves go
/// to the solution of the boundary equations and `x_i ↦ x_i`.
pub fn f04_to_torus_check() -> SphereToTorusReport {
    let src = presentations::f04_rbar();
    let dst = presentations::f10().specialized(&Specialization::SquareA);
    let s = boundary_solution();
    let mut pairs: Vec<(&str, Element)> = ["x1", "x2", "x3"]
        .iter()
        .map(|n| (*n, dst.var(n)))
        .collect();
    let boundary = [
        ("a1", s.clone()),
        ("a2", s.clone()),
        ("a3", s.clone()),
        ("a4", -&s),
    ];
    for (n, v) in &boundary {
        pairs.push((n, Element::scalar(dst.table(), v.clone())));
    }
    let residuals =
        check_homomorphism(&src, &dst, &images_of(&pairs), None).expect("all images given");

    // the cubic relation without the cubic rule: its scalar part, made monic
    let bare = presentations::f11().specialized(&Specialization::SquareA);
    let mut on_bare = BTreeMap::new();
    for (n, v) in &boundary {
        let g = src.table().index(n).expect("boundary generator");
        on_bare.insert(g, Element::scalar(bare.table(), v.clone()));
    }
    for n in ["x1", "x2", "x3"] {
        on_bare.insert(src.table().index(n).expect("generator"), bare.var(n));
    }
    let img =
        substitute_generators(src.note("cubic"), &on_bare, bare.table()).expect("all images given");
    let img = bare.nf(&img);
    let lead = img.coeff(&[0, 1, 2]);
    let constant = -&img
        .scalar_part()
        .div_exact(&lead)
        .expect("unit leading coefficient");

    // control: generic boundary values instead of the solution
    let mut control_pairs: Vec<(&str, Element)> = ["x1", "x2", "x3"]
        .iter()
        .map(|n| (*n, dst.var(n)))
        .collect();
    for n in ["a1", "a2", "a3", "a4"] {
        control_pairs.push((n, Element::one(dst.table())));
    }
    let control =
        check_homomorphism(&src, &dst, &images_of(&control_pairs), None).expect("all images given");
    let control_nonzero = !all_zero(&control);
    let passed = all_zero(&residuals)
        && constant == Laurent::from_terms(EXPECTED_CONSTANT)
        && control_nonzero;
    SphereToTorusReport {
        residuals: residuals.iter().map(|e| e.to_string()).collect(),
        relation_constant: constant.to_string(),
        control_nonzero,
        passed,
    }
}

/// The torus inclusion `f11 → f10` with identity images.
pub fn torus_quotient_check() -> MapCheck {
    let src = presentations::f11();
    let dst = presentations::f10();
    let images = images_of(&[
        ("x1", dst.var("x1")),
        ("x2", dst.var("x2")),
        ("x3", dst.var("x3")),
    ]);
    let r = check_homomorphism(&src, &dst, &images, None).expect("all images given");
    MapCheck {
        name: "f11 -> f10, identity".into(),
        passed: all_zero(&r),
        lines: residual_lines(&r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_map() {
        assert!(so3_map_check().passed);
    }

    #[test]
    fn quotient_map() {
        assert!(torus_quotient_check().passed);
    }

    #[test]
    fn missing_image_is_reported() {
        let src = presentations::f11();
        let dst = presentations::f10();
        let images = images_of(&[("x1", dst.var("x1"))]);
        assert!(matches!(
            check_homomorphism(&src, &dst, &images, None),
            Err(Error::MissingImage(_))
        ));
    }

    #[test]
    fn boundary_identities() {
        let r = eq5_identity_check();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn sphere_to_torus() {
        let r = f04_to_torus_check();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn residuals_are_sums_of_term_residuals() {
        let src = presentations::f11();
        let dst = presentations::uaso3();
        let d = Laurent::delta();
        let images = images_of(&[
            ("x1", dst.var("y1").scale(&d)),
            ("x2", dst.var("y2")),
            ("x3", dst.var("y3")),
        ]);
        let by_index: BTreeMap<u8, Element> = (0..3)
            .map(|g| (g, images[src.table().name(g)].clone()))
            .collect();
        let raw = check_homomorphism(&src, &dst, &images, None).unwrap();
        for (r, res) in src.relations.iter().zip(&raw) {
            let mut sum = Element::zero(dst.table());
            for (w, c) in r.terms() {
                let term = Element::monomial(src.table(), w.clone(), c.clone());
                sum = sum + dst.nf(&substitute_generators(&term, &by_index, dst.table()).unwrap());
            }
            assert_eq!(&dst.nf(&sum), res);
        }
        assert!(!all_zero(&raw));
    }
}
