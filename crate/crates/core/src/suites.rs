//! Named verification suites.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::maps;
use crate::ncalg::Element;
use crate::planar::{self, LETTERS};
use crate::presentations::{self, Presentation};
use crate::report::{Check, Report};
use crate::rewrite::check_confluence;
use crate::structure;
use crate::torus::{self, CurveTable, LatticeLink, LinkKey, TorusTarget};

pub const SUITES: [&str; 8] = [
    "confluence",
    "lemma2",
    "lemma4",
    "center",
    "zerodiv",
    "maps",
    "roots",
    "all",
];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOptions {
    pub max_degree: u32,
    pub seed: u64,
    pub trials: usize,
    pub max_complexity: i64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            max_degree: 4,
            seed: 7,
            trials: 100,
            max_complexity: 25,
        }
    }
}

pub fn run_suite(name: &str, o: &SuiteOptions) -> Result<Report> {
    Ok(match name {
        "confluence" => confluence(o),
        "lemma2" => lemma2(o)?,
        "lemma4" => lemma4()?,
        "center" => center(o),
        "zerodiv" => zerodiv(o),
        "maps" => maps_suite(),
        "roots" => roots(o),
        "all" => {
            let mut r = Report::new("all");
            for s in &SUITES[..SUITES.len() - 1] {
                r.extend(run_suite(s, o)?);
            }
            r
        }
        _ => return Err(Error::Precondition(format!("unknown suite '{name}'"))),
    })
}

pub fn confluence(o: &SuiteOptions) -> Report {
    let mut r = Report::new("confluence");
    for p in presentations::all() {
        let c = check_confluence(&p.system, o.max_degree);
        let mut check = Check::new(
            format!("{} confluent to weight {}", p.name, o.max_degree),
            c.passed(),
        )
        .with(format!(
            "{} words, {} overlap words, {} failures",
            c.words_checked,
            c.overlap_words,
            c.failures.len()
        ));
        for f in c.failures.iter().take(3) {
            check = check.with(format!(
                "{}: leftmost {} | rightmost {} | memoized {}",
                f.word, f.leftmost, f.rightmost, f.memoized
            ));
        }
        r.push(check);
        r.push(Check::new(
            format!("{} relations reduce to 0", p.name),
            p.relations_hold(),
        ));
    }
    let x = structure::cross_normalization(o.trials, o.max_degree as usize, o.seed);
    r.push(
        Check::new("f04 and f04r normal forms agree", x.agreeing == x.trials)
            .with(format!(
                "{}/{} agree, {} with different normal words",
                x.agreeing, x.trials, x.differing_forms
            ))
            .with_all(x.first_disagreement),
    );
    r.push(resolution_notes());
    r
}

/// `x1y1 = A z1 + A⁻¹w1` and `y1x2 = A z2 + A⁻¹w2` in the twice-punctured
/// torus.
pub fn resolution_notes() -> Check {
    let p = presentations::f12();
    let pairs = [("x1", "y1", "z1", "w1"), ("y1", "x2", "z2", "w2")];
    let mut ok = true;
    let mut details = Vec::new();
    for (u, v, z, w) in pairs {
        let lhs = p.mul(&p.var(u), &p.var(v));
        let rhs = p.var(z).scale(&Laurent::a()) + p.note(w).scale(&Laurent::a_pow(-1));
        let diff = p.nf(&(lhs - rhs));
        ok &= diff.is_zero();
        details.push(format!("{u} {v} - (A {z} + A^-1 {w}) = {diff}"));
    }
    Check::new("f12 resolution notes", ok).with_all(details)
}

fn link(p: i64, q: i64) -> LinkKey {
    LinkKey {
        link: LatticeLink::new(p, q),
        boundary: 0,
    }
}

pub fn lemma2(o: &SuiteOptions) -> Result<Report> {
    let mut r = Report::new("lemma2");
    let table = CurveTable::new(TorusTarget::F11, 8);
    let p = &table.pres;
    let x1x2 = p.mul(&p.var("x1"), &p.var("x2"));
    let got = table.to_link_basis(&x1x2)?;
    let expected = [
        (link(1, 1), Laurent::a()),
        (link(1, -1), Laurent::a_pow(-1)),
    ]
    .into_iter()
    .collect();
    r.push(
        Check::new("x1 x2 in the link basis", got == expected)
            .with(crate::expr::format_links(&got)),
    );

    let zx3 = p.mul(p.note("z"), &p.var("x3"));
    let known = p.mul(&p.var("x1"), &p.var("x1")).scale(&Laurent::a_pow(2))
        + p.mul(&p.var("x2"), &p.var("x2")).scale(&Laurent::a_pow(-2))
        - Element::scalar(p.table(), Laurent::a_pow(2) + Laurent::a_pow(-2));
    let boundary = p.nf(&(zx3 - known));
    r.push(
        Check::new(
            "boundary from the resolution of z x3",
            boundary == p.nf(p.note("partial")),
        )
        .with(format!("boundary = {boundary}")),
    );

    let rel = presentations::torus_relation(p.table());
    let mut bad = Vec::new();
    for g in ["x1", "x2", "x3"] {
        let c = p.system.commutator(&rel, &p.var(g), &Laurent::one())?;
        if !c.is_zero() {
            bad.push(format!("[r, {g}] = {c}"));
        }
    }
    r.push(Check::new("closed-torus relation central in f11", bad.is_empty()).with_all(bad));

    let sweep = torus::lemma2_sweep(o.max_complexity)?;
    let failed: Vec<_> = sweep.iter().filter(|x| !x.passed).collect();
    let mut c = Check::new(
        format!("product of curves, complexity <= {}", o.max_complexity),
        failed.is_empty(),
    )
    .with(format!("{} pairs, {} failures", sweep.len(), failed.len()));
    for f in failed.iter().take(3) {
        c = c.with(format!("{} {}: {}", f.v, f.w, f.issues.join("; ")));
    }
    r.push(c);
    Ok(r)
}

pub fn lemma4() -> Result<Report> {
    let mut r = Report::new("lemma4");
    let pres = presentations::f04_rbar();
    let cal = planar::calibrate_coordinates(&pres)?;
    r.push(
        Check::new(
            "planar coordinates calibrated",
            cal.consistent_assignments > 0,
        )
        .with(format!(
            "x1 = {}, x2 = {}, x3 = {}, z = {}, outer {} ({} consistent assignments)",
            cal.x1, cal.x2, cal.x3, cal.z, cal.outer, cal.consistent_assignments
        )),
    );
    let mut entries = Vec::new();
    for g in LETTERS {
        for h in LETTERS {
            for (k, l) in [(1, 1), (1, 2), (2, 1)] {
                entries.push(planar::lemma4_verify(&cal, (g, k), (h, l))?);
            }
        }
    }
    let failed: Vec<_> = entries.iter().filter(|e| !e.passed).collect();
    let mut c = Check::new("leading planar link of products", failed.is_empty()).with(format!(
        "{} products, {} failures",
        entries.len(),
        failed.len()
    ));
    for e in &failed {
        c = c.with(format!(
            "{} * {}: top {:?} predicted {}, exponent ok {}, sum dominated {}, square dominated {}",
            e.left,
            e.right,
            e.top.map(|t| t.to_string()),
            e.predicted,
            e.coefficient_ok,
            e.dominated_sum,
            e.dominated_sq
        ));
    }
    r.push(c);
    let z = planar::z_elimination_check(&pres);
    r.push(
        Check::new("z note eliminates to the cubic relation", z.passed()).with(format!("{z:?}")),
    );
    Ok(r)
}

fn center_check(p: &Presentation, d: u32, expected: usize) -> Check {
    let (c, _) = structure::center_up_to_degree(p, d);
    Check::new(
        format!("{} center to degree {d} has dimension {expected}", p.name),
        c.dimension == expected && c.verified,
    )
    .with(format!(
        "{} candidates, dimension {}",
        c.candidates, c.dimension
    ))
    .with_all(c.basis)
}

pub fn center(o: &SuiteOptions) -> Report {
    let d = o.max_degree;
    let mut r = Report::new("center");
    r.push(center_check(&presentations::f10(), d, 1));
    r.push(center_check(
        &presentations::f11(),
        d.min(5),
        if d >= 3 { 2 } else { 1 },
    ));
    r.push(center_check(
        &structure::sphere_with_generic_boundary(),
        d.min(2),
        1,
    ));
    r
}

pub fn zerodiv(o: &SuiteOptions) -> Report {
    let mut r = Report::new("zerodiv");
    let d = o.max_degree.min(3);
    for p in presentations::all() {
        let z = structure::zero_divisor_probe(&p, o.trials, d, o.seed);
        r.push(
            Check::new(
                format!(
                    "{}: {} random products of weight <= {d} nonzero",
                    p.name, o.trials
                ),
                z.passed(),
            )
            .with_all(
                z.counterexamples
                    .iter()
                    .map(|(a, b)| format!("({a}) * ({b}) = 0")),
            ),
        );
    }
    let s = structure::lemma3_sweep(3);
    r.push(
        Check::new("vector lemma on [-3,3]^2", s.failures.is_empty()).with(format!(
            "{} quadruples, {} failures",
            s.quadruples,
            s.failures.len()
        )),
    );
    r
}

pub fn maps_suite() -> Report {
    let mut r = Report::new("maps");
    for m in [maps::so3_map_check(), maps::torus_quotient_check()] {
        r.push(Check::new(m.name, m.passed).with_all(m.lines));
    }
    let e = maps::eq5_identity_check();
    r.push(
        Check::new(
            "boundary identities at a1 = a2 = a3 = -a4 = A + A^-1",
            e.passed,
        )
        .with(format!("p = {:?}, q + del^2 = {}", e.p, e.q_plus_delta_sq))
        .with(format!("control (all a_i = 1): p = {:?}", e.control_p)),
    );
    let t = maps::f04_to_torus_check();
    r.push(
        Check::new("f04 -> f10 with A -> A^2", t.passed)
            .with(format!("cubic relation constant {}", t.relation_constant))
            .with(format!("control nonzero: {}", t.control_nonzero))
            .with_all(t.residuals.into_iter().filter(|s| s != "0")),
    );
    r
}

pub fn roots(o: &SuiteOptions) -> Report {
    let mut r = Report::new("roots");
    for c in structure::roots_of_unity_suite(o.max_degree) {
        r.push(Check::new(c.name, c.passed).with(c.detail));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &SuiteOptions::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let o = SuiteOptions {
            max_degree: 2,
            trials: 10,
            max_complexity: 6,
            ..SuiteOptions::default()
        };
        for s in ["lemma2", "maps", "roots", "zerodiv", "center"] {
            let r = run_suite(s, &o).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn f12_notes_resolve() {
        assert!(resolution_notes().passed);
    }
}
