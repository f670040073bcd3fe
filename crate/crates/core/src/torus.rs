//! Links on the torus as lattice points, their skein elements in the
//! closed and once-punctured torus algebras, and the parallelogram
//! product bound.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ncalg::{Element, Word};
use crate::presentations::{f10, f11, Presentation};

/// `gcd(p, q)` parallel copies of the slope `p/q` curve, stored with
/// `p > 0`, or `p = 0` and `q ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeLink {
    pub p: i64,
    pub q: i64,
}

impl LatticeLink {
    pub fn new(p: i64, q: i64) -> Self {
        if p < 0 || (p == 0 && q < 0) {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    pub const EMPTY: LatticeLink = LatticeLink { p: 0, q: 0 };

    pub fn is_empty(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn complexity(&self) -> i64 {
        self.p * self.p + self.q * self.q
    }

    /// Number of parallel components.
    pub fn multiplicity(&self) -> i64 {
        self.p.gcd(&self.q)
    }

    pub fn primitive(&self) -> Self {
        let g = self.multiplicity();
        if g == 0 {
            *self
        } else {
            Self::new(self.p / g, self.q / g)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.p + o.p, self.q + o.q)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.p - o.p, self.q - o.q)
    }
}

impl fmt::Display for LatticeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Signed determinant `ps − qr` of the canonical representatives.
pub fn signed_det(v: &LatticeLink, w: &LatticeLink) -> i64 {
    det((v.p, v.q), (w.p, w.q))
}

/// Minimal geometric intersection number `|ps − qr|`.
pub fn intersection_number(v: &LatticeLink, w: &LatticeLink) -> i64 {
    signed_det(v, w).abs()
}

/// Farey parents `(v1, v2)` of a primitive non-base `v`: `v1 + v2 = v`,
/// `det(v1, v2) = 1`, both of smaller complexity.
pub fn farey_parents(v: &LatticeLink) -> Option<((i64, i64), (i64, i64))> {
    let (p, q) = (v.p, v.q);
    if v.multiplicity() != 1 || v.complexity() <= 2 {
        return None;
    }
    // det(v1, v) = p1·q − q1·p = 1
    let e = q.extended_gcd(&(-p));
    let (mut p1, mut q1) = (e.x * e.gcd.signum(), e.y * e.gcd.signum());
    debug_assert_eq!(p1 * q - q1 * p, 1);
    let n = v.complexity();
    // shift along v towards v/2
    let k = ((n - 2 * (p1 * p + q1 * q)) as f64 / (2 * n) as f64).round() as i64;
    p1 += k * p;
    q1 += k * q;
    let mut best: Option<((i64, i64), (i64, i64))> = None;
    for s in -1..=1 {
        let a = (p1 + s * p, q1 + s * q);
        let b = (p - a.0, q - a.1);
        let ca = a.0 * a.0 + a.1 * a.1;
        let cb = b.0 * b.0 + b.1 * b.1;
        if ca < n && cb < n && a.0 * b.0 + a.1 * b.1 > 0 {
            best = Some((a, b));
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TorusTarget {
    /// Once-punctured torus; link-basis keys carry a boundary exponent.
    F11,
    /// Closed torus.
    F10,
}

impl TorusTarget {
    pub fn presentation(&self) -> Presentation {
        match self {
            TorusTarget::F11 => f11(),
            TorusTarget::F10 => f10(),
        }
    }
}

/// Basis key: a lattice link times a power of the boundary curve (always 0
/// on the closed torus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinkKey {
    pub link: LatticeLink,
    pub boundary: u32,
}

impl fmt::Display for LinkKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.boundary {
            0 => write!(f, "{}", self.link),
            1 => write!(f, "{}*partial", self.link),
            k => write!(f, "{}*partial^{}", self.link, k),
        }
    }
}

pub type LinkExpansion = BTreeMap<LinkKey, Laurent>;

/// Skein elements of all links up to a complexity bound, with a leading
/// word index for change of basis.
pub struct CurveTable {
    pub target: TorusTarget,
    pub bound: i64,
    pub pres: Presentation,
    curves: HashMap<LatticeLink, Element>,
    entries: Vec<(LinkKey, Element)>,
    by_lead: HashMap<Word, usize>,
    max_degree: u32,
}

impl CurveTable {
    pub fn new(target: TorusTarget, bound: i64) -> Self {
        let pres = target.presentation();
        let mut links: Vec<LatticeLink> = Vec::new();
        let r = (bound as f64).sqrt() as i64 + 1;
        for p in 0..=r {
            for q in -r..=r {
                let l = LatticeLink::new(p, q);
                if l.p == p && l.q == q && l.complexity() <= bound {
                    links.push(l);
                }
            }
        }
        links.sort_by_key(|l| (l.complexity(), *l));
        let mut curves: HashMap<LatticeLink, Element> = HashMap::new();
        for l in &links {
            let e = compute_curve(&pres, &curves, l);
            curves.insert(*l, e);
        }
        let mut table = Self {
            target,
            bound,
            pres,
            curves,
            entries: Vec::new(),
            by_lead: HashMap::new(),
            max_degree: 0,
        };
        table.index(&links);
        table
    }

    fn index(&mut self, links: &[LatticeLink]) {
        let max_degree = links
            .iter()
            .map(|l| self.pres.system.weight(&self.lead(&self.curves[l]).0))
            .max()
            .unwrap_or(0);
        self.max_degree = max_degree;
        let boundary = match self.target {
            TorusTarget::F11 => Some(self.pres.nf(self.pres.note("partial"))),
            TorusTarget::F10 => None,
        };
        for l in links {
            let base = self.curves[l].clone();
            let mut e = base;
            let mut k = 0;
            loop {
                let lead = self.lead(&e).0;
                self.by_lead.insert(lead, self.entries.len());
                self.entries.push((
                    LinkKey {
                        link: *l,
                        boundary: k,
                    },
                    e.clone(),
                ));
                let Some(b) = &boundary else { break };
                if self.pres.system.weight(&self.lead(&e).0) + 3 > max_degree {
                    break;
                }
                e = self.pres.mul(&e, b);
                k += 1;
            }
        }
    }

    fn lead(&self, e: &Element) -> (Word, Laurent) {
        self.pres
            .system
            .leading_term(e)
            .unwrap_or_else(|| (Word::new(), Laurent::zero()))
    }

    pub fn curve(&self, v: &LatticeLink) -> Result<&Element> {
        self.curves.get(v).ok_or(Error::BoundExceeded {
            needed: v.complexity(),
            have: self.bound,
        })
    }

    /// Normal-form element of a link-basis combination.
    pub fn from_link_basis(&self, exp: &LinkExpansion) -> Result<Element> {
        let mut out = Element::zero(self.pres.table());
        for (k, c) in exp {
            let e = self
                .entries
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, e)| e)
                .ok_or(Error::BoundExceeded {
                    needed: k.link.complexity(),
                    have: self.bound,
                })?;
            out = out + e.scale(c);
        }
        Ok(out)
    }

    /// The unique expansion of `e` over the link basis.
    pub fn to_link_basis(&self, e: &Element) -> Result<LinkExpansion> {
        let mut rest = self.pres.nf(e);
        let mut out = LinkExpansion::new();
        while let Some((w, c)) = self.pres.system.leading_term(&rest) {
            let Some(&i) = self.by_lead.get(&w) else {
                let d = self.pres.system.weight(&w) as i64;
                return Err(Error::BoundExceeded {
                    needed: (2 * d * d).max(self.bound + 1),
                    have: self.bound,
                });
            };
            let (key, entry) = &self.entries[i];
            let lc = entry.coeff(&w);
            let inv = lc
                .unit_inverse()
                .expect("table leading coefficients are units");
            let k = &c * &inv;
            rest = rest - entry.scale(&k);
            let slot = out.entry(*key).or_insert_with(Laurent::zero);
            *slot += &k;
            if slot.is_zero() {
                out.remove(key);
            }
        }
        Ok(out)
    }

    /// Leading words are pairwise distinct with unit coefficients.
    pub fn is_triangular(&self) -> bool {
        self.by_lead.len() == self.entries.len()
            && self.entries.iter().all(|(_, e)| self.lead(e).1.is_unit())
    }

    pub fn links(&self) -> impl Iterator<Item = &LatticeLink> {
        self.curves.keys()
    }
}

fn compute_curve(
    pres: &Presentation,
    known: &HashMap<LatticeLink, Element>,
    v: &LatticeLink,
) -> Element {
    let t = pres.table();
    let get = |p: i64, q: i64| known[&LatticeLink::new(p, q)].clone();
    match (v.p, v.q) {
        (0, 0) => return Element::one(t),
        (1, 0) => return pres.var("x1"),
        (0, 1) => return pres.var("x2"),
        (1, 1) => return pres.var("x3"),
        (1, -1) => return pres.nf(pres.note("z")),
        _ => {}
    }
    let d = v.multiplicity();
    if d > 1 {
        let prim = v.primitive();
        return pres.system.power(&known[&prim], d as u32);
    }
    let (a, b) = farey_parents(v).expect("primitive links beyond the base cases have parents");
    let prod = pres.mul(&get(a.0, a.1), &get(b.0, b.1));
    prod.scale(&Laurent::a_pow(-1)) - get(a.0 - b.0, a.1 - b.1).scale(&Laurent::a_pow(-2))
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveProductReport {
    pub v: LatticeLink,
    pub w: LatticeLink,
    pub passed: bool,
    pub issues: Vec<String>,
    pub vw: Vec<(String, String)>,
    pub wv: Vec<(String, String)>,
}

/// Closed parallelogram with vertices `±(v+w)`, `±(v−w)`.
pub fn in_parallelogram(u: &LatticeLink, v: &LatticeLink, w: &LatticeLink) -> bool {
    let d = signed_det(v, w).abs();
    signed_det(u, w).abs() <= d && signed_det(v, u).abs() <= d
}

fn render(exp: &LinkExpansion) -> Vec<(String, String)> {
    exp.iter()
        .map(|(k, c)| (k.to_string(), c.to_string()))
        .collect()
}

/// Expands `v·w` and `w·v` over the link basis and checks the support
/// bound and the corner coefficients.
pub fn lemma2_verify(
    table: &CurveTable,
    v: &LatticeLink,
    w: &LatticeLink,
) -> Result<CurveProductReport> {
    if v.is_empty() || w.is_empty() {
        return Err(Error::Precondition(
            "curve products need nonempty links".into(),
        ));
    }
    let cv = table.curve(v)?;
    let cw = table.curve(w)?;
    let vw = table.to_link_basis(&table.pres.mul(cv, cw))?;
    let wv = table.to_link_basis(&table.pres.mul(cw, cv))?;
    let mut issues = Vec::new();
    let d = signed_det(v, w);
    let sum = v.add(w);
    let diff = v.sub(w);
    for (name, exp, sign) in [("vw", &vw, 1), ("wv", &wv, -1)] {
        for key in exp.keys() {
            if key.boundary != 0 {
                issues.push(format!("{name}: boundary term {key}"));
            }
            if d != 0 && !in_parallelogram(&key.link, v, w) {
                issues.push(format!("{name}: {} outside the parallelogram", key.link));
            }
        }
        let coeff = |l: &LatticeLink| {
            exp.get(&LinkKey {
                link: *l,
                boundary: 0,
            })
            .cloned()
            .unwrap_or_else(Laurent::zero)
        };
        if d == 0 {
            let single = LinkExpansion::from([(
                LinkKey {
                    link: sum,
                    boundary: 0,
                },
                Laurent::one(),
            )]);
            if *exp != single {
                issues.push(format!(
                    "{name}: parallel product is not the single link {sum}"
                ));
            }
        } else {
            let want_sum = Laurent::a_pow(sign * d);
            let want_diff = Laurent::a_pow(-sign * d);
            if coeff(&sum) != want_sum {
                issues.push(format!(
                    "{name}: corner {sum} has {} not {want_sum}",
                    coeff(&sum)
                ));
            }
            if coeff(&diff) != want_diff {
                issues.push(format!(
                    "{name}: corner {diff} has {} not {want_diff}",
                    coeff(&diff)
                ));
            }
        }
    }
    Ok(CurveProductReport {
        v: *v,
        w: *w,
        passed: issues.is_empty(),
        issues,
        vw: render(&vw),
        wv: render(&wv),
    })
}

/// Canonical nonempty links of complexity at most `max`.
pub fn links_up_to(max: i64) -> Vec<LatticeLink> {
    let r = (max as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for p in 0..=r {
        for q in -r..=r {
            let l = LatticeLink { p, q };
            if LatticeLink::new(p, q) == l && !l.is_empty() && l.complexity() <= max {
                out.push(l);
            }
        }
    }
    out.sort_by_key(|l| (l.complexity(), *l));
    out
}

/// All ordered pairs of links of complexity `≤ max`; uses a closed-torus
/// table of bound `4·max`.
pub fn lemma2_sweep(max: i64) -> Result<Vec<CurveProductReport>> {
    let table = CurveTable::new(TorusTarget::F10, 4 * max);
    let links = links_up_to(max);
    let pairs: Vec<(LatticeLink, LatticeLink)> = links
        .iter()
        .flat_map(|v| links.iter().map(move |w| (*v, *w)))
        .collect();
    pairs
        .par_iter()
        .map(|(v, w)| lemma2_verify(&table, v, w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(p: i64, q: i64) -> LatticeLink {
        LatticeLink::new(p, q)
    }

    #[test]
    fn canonical_representative() {
        assert_eq!(l(-2, 3), LatticeLink { p: 2, q: -3 });
        assert_eq!(l(0, -4), LatticeLink { p: 0, q: 4 });
        assert_eq!(l(6, 4).multiplicity(), 2);
        assert_eq!(l(3, 4).complexity(), 25);
    }

    #[test]
    fn intersections() {
        assert_eq!(intersection_number(&l(1, 0), &l(0, 1)), 1);
        assert_eq!(intersection_number(&l(1, 0), &l(2, 0)), 0);
        assert_eq!(intersection_number(&l(2, 0), &l(0, 2)), 4);
    }

    #[test]
    fn farey_parents_are_valid() {
        for v in links_up_to(200) {
            if v.multiplicity() != 1 || v.complexity() <= 2 {
                continue;
            }
            let (a, b) = farey_parents(&v).unwrap();
            assert_eq!((a.0 + b.0, a.1 + b.1), (v.p, v.q));
            assert_eq!(det(a, b), 1);
        }
    }

    #[test]
    fn base_curves() {
        let t = CurveTable::new(TorusTarget::F11, 10);
        let p = &t.pres;
        let z = (&p.var("x1") * &p.var("x2")).scale(&Laurent::a())
            - p.var("x3").scale(&Laurent::a_pow(2));
        assert_eq!(t.curve(&l(1, -1)).unwrap(), &p.nf(&z));
        assert_eq!(t.curve(&l(2, 0)).unwrap(), &(&p.var("x1") * &p.var("x1")));
    }

    #[test]
    fn curve_two_one() {
        let t = CurveTable::new(TorusTarget::F11, 10);
        let p = &t.pres;
        let (x1, x2, x3) = (p.var("x1"), p.var("x2"), p.var("x3"));
        let a = Laurent::a_pow;
        let via_13 = p.nf(&((&x1 * &x3).scale(&a(-1)) - x2.scale(&a(-2))));
        let via_31 = p.nf(&((&x3 * &x1).scale(&a(1)) - x2.scale(&a(2))));
        assert_eq!(t.curve(&l(2, 1)).unwrap(), &via_13);
        assert_eq!(via_13, via_31);
    }

    #[test]
    fn tolinks_product_to_sum() {
        let t = CurveTable::new(TorusTarget::F11, 10);
        let e = &t.pres.var("x1") * &t.pres.var("x2");
        let exp = t.to_link_basis(&e).unwrap();
        let key = |p, q| LinkKey {
            link: l(p, q),
            boundary: 0,
        };
        assert_eq!(
            exp,
            LinkExpansion::from([(key(1, 1), Laurent::a()), (key(1, -1), Laurent::a_pow(-1))])
        );
        let sq = &t.pres.var("x1") * &t.pres.var("x1");
        assert_eq!(
            t.to_link_basis(&sq).unwrap(),
            LinkExpansion::from([(key(2, 0), Laurent::one())])
        );
    }

    #[test]
    fn bound_exceeded_is_reported() {
        let t = CurveTable::new(TorusTarget::F10, 2);
        let e = t.pres.var("x1").pow(5);
        assert!(matches!(
            t.to_link_basis(&e),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn tables_are_triangular() {
        assert!(CurveTable::new(TorusTarget::F10, 50).is_triangular());
        assert!(CurveTable::new(TorusTarget::F11, 50).is_triangular());
    }

    #[test]
    fn curve_product_examples() {
        let t = CurveTable::new(TorusTarget::F10, 40);
        let r = lemma2_verify(&t, &l(1, 0), &l(0, 1)).unwrap();
        assert!(r.passed, "{:?}", r.issues);
        assert!(lemma2_verify(&t, &l(1, 0), &l(2, 0)).unwrap().passed);
        let r = lemma2_verify(&t, &l(2, 1), &l(1, 2)).unwrap();
        assert!(r.passed, "{:?}", r.issues);
        let r = lemma2_verify(&t, &l(2, 0), &l(0, 2)).unwrap();
        assert!(r.passed, "{:?}", r.issues);
    }
}
