//! Free noncommutative polynomials with `Z[A, A^-1]` coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::laurent::Laurent;

/// A word in the generators, as indices into a [`GeneratorTable`].
pub type Word = SmallVec<[u8; 12]>;

/// Ordered generator names. Index order is the ranking used by monomial
/// orders; central generators are flagged but otherwise ordinary letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    names: Vec<String>,
    central: Vec<bool>,
}

impl GeneratorTable {
    pub fn new(entries: &[(&str, bool)]) -> Result<Arc<Self>> {
        let mut names: Vec<String> = Vec::with_capacity(entries.len());
        for (name, _) in entries {
            if names.iter().any(|n| n == name) {
                return Err(Error::DuplicateGenerator(name.to_string()));
            }
            names.push(name.to_string());
        }
        assert!(names.len() < 256, "at most 255 generators");
        Ok(Arc::new(Self {
            names,
            central: entries.iter().map(|e| e.1).collect(),
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: u8) -> &str {
        &self.names[g as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn is_central(&self, g: u8) -> bool {
        self.central[g as usize]
    }

    pub fn word_to_string(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let n = j - i;
            if n == 1 {
                parts.push(self.name(w[i]).to_string());
            } else {
                parts.push(format!("{}^{n}", self.name(w[i])));
            }
            i = j;
        }
        parts.join(" ")
    }
}

/// A finite `Z[A, A^-1]`-combination of words.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Word, Laurent>,
}

impl Element {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Self {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::scalar(table, Laurent::one())
    }

    pub fn scalar(table: &Arc<GeneratorTable>, s: Laurent) -> Self {
        Self::monomial(table, Word::new(), s)
    }

    pub fn generator(table: &Arc<GeneratorTable>, g: u8) -> Self {
        Self::monomial(table, Word::from_slice(&[g]), Laurent::one())
    }

    /// Generator by name; panics if the name is unknown.
    pub fn var(table: &Arc<GeneratorTable>, name: &str) -> Self {
        let g = table
            .index(name)
            .unwrap_or_else(|| panic!("unknown generator `{name}`"));
        Self::generator(table, g)
    }

    pub fn monomial(table: &Arc<GeneratorTable>, w: Word, s: Laurent) -> Self {
        let mut e = Self::zero(table);
        e.add_term(w, &s);
        e
    }

    pub fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Word, Laurent)>,
    ) -> Self {
        let mut e = Self::zero(table);
        for (w, s) in terms {
            e.add_term(w, &s);
        }
        e
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Laurent> {
        self.terms
    }

    pub fn coeff(&self, w: &[u8]) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The constant-term coefficient.
    pub fn scalar_part(&self) -> Laurent {
        self.coeff(&[])
    }

    /// Adds `s * w` in place.
    pub fn add_term(&mut self, w: Word, s: &Laurent) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get() + s;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s.clone());
            }
        }
    }

    pub fn scale(&self, s: &Laurent) -> Self {
        self.map_coeffs(|c| c * s)
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        let mut e = Self::zero(&self.table);
        for (w, c) in &self.terms {
            e.add_term(w.clone(), &f(c));
        }
        e
    }

    fn same_table(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_table(other)?;
        let mut e = self.clone();
        for (w, c) in &other.terms {
            e.add_term(w.clone(), c);
        }
        Ok(e)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Free product: words concatenate, coefficients multiply.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_table(other)?;
        let mut e = Self::zero(&self.table);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                e.add_term(w, &(ca * cb));
            }
        }
        Ok(e)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(&self.table);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Generators occurring in some word.
    pub fn support_generators(&self) -> Vec<u8> {
        let mut gs: Vec<u8> = self.terms.keys().flatten().copied().collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }
}

/// `[a, b]_u = u·ab − u^-1·ba` in the free algebra.
pub fn deformed_commutator(a: &Element, b: &Element, u: &Laurent) -> Result<Element> {
    let inv = u
        .unit_inverse()
        .ok_or_else(|| Error::NotUnit(u.to_string()))?;
    let ab = a.checked_mul(b)?;
    let ba = b.checked_mul(a)?;
    ab.scale(u).checked_sub(&ba.scale(&inv))
}

/// Applies the algebra map determined by `images` (one image per source
/// generator index) to `e`. Products of images are formed freely in the
/// target; normalizing is left to the caller.
pub fn substitute_generators(
    e: &Element,
    images: &BTreeMap<u8, Element>,
    target: &Arc<GeneratorTable>,
) -> Result<Element> {
    let mut out = Element::zero(target);
    for g in e.support_generators() {
        if !images.contains_key(&g) {
            return Err(Error::MissingImage(e.table().name(g).to_string()));
        }
    }
    for (w, c) in e.terms() {
        let mut prod = Element::scalar(target, c.clone());
        for g in w {
            prod = prod.checked_mul(&images[g])?;
        }
        out = out.checked_add(&prod)?;
    }
    Ok(out)
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Highest words first (by length, then lexicographically). Multi-term
/// coefficients are parenthesized, e.g. `A^2 x1 x2 - (A^3 - A^-1) x3`;
/// the constant term is written out term by term.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, negative: bool, body: String| {
            let r = match (first, negative) {
                (true, false) => write!(f, "{body}"),
                (true, true) => write!(f, "-{body}"),
                (false, false) => write!(f, " + {body}"),
                (false, true) => write!(f, " - {body}"),
            };
            first = false;
            r
        };
        for w in words {
            let c = &self.terms[w];
            if w.is_empty() {
                for (e, k) in c.terms().rev() {
                    let mag = Laurent::monomial(k.abs(), e);
                    emit(f, k.is_negative(), mag.to_string())?;
                }
                continue;
            }
            let ws = self.table.word_to_string(w);
            if c.num_terms() == 1 {
                let (e, k) = c.terms().next().unwrap();
                let mag = Laurent::monomial(k.abs(), e);
                let body = if mag.is_one() {
                    ws
                } else {
                    format!("{mag} {ws}")
                };
                emit(f, k.is_negative(), body)?;
            } else {
                let (_, top) = c.terms().next_back().unwrap();
                let neg = top.is_negative();
                let shown = if neg { -c } else { c.clone() };
                emit(f, neg, format!("({shown}) {ws}"))?;
            }
        }
        Ok(())
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("generator table mismatch")
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("generator table mismatch")
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("generator table mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                (&self).$m(rhs)
            }
        }
        impl $tr<Element> for &Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> Arc<GeneratorTable> {
        GeneratorTable::new(&[("x1", false), ("x2", false), ("x3", false)]).unwrap()
    }

    fn w(letters: &[u8]) -> Word {
        Word::from_slice(letters)
    }

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(
            GeneratorTable::new(&[("x", false), ("x", true)]),
            Err(Error::DuplicateGenerator("x".into()))
        );
    }

    #[test]
    fn unit_and_free_products() {
        let t = table();
        let x1 = Element::var(&t, "x1");
        let x2 = Element::var(&t, "x2");
        assert_eq!(&x1 * &Element::one(&t), x1);
        let p = &x1 * &x2;
        assert_eq!(p.len(), 1);
        assert!(p.coeff(&[0, 1]).is_one());
        let s = &x1 + &x2;
        let sq = &s * &s;
        assert_eq!(sq.len(), 4);
        for word in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert!(sq.coeff(&word).is_one());
        }
    }

    #[test]
    fn table_mismatch() {
        let t1 = table();
        let t2 = GeneratorTable::new(&[("y1", false)]).unwrap();
        let r = Element::var(&t1, "x1").checked_mul(&Element::var(&t2, "y1"));
        assert_eq!(r, Err(Error::TableMismatch));
    }

    #[test]
    fn commutator_definition() {
        let t = table();
        let x1 = Element::var(&t, "x1");
        let x2 = Element::var(&t, "x2");
        let c = deformed_commutator(&x1, &x2, &Laurent::a()).unwrap();
        assert_eq!(c.coeff(&[0, 1]), Laurent::a());
        assert_eq!(c.coeff(&[1, 0]), -Laurent::a_pow(-1));
        assert!(deformed_commutator(&x1, &x1, &Laurent::one())
            .unwrap()
            .is_zero());
        assert_eq!(
            deformed_commutator(&x1, &x2, &Laurent::delta()),
            Err(Error::NotUnit("A^2 - A^-2".into()))
        );
    }

    #[test]
    fn substitution() {
        let src = table();
        let dst = GeneratorTable::new(&[("y1", false), ("y2", false), ("y3", false)]).unwrap();
        let d = Laurent::delta();
        let images: BTreeMap<u8, Element> = (0..3u8)
            .map(|i| (i, Element::generator(&dst, i).scale(&d)))
            .collect();
        let x = |n| Element::var(&src, n);
        let y = |n| Element::var(&dst, n);
        assert_eq!(
            substitute_generators(&x("x1"), &images, &dst).unwrap(),
            y("y1").scale(&d)
        );
        let dd = &d * &d;
        assert_eq!(
            substitute_generators(&(&x("x1") * &x("x2")), &images, &dst).unwrap(),
            (&y("y1") * &y("y2")).scale(&dd)
        );
        let rel =
            deformed_commutator(&x("x1"), &x("x2"), &Laurent::a()).unwrap() - x("x3").scale(&d);
        let img = substitute_generators(&rel, &images, &dst).unwrap();
        let expected =
            (deformed_commutator(&y("y1"), &y("y2"), &Laurent::a()).unwrap() - y("y3")).scale(&dd);
        assert_eq!(img, expected);
        let partial: BTreeMap<u8, Element> = [(0u8, y("y1"))].into_iter().collect();
        assert_eq!(
            substitute_generators(&x("x2"), &partial, &dst),
            Err(Error::MissingImage("x2".into()))
        );
    }

    #[test]
    fn display_groups_powers() {
        let t = table();
        let e = Element::from_terms(
            &t,
            [
                (w(&[0, 0, 1]), Laurent::a_pow(2)),
                (w(&[2]), -(Laurent::a() * Laurent::delta())),
                (w(&[]), Laurent::from_terms([(2, 1), (-2, 1)])),
            ],
        );
        assert_eq!(e.to_string(), "A^2 x1^2 x2 - (A^3 - A^-1) x3 + A^2 + A^-2");
    }

    fn arb_element(t: Arc<GeneratorTable>) -> impl Strategy<Value = Element> {
        prop::collection::vec(
            (prop::collection::vec(0u8..3, 0..3), -3i64..=3, -2i64..=2),
            0..4,
        )
        .prop_map(move |ts| {
            Element::from_terms(
                &t,
                ts.into_iter()
                    .map(|(wd, e, c)| (Word::from_vec(wd), Laurent::monomial(c, e))),
            )
        })
    }

    proptest! {
        #[test]
        fn associativity(a in arb_element(table()), b in arb_element(table()), c in arb_element(table())) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }

        #[test]
        fn commutator_antisymmetry(a in arb_element(table()), b in arb_element(table()), k in -3i64..3) {
            let u = Laurent::a_pow(k);
            let lhs = deformed_commutator(&a, &b, &u).unwrap();
            let rhs = -deformed_commutator(&b, &a, &u.unit_inverse().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_element(table()), b in arb_element(table())) {
            let t = table();
            let images: BTreeMap<u8, Element> = [
                (0u8, &Element::var(&t, "x2") + &Element::one(&t)),
                (1u8, Element::var(&t, "x3").scale(&Laurent::delta())),
                (2u8, &Element::var(&t, "x1") * &Element::var(&t, "x2")),
            ].into_iter().collect();
            let a = Element::from_terms(&t, a.into_terms());
            let b = Element::from_terms(&t, b.into_terms());
            let lhs = substitute_generators(&(&a * &b), &images, &t).unwrap();
            let rhs = &substitute_generators(&a, &images, &t).unwrap() * &substitute_generators(&b, &images, &t).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
