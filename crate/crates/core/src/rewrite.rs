//! Terminating rewriting to normal forms modulo a finite presentation.
//!
//! A [`RuleSystem`] holds two kinds of rules:
//!
//! * swap rules `hi·lo → c·lo·hi + tail`, one per generator pair, which
//!   sort words into ascending generator order;
//! * monomial rules, which fire on a *sorted* word whose exponent vector is
//!   divisible by the rule's trigger vector.
//!
//! A monomial rule is applied to a sorted word `w` with exponents `e ≥ t`
//! by choosing a placement word `P·T` (or `T·P`), where `T` is the sorted
//! trigger and `P` the sorted cofactor. Sorting the placement with swap
//! rules alone gives `c·w + L` with `c` a unit, hence
//! `w = c⁻¹(P·R − L)` where `R` is the rule's replacement.
//!
//! Words are compared by weighted degree first, then lexicographically by
//! generator index. Every rule must strictly decrease its left-hand side in
//! this order; that is checked when the rule is added.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Laurent, QuotientSpec, Specialization};
use crate::ncalg::{Element, GeneratorTable, Word};

/// `hi·lo → lead·lo·hi + tail`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapRule {
    pub high: u8,
    pub low: u8,
    pub lead: Laurent,
    pub tail: Element,
}

/// Fires on sorted words whose exponent vector dominates `trigger`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialRule {
    pub trigger: Vec<u32>,
    pub replacement: Element,
}

/// Redex selection for the step-by-step reducer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// First out-of-order pair from the left; placement `T·P`.
    Leftmost,
    /// Last out-of-order pair; placement `P·T`.
    Rightmost,
}

type Terms = Vec<(Word, Laurent)>;
type CacheKey = (Word, u8, bool);

const DEPTH_LIMIT: usize = 20_000;
const STEP_LIMIT: usize = 50_000_000;

thread_local! {
    static DEPTH: Cell<usize> = const { Cell::new(0) };
}

struct DepthGuard;

impl DepthGuard {
    fn enter() -> Self {
        DEPTH.with(|d| {
            let v = d.get() + 1;
            assert!(
                v <= DEPTH_LIMIT,
                "rewriting recursion exceeded {DEPTH_LIMIT}: rule system does not terminate"
            );
            d.set(v);
        });
        DepthGuard
    }
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        DEPTH.with(|d| d.set(d.get() - 1));
    }
}

pub struct RuleSystem {
    table: Arc<GeneratorTable>,
    weights: Vec<u32>,
    swaps: Vec<Option<SwapRule>>,
    monomials: Vec<MonomialRule>,
    quotient: Option<QuotientSpec>,
    cache: DashMap<CacheKey, Arc<Terms>>,
}

impl Clone for RuleSystem {
    fn clone(&self) -> Self {
        Self {
            table: self.table.clone(),
            weights: self.weights.clone(),
            swaps: self.swaps.clone(),
            monomials: self.monomials.clone(),
            quotient: self.quotient.clone(),
            cache: DashMap::new(),
        }
    }
}

impl fmt::Debug for RuleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleSystem")
            .field("generators", &self.table.names())
            .field("weights", &self.weights)
            .field("swaps", &self.swaps.iter().flatten().count())
            .field("monomials", &self.monomials.len())
            .field("quotient", &self.quotient)
            .finish()
    }
}

struct Acc(HashMap<Word, Laurent>);

impl Acc {
    fn new() -> Self {
        Acc(HashMap::new())
    }

    fn add(&mut self, w: &Word, c: Laurent) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(w) {
            Some(v) => *v += &c,
            None => {
                self.0.insert(w.clone(), c);
            }
        }
    }

    fn finish(self, sys: &RuleSystem) -> Terms {
        let mut out: Terms = self
            .0
            .into_iter()
            .map(|(w, c)| (w, sys.rc(&c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

impl RuleSystem {
    /// A system with no rules: the free algebra.
    pub fn new(table: &Arc<GeneratorTable>, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), table.len(), "one weight per generator");
        let n = table.len();
        Self {
            table: table.clone(),
            weights,
            swaps: vec![None; n * n],
            monomials: Vec::new(),
            quotient: None,
            cache: DashMap::new(),
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn quotient(&self) -> Option<&QuotientSpec> {
        self.quotient.as_ref()
    }

    pub fn swap_rules(&self) -> impl Iterator<Item = &SwapRule> {
        self.swaps.iter().flatten()
    }

    pub fn monomial_rules(&self) -> &[MonomialRule] {
        &self.monomials
    }

    fn n(&self) -> usize {
        self.table.len()
    }

    pub fn swap(&self, high: u8, low: u8) -> Option<&SwapRule> {
        self.swaps[high as usize * self.n() + low as usize].as_ref()
    }

    fn rc(&self, c: &Laurent) -> Laurent {
        match &self.quotient {
            Some(q) => q.reduce(c),
            None => c.clone(),
        }
    }

    pub fn weight(&self, w: &[u8]) -> u32 {
        w.iter().map(|&g| self.weights[g as usize]).sum()
    }

    /// Weighted degree, then lexicographic by generator index.
    pub fn cmp_words(&self, a: &[u8], b: &[u8]) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }

    /// The order-maximal word of `e` with its coefficient.
    pub fn leading_term(&self, e: &Element) -> Option<(Word, Laurent)> {
        e.terms()
            .max_by(|a, b| self.cmp_words(a.0, b.0))
            .map(|(w, c)| (w.clone(), c.clone()))
    }

    fn check_decreasing(&self, lhs: &[u8], rhs: &Element) -> Result<()> {
        for (w, _) in rhs.terms() {
            if self.cmp_words(w, lhs) != Ordering::Less {
                return Err(Error::NotDecreasing {
                    lhs: self.table.word_to_string(lhs),
                    offending: self.table.word_to_string(w),
                });
            }
        }
        Ok(())
    }

    pub fn add_swap(&mut self, rule: SwapRule) -> Result<()> {
        assert!(
            rule.high > rule.low,
            "swap rules rewrite hi·lo with hi > lo"
        );
        if !rule.lead.is_unit() && self.quotient.is_none() {
            return Err(Error::NotUnit(rule.lead.to_string()));
        }
        self.check_decreasing(&[rule.high, rule.low], &rule.tail)?;
        let idx = rule.high as usize * self.n() + rule.low as usize;
        self.swaps[idx] = Some(rule);
        self.cache.clear();
        Ok(())
    }

    /// `hi·lo → lo·hi`.
    pub fn add_commuting(&mut self, high: u8, low: u8) -> Result<()> {
        self.add_swap(SwapRule {
            high,
            low,
            lead: Laurent::one(),
            tail: Element::zero(&self.table),
        })
    }

    /// Orients a relation whose order-maximal word is an out-of-order pair
    /// and installs the resulting swap rule.
    pub fn add_swap_relation(&mut self, rel: &Element) -> Result<()> {
        let (w, c) = self.leading_term(rel).ok_or(Error::ZeroRelation)?;
        if w.len() != 2 || w[0] <= w[1] {
            return Err(Error::Precondition(format!(
                "leading word `{}` is not an out-of-order pair",
                self.table.word_to_string(&w)
            )));
        }
        let inv = c.unit_inverse().ok_or_else(|| Error::NonUnitLeading {
            word: self.table.word_to_string(&w),
            coeff: c.to_string(),
        })?;
        let lead_word = Word::from_slice(&w);
        let swapped = Word::from_slice(&[w[1], w[0]]);
        let mut rest = rel.clone();
        rest.add_term(lead_word, &-&c);
        let rhs = (-&rest).scale(&inv);
        let lead = rhs.coeff(&swapped);
        let mut tail = rhs;
        tail.add_term(swapped, &-&lead);
        self.add_swap(SwapRule {
            high: w[0],
            low: w[1],
            lead,
            tail,
        })
    }

    pub fn has_complete_swaps(&self) -> bool {
        (0..self.n() as u8).all(|h| (0..h).all(|l| self.swap(h, l).is_some()))
    }

    pub fn add_monomial(&mut self, rule: MonomialRule) -> Result<()> {
        assert_eq!(rule.trigger.len(), self.n());
        for h in 0..self.n() as u8 {
            for l in 0..h {
                if self.swap(h, l).is_none() {
                    return Err(Error::IncompleteSwaps(format!(
                        "{} {}",
                        self.table.name(h),
                        self.table.name(l)
                    )));
                }
            }
        }
        let lhs = sorted_word(&rule.trigger);
        self.check_decreasing(&lhs, &rule.replacement)?;
        self.monomials.push(rule);
        self.cache.clear();
        Ok(())
    }

    /// Same rules with every coefficient pushed through `rule`. Quotient
    /// specializations also reduce every coefficient produced later.
    pub fn specialized(&self, rule: &Specialization) -> RuleSystem {
        let map = |e: &Element| e.map_coeffs(|c| rule.apply(c));
        let mut out = RuleSystem::new(&self.table, self.weights.clone());
        if let Specialization::Quotient(q) = rule {
            out.quotient = Some(q.clone());
        }
        for r in self.swap_rules() {
            let idx = r.high as usize * self.n() + r.low as usize;
            out.swaps[idx] = Some(SwapRule {
                high: r.high,
                low: r.low,
                lead: rule.apply(&r.lead),
                tail: map(&r.tail),
            });
        }
        out.monomials = self
            .monomials
            .iter()
            .map(|m| MonomialRule {
                trigger: m.trigger.clone(),
                replacement: map(&m.replacement),
            })
            .collect();
        out
    }

    /// Reduces coefficients into the system's coefficient ring.
    pub fn reduce_coeffs(&self, e: &Element) -> Element {
        match &self.quotient {
            Some(q) => e.map_coeffs(|c| q.reduce(c)),
            None => e.clone(),
        }
    }

    pub fn exponents(&self, w: &[u8]) -> Vec<u32> {
        let mut e = vec![0u32; self.n()];
        for &g in w {
            e[g as usize] += 1;
        }
        e
    }

    fn is_sorted(&self, w: &[u8]) -> bool {
        w.windows(2)
            .all(|p| p[0] <= p[1] || self.swap(p[0], p[1]).is_none())
    }

    fn firing_rule(&self, w: &[u8], strategy: Strategy) -> Option<usize> {
        if self.monomials.is_empty() {
            return None;
        }
        let e = self.exponents(w);
        let fires = |m: &MonomialRule| m.trigger.iter().zip(&e).all(|(t, x)| t <= x);
        match strategy {
            Strategy::Leftmost => self.monomials.iter().position(fires),
            Strategy::Rightmost => self.monomials.iter().rposition(fires),
        }
    }

    /// True iff `w` is sorted and no monomial trigger divides it.
    pub fn is_normal_word(&self, w: &[u8]) -> bool {
        self.is_sorted(w) && self.firing_rule(w, Strategy::Leftmost).is_none()
    }

    /// Basis predicate on exponent vectors: not divisible by any trigger.
    pub fn is_basis_exponent(&self, e: &[u32]) -> bool {
        !self
            .monomials
            .iter()
            .any(|m| m.trigger.iter().zip(e).all(|(t, x)| t <= x))
    }

    /// Sorted normal words of weight `≤ max_weight` and length `≤ max_len`.
    pub fn basis_words(&self, max_weight: u32, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.n()];
        self.enum_exps(0, max_weight, max_len, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_words(a, b));
        out
    }

    fn enum_exps(&self, i: usize, wleft: u32, lleft: usize, exps: &mut [u32], out: &mut Vec<Word>) {
        if i == self.n() {
            if self.is_basis_exponent(exps) {
                out.push(sorted_word(exps));
            }
            return;
        }
        let w = self.weights[i];
        let mut k = 0u32;
        loop {
            exps[i] = k;
            self.enum_exps(i + 1, wleft - k * w, lleft - k as usize, exps, out);
            if (k as usize) >= lleft || (k + 1) * w > wleft {
                break;
            }
            k += 1;
        }
        exps[i] = 0;
    }

    // -- memoized normal forms ------------------------------------------

    /// Normal form of the product `w·g` for a normal word `w`. With
    /// `full = false` only swap rules are used.
    fn mul_word_gen(&self, w: &[u8], g: u8, full: bool) -> Arc<Terms> {
        let key: CacheKey = (Word::from_slice(w), g, full);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let _guard = DepthGuard::enter();
        let res: Terms = match w.last() {
            Some(&l) if l > g && self.swap(l, g).is_some() => {
                let rule = self.swap(l, g).unwrap();
                let prefix = &w[..w.len() - 1];
                let mut acc = Acc::new();
                for (u, c) in self.mul_word_gen(prefix, g, full).iter() {
                    let cl = &rule.lead * c;
                    for (u2, c2) in self.mul_word_gen(u, l, full).iter() {
                        acc.add(u2, &cl * c2);
                    }
                }
                for (tw, tc) in rule.tail.terms() {
                    for (u, c) in self.mul_word_word(prefix, tw, full) {
                        acc.add(&u, tc * &c);
                    }
                }
                acc.finish(self)
            }
            _ => {
                let mut nw = Word::from_slice(w);
                nw.push(g);
                if full {
                    self.reduce_sorted(&nw)
                } else {
                    vec![(nw, Laurent::one())]
                }
            }
        };
        let res = Arc::new(res);
        self.cache.insert(key, res.clone());
        res
    }

    fn mul_word_word(&self, u: &[u8], v: &[u8], full: bool) -> Terms {
        let mut cur: Terms = vec![(Word::from_slice(u), Laurent::one())];
        for &g in v {
            let mut acc = Acc::new();
            for (w, c) in &cur {
                for (w2, c2) in self.mul_word_gen(w, g, full).iter() {
                    acc.add(w2, c * c2);
                }
            }
            cur = acc.finish(self);
        }
        cur
    }

    fn placement(&self, w: &[u8], rule: &MonomialRule, strategy: Strategy) -> (Word, Word) {
        let e = self.exponents(w);
        let rest: Vec<u32> = e.iter().zip(&rule.trigger).map(|(x, t)| x - t).collect();
        let p = sorted_word(&rest);
        let t = sorted_word(&rule.trigger);
        match strategy {
            Strategy::Leftmost => (t, p),
            Strategy::Rightmost => (p, t),
        }
    }

    /// Normal form of a sorted word (full mode).
    fn reduce_sorted(&self, w: &[u8]) -> Terms {
        let Some(ri) = self.firing_rule(w, Strategy::Leftmost) else {
            return vec![(Word::from_slice(w), Laurent::one())];
        };
        let _guard = DepthGuard::enter();
        let rule = &self.monomials[ri];
        let (p, t) = self.placement(w, rule, Strategy::Rightmost);
        let sorted = self.mul_word_word(&p, &t, false);
        let c = sorted
            .iter()
            .find(|(x, _)| x.as_slice() == w)
            .map(|(_, c)| c.clone())
            .expect("sorting the placement reproduces the word");
        let cinv = self.rc(&c.unit_inverse().expect("product of swap leads is a unit"));
        let mut acc = Acc::new();
        // c⁻¹·NF(P)·R
        for (pw, pc) in self.mul_word_word(&[], &p, true) {
            for (rw, rcoef) in rule.replacement.terms() {
                let k = &cinv * &(&pc * rcoef);
                for (x, xc) in self.mul_word_word(&pw, rw, true) {
                    acc.add(&x, &k * &xc);
                }
            }
        }
        // −c⁻¹·NF(L)
        for (lw, lc) in &sorted {
            if lw.as_slice() == w {
                continue;
            }
            let k = -(&cinv * lc);
            for (x, xc) in self.reduce_sorted(lw) {
                acc.add(&x, &k * &xc);
            }
        }
        acc.finish(self)
    }

    /// The normal form of `e`.
    pub fn normal_form(&self, e: &Element) -> Element {
        assert!(
            Arc::ptr_eq(e.table(), &self.table) || **e.table() == *self.table,
            "element and rule system use different generator tables"
        );
        let mut acc = Acc::new();
        for (w, c) in e.terms() {
            let c = self.rc(c);
            for (x, xc) in self.mul_word_word(&[], w, true) {
                acc.add(&x, &c * &xc);
            }
        }
        Element::from_terms(&self.table, acc.finish(self))
    }

    /// `NF(a·b)`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let na = self.normal_form(a);
        let mut acc = Acc::new();
        for (wa, ca) in na.terms() {
            for (wb, cb) in b.terms() {
                let k = ca * &self.rc(cb);
                for (x, xc) in self.mul_word_word(wa, wb, true) {
                    acc.add(&x, &k * &xc);
                }
            }
        }
        Element::from_terms(&self.table, acc.finish(self))
    }

    /// `NF(u·ab − u⁻¹·ba)`.
    pub fn commutator(&self, a: &Element, b: &Element, u: &Laurent) -> Result<Element> {
        let inv = u
            .unit_inverse()
            .ok_or_else(|| Error::NotUnit(u.to_string()))?;
        let ab = self.multiply(a, b).scale(u);
        let ba = self.multiply(b, a).scale(&inv);
        Ok(self.reduce_coeffs(&(ab - ba)))
    }

    pub fn power(&self, a: &Element, n: u32) -> Element {
        let mut r = self.normal_form(&Element::one(&self.table));
        for _ in 0..n {
            r = self.multiply(&r, a);
        }
        r
    }

    // -- step-by-step reduction ------------------------------------------

    /// Reduces `e` one redex at a time, always rewriting the order-maximal
    /// reducible word, with redexes chosen by `strategy`.
    pub fn reduce_with(&self, e: &Element, strategy: Strategy) -> Element {
        self.reduce_counted(e, strategy).0
    }

    /// As [`reduce_with`](Self::reduce_with), also returning the number of
    /// rewrite steps taken.
    pub fn reduce_counted(&self, e: &Element, strategy: Strategy) -> (Element, usize) {
        let mut steps = 0;
        let out = self.reduce_generic(e, strategy, true, &mut steps);
        (out, steps)
    }

    fn reduce_generic(
        &self,
        e: &Element,
        strategy: Strategy,
        full: bool,
        steps: &mut usize,
    ) -> Element {
        let _guard = DepthGuard::enter();
        let mut work: BTreeMap<(u32, Word), Laurent> = BTreeMap::new();
        let push = |work: &mut BTreeMap<(u32, Word), Laurent>, w: Word, c: Laurent| {
            let c = self.rc(&c);
            if c.is_zero() {
                return;
            }
            let key = (self.weight(&w), w);
            match work.get_mut(&key) {
                Some(v) => {
                    *v += &c;
                    if v.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, c);
                }
            }
        };
        for (w, c) in e.terms() {
            push(&mut work, w.clone(), c.clone());
        }
        let mut result = Element::zero(&self.table);
        while let Some(((_, w), c)) = work.pop_last() {
            let redex = {
                let mut it = w
                    .windows(2)
                    .enumerate()
                    .filter(|(_, p)| p[0] > p[1] && self.swap(p[0], p[1]).is_some())
                    .map(|(i, _)| i);
                match strategy {
                    Strategy::Leftmost => it.next(),
                    Strategy::Rightmost => it.next_back(),
                }
            };
            if let Some(i) = redex {
                *steps += 1;
                assert!(
                    *steps <= STEP_LIMIT,
                    "reduction exceeded {STEP_LIMIT} steps"
                );
                let rule = self.swap(w[i], w[i + 1]).unwrap();
                let mut sw = Word::from_slice(&w[..i]);
                sw.push(rule.low);
                sw.push(rule.high);
                sw.extend_from_slice(&w[i + 2..]);
                push(&mut work, sw, &c * &rule.lead);
                for (tw, tc) in rule.tail.terms() {
                    let mut nw = Word::from_slice(&w[..i]);
                    nw.extend_from_slice(tw);
                    nw.extend_from_slice(&w[i + 2..]);
                    push(&mut work, nw, &c * tc);
                }
                continue;
            }
            let fired = if full {
                self.firing_rule(&w, strategy)
            } else {
                None
            };
            if let Some(ri) = fired {
                *steps += 1;
                let rule = &self.monomials[ri];
                let (left, right) = self.placement(&w, rule, strategy);
                let mut pw = left.clone();
                pw.extend_from_slice(&right);
                let sorted = self.reduce_generic(
                    &Element::monomial(&self.table, pw, Laurent::one()),
                    strategy,
                    false,
                    steps,
                );
                let k = sorted.coeff(&w);
                let kinv = self.rc(&k.unit_inverse().expect("product of swap leads is a unit"));
                let cc = &c * &kinv;
                for (rw, rcoef) in rule.replacement.terms() {
                    let mut nw = Word::new();
                    match strategy {
                        Strategy::Leftmost => {
                            nw.extend_from_slice(rw);
                            nw.extend_from_slice(&right);
                        }
                        Strategy::Rightmost => {
                            nw.extend_from_slice(&left);
                            nw.extend_from_slice(rw);
                        }
                    }
                    push(&mut work, nw, &cc * rcoef);
                }
                for (lw, lc) in sorted.terms() {
                    if *lw != w {
                        push(&mut work, lw.clone(), -(&cc * lc));
                    }
                }
                continue;
            }
            result.add_term(w, &c);
        }
        result
    }

    /// Validates that `rel` reduces to zero.
    pub fn reduces_to_zero(&self, rel: &Element) -> bool {
        self.normal_form(rel).is_zero()
    }
}

/// Sorted word with the given exponent vector.
pub fn sorted_word(e: &[u32]) -> Word {
    let mut w = Word::new();
    for (g, &k) in e.iter().enumerate() {
        for _ in 0..k {
            w.push(g as u8);
        }
    }
    w
}

/// Orients `rel` into a monomial rule for `sys`: `rel` is first normalized,
/// its order-maximal word must carry a unit coefficient, and the rule sends
/// that word's exponent vector to `−(rest)/lead`.
pub fn orient_relation(rel: &Element, sys: &RuleSystem) -> Result<MonomialRule> {
    let nf = sys.normal_form(rel);
    let (w, c) = sys.leading_term(&nf).ok_or(Error::ZeroRelation)?;
    let inv = c.unit_inverse().ok_or_else(|| Error::NonUnitLeading {
        word: sys.table().word_to_string(&w),
        coeff: c.to_string(),
    })?;
    let mut rest = nf;
    rest.add_term(w.clone(), &-&c);
    Ok(MonomialRule {
        trigger: sys.exponents(&w),
        replacement: (-&rest).scale(&inv),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceFailure {
    pub word: String,
    pub leftmost: String,
    pub rightmost: String,
    pub memoized: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub overlap_words: usize,
    pub failures: Vec<ConfluenceFailure>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every word of weight `≤ max_weight` (and length `≤ max_weight`, which
/// bounds weight-zero letters) plus the overlap words of the rule
/// left-hand sides is reduced by both strategies and by the memoized
/// normal form; any disagreement is reported.
pub fn check_confluence(sys: &RuleSystem, max_weight: u32) -> ConfluenceReport {
    let n = sys.table().len() as u8;
    let mut words: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: Vec<Word> = vec![Word::new()];
    for _ in 0..max_weight {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..n {
                let mut nw = w.clone();
                nw.push(g);
                if sys.weight(&nw) <= max_weight {
                    next.push(nw);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut overlaps: BTreeSet<Word> = BTreeSet::new();
    for r1 in sys.swap_rules() {
        for r2 in sys.swap_rules() {
            if r1.low == r2.high {
                overlaps.insert(Word::from_slice(&[r1.high, r1.low, r2.low]));
            }
        }
    }
    for m in sys.monomial_rules() {
        let t = sorted_word(&m.trigger);
        for g in 0..n {
            let mut left = Word::from_slice(&[g]);
            left.extend_from_slice(&t);
            let mut right = t.clone();
            right.push(g);
            overlaps.insert(left);
            overlaps.insert(right);
        }
    }
    let overlap_words = overlaps.len();
    words.extend(overlaps);
    let words: Vec<Word> = words.into_iter().collect();
    let table = sys.table().clone();
    let mut failures: Vec<ConfluenceFailure> = words
        .par_iter()
        .filter_map(|w| {
            let e = Element::monomial(&table, w.clone(), Laurent::one());
            let l = sys.reduce_with(&e, Strategy::Leftmost);
            let r = sys.reduce_with(&e, Strategy::Rightmost);
            let m = sys.normal_form(&e);
            (l != r || l != m).then(|| ConfluenceFailure {
                word: table.word_to_string(w),
                leftmost: l.to_string(),
                rightmost: r.to_string(),
                memoized: m.to_string(),
            })
        })
        .collect();
    failures.sort_by(|a, b| a.word.cmp(&b.word));
    ConfluenceReport {
        words_checked: words.len(),
        overlap_words,
        failures,
    }
}
