//! Text and JSON forms of elements, scalars and links.
//!
//! Grammar: sums and differences of products; juxtaposition or `*` is a
//! product; `^` takes an integer exponent (negative only for units). Atoms
//! are integers, `A`, `del` (for `A² − A⁻²`), generator names and
//! parenthesized expressions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ncalg::{Element, GeneratorTable, Word};
use crate::torus::{LatticeLink, LinkExpansion, LinkKey};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = s[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    table: Option<&'a Arc<GeneratorTable>>,
}

/// Intermediate value: scalars stay scalars until they meet a generator.
#[derive(Clone)]
enum Val {
    S(Laurent),
    E(Element),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                neg = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = negate(acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(acc, t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(acc, negate(t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = mul(acc, f);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    let f = self.factor()?;
                    acc = mul(acc, f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.bump() {
            Some(Tok::Int(n)) => n
                .to_i64()
                .filter(|n| *n <= 1 << 20)
                .ok_or_else(|| err(pos, "exponent too large"))?,
            _ => return Err(err(pos, "expected integer exponent")),
        };
        let n = if neg { -n } else { n };
        power(base, n).ok_or_else(|| err(pos, "negative power of a non-unit"))
    }

    fn atom(&mut self) -> Result<Val> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Val::S(Laurent::constant(n))),
            Some(Tok::Ident(name)) => self.ident(&name, pos),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Some(_) => Err(err(pos, "expected a term")),
            None => Err(err(pos, "unexpected end of input")),
        }
    }

    fn ident(&self, name: &str, pos: usize) -> Result<Val> {
        match name {
            "A" => Ok(Val::S(Laurent::a())),
            "del" => Ok(Val::S(Laurent::delta())),
            _ => {
                let t = self
                    .table
                    .ok_or_else(|| err(pos, format!("generator '{name}' in a scalar")))?;
                let g = t
                    .index(name)
                    .ok_or_else(|| err(pos, format!("unknown generator '{name}'")))?;
                Ok(Val::E(Element::generator(t, g)))
            }
        }
    }
}

fn negate(v: Val) -> Val {
    match v {
        Val::S(s) => Val::S(-s),
        Val::E(e) => Val::E(-e),
    }
}

fn lift(v: Val, t: &Arc<GeneratorTable>) -> Element {
    match v {
        Val::S(s) => Element::scalar(t, s),
        Val::E(e) => e,
    }
}

fn add(a: Val, b: Val) -> Val {
    match (a, b) {
        (Val::S(x), Val::S(y)) => Val::S(&x + &y),
        (Val::E(x), y) => {
            let t = x.table().clone();
            Val::E(x + lift(y, &t))
        }
        (x, Val::E(y)) => {
            let t = y.table().clone();
            Val::E(lift(x, &t) + y)
        }
    }
}

fn mul(a: Val, b: Val) -> Val {
    match (a, b) {
        (Val::S(x), Val::S(y)) => Val::S(&x * &y),
        (Val::S(x), Val::E(y)) => Val::E(y.scale(&x)),
        (Val::E(x), Val::S(y)) => Val::E(x.scale(&y)),
        (Val::E(x), Val::E(y)) => Val::E(&x * &y),
    }
}

fn power(v: Val, n: i64) -> Option<Val> {
    match v {
        Val::S(s) if n < 0 => s.unit_inverse().map(|u| Val::S(u.pow((-n) as u32))),
        Val::S(s) => Some(Val::S(s.pow(n as u32))),
        Val::E(_) if n < 0 => None,
        Val::E(e) => Some(Val::E(e.pow(n as u32))),
    }
}

fn run(s: &str, table: Option<&Arc<GeneratorTable>>) -> Result<Val> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
        table,
    };
    if p.peek().is_none() {
        return Err(err(0, "empty expression"));
    }
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected token"));
    }
    Ok(v)
}

/// Parses an element of the free algebra on `table` (not normalized).
pub fn parse_element(s: &str, table: &Arc<GeneratorTable>) -> Result<Element> {
    Ok(lift(run(s, Some(table))?, table))
}

/// Parses a scalar in `A`, `del` and integers.
pub fn parse_scalar(s: &str) -> Result<Laurent> {
    match run(s, None)? {
        Val::S(x) => Ok(x),
        Val::E(_) => Err(err(0, "expected a scalar")),
    }
}

/// Parses an integer tuple such as `(p,q)` or `(a,b,c)`.
pub fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let toks = lex(s)?;
    let mut out = Vec::new();
    let mut i = 0;
    let at = |i: usize| toks.get(i).map_or(s.len(), |(p, _)| *p);
    if !matches!(toks.first(), Some((_, Tok::LParen))) {
        return Err(err(0, "expected '('"));
    }
    i += 1;
    loop {
        let neg = matches!(toks.get(i), Some((_, Tok::Minus)));
        if neg {
            i += 1;
        }
        let n = match toks.get(i) {
            Some((p, Tok::Int(n))) => n.to_i64().ok_or_else(|| err(*p, "integer too large"))?,
            _ => return Err(err(at(i), "expected integer")),
        };
        out.push(if neg { -n } else { n });
        i += 1;
        match toks.get(i) {
            Some((_, Tok::Comma)) => i += 1,
            Some((_, Tok::RParen)) => {
                i += 1;
                break;
            }
            _ => return Err(err(at(i), "expected ',' or ')'")),
        }
    }
    if i < toks.len() {
        return Err(err(at(i), "unexpected token"));
    }
    Ok(out)
}

pub fn parse_link(s: &str) -> Result<LatticeLink> {
    match parse_tuple(s)?.as_slice() {
        [p, q] => Ok(LatticeLink::new(*p, *q)),
        _ => Err(err(0, "expected a pair (p,q)")),
    }
}

/// `A*(1,1) + A^-1*(1,-1)`.
pub fn format_links(e: &LinkExpansion) -> String {
    if e.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in e.iter().rev().enumerate() {
        let (neg, mag) = if c.num_terms() == 1 {
            let (x, n) = c.terms().next().unwrap();
            (
                n < &BigInt::from(0),
                Laurent::monomial(n.magnitude().clone(), x),
            )
        } else {
            (false, c.clone())
        };
        let body = if mag.is_one() {
            k.to_string()
        } else if mag.num_terms() == 1 {
            format!("{mag}*{k}")
        } else {
            format!("({mag})*{k}")
        };
        out += match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out += &body;
    }
    out
}

fn coeff_json(c: &Laurent) -> Value {
    let mut m = Map::new();
    for (e, k) in c.terms() {
        let v = match k.to_i64() {
            Some(n) => json!(n),
            None => json!(k.to_string()),
        };
        m.insert(e.to_string(), v);
    }
    Value::Object(m)
}

fn coeff_from_json(v: &Value) -> Result<Laurent> {
    let m = v
        .as_object()
        .ok_or_else(|| err(0, "coeff must be an object"))?;
    let mut terms = Vec::new();
    for (e, k) in m {
        let e: i64 = e
            .parse()
            .map_err(|_| err(0, format!("bad exponent '{e}'")))?;
        let k: BigInt = match k {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| err(0, "coefficient must be an integer"))?,
            Value::String(s) => s.parse().map_err(|_| err(0, "bad coefficient"))?,
            _ => return Err(err(0, "coefficient must be an integer")),
        };
        terms.push((e, k));
    }
    Ok(Laurent::from_terms(terms))
}

/// `{"algebra": name, "terms": [{"word": [gen…], "coeff": {exp: int}}]}`.
/// Integers beyond `i64` are written as decimal strings.
pub fn element_to_json(algebra: &str, e: &Element) -> Value {
    let t = e.table();
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| {
            let word: Vec<&str> = w.iter().map(|g| t.name(*g)).collect();
            json!({"word": word, "coeff": coeff_json(c)})
        })
        .collect();
    json!({"algebra": algebra, "terms": terms})
}

pub fn element_from_json(v: &Value, table: &Arc<GeneratorTable>) -> Result<Element> {
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| err(0, "missing terms"))?;
    let mut out = BTreeMap::<Word, Laurent>::new();
    for term in terms {
        let word = term["word"]
            .as_array()
            .ok_or_else(|| err(0, "missing word"))?;
        let mut w = Word::new();
        for g in word {
            let name = g
                .as_str()
                .ok_or_else(|| err(0, "generator must be a string"))?;
            w.push(
                table
                    .index(name)
                    .ok_or_else(|| err(0, format!("unknown generator '{name}'")))?,
            );
        }
        let c = coeff_from_json(&term["coeff"])?;
        let slot = out.entry(w).or_insert_with(Laurent::zero);
        *slot = &*slot + &c;
    }
    Ok(Element::from_terms(table, out))
}

pub fn links_to_json(algebra: &str, e: &LinkExpansion) -> Value {
    let links: Vec<Value> = e
        .iter()
        .map(|(k, c)| {
            json!({"p": k.link.p, "q": k.link.q, "boundary": k.boundary, "coeff": coeff_json(c)})
        })
        .collect();
    json!({"algebra": algebra, "links": links})
}

pub fn links_from_json(v: &Value) -> Result<LinkExpansion> {
    let links = v["links"]
        .as_array()
        .ok_or_else(|| err(0, "missing links"))?;
    let mut out = LinkExpansion::new();
    for l in links {
        let int = |k: &str| l[k].as_i64().ok_or_else(|| err(0, format!("missing {k}")));
        let key = LinkKey {
            link: LatticeLink::new(int("p")?, int("q")?),
            boundary: int("boundary")? as u32,
        };
        out.insert(key, coeff_from_json(&l["coeff"])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations;
    use proptest::prelude::*;

    fn f11() -> crate::presentations::Presentation {
        presentations::f11()
    }

    #[test]
    fn products_and_powers() {
        let p = f11();
        let e = parse_element("x2 x1", p.table()).unwrap();
        assert_eq!(e, &p.var("x2") * &p.var("x1"));
        let e = parse_element("(x1 + x2)^2", p.table()).unwrap();
        let (x1, x2) = (p.var("x1"), p.var("x2"));
        assert_eq!(e, &(&x1 + &x2) * &(&x1 + &x2));
        let e = parse_element("A^-2*x3 - del", p.table()).unwrap();
        assert_eq!(
            e,
            p.var("x3").scale(&Laurent::a_pow(-2)) - Element::scalar(p.table(), Laurent::delta())
        );
    }

    #[test]
    fn positioned_errors() {
        let p = f11();
        let e = parse_element("x1 + y7", p.table()).unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 5, .. }), "{e}");
        let e = parse_element("x1 + (x2", p.table()).unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 8, .. }), "{e}");
        let e = parse_element("x1^-1", p.table()).unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 3, .. }), "{e}");
        assert!(parse_element("x1 $", p.table()).is_err());
        assert!(parse_element("", p.table()).is_err());
        assert!(parse_scalar("(A+1)^-1").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("A^2 - A^-2").unwrap(), Laurent::delta());
        assert_eq!(parse_scalar("(-A)^-3").unwrap(), -Laurent::a_pow(-3));
        assert!(parse_scalar("x1").is_err());
    }

    #[test]
    fn tuples() {
        assert_eq!(parse_link("(2, -3)").unwrap(), LatticeLink::new(2, -3));
        assert_eq!(parse_tuple("(0,2,2)").unwrap(), vec![0, 2, 2]);
        assert!(parse_link("(1,2,3)").is_err());
        assert!(parse_tuple("(1,").is_err());
    }

    #[test]
    fn link_format() {
        let mut e = LinkExpansion::new();
        e.insert(
            LinkKey {
                link: LatticeLink::new(1, 1),
                boundary: 0,
            },
            Laurent::a(),
        );
        e.insert(
            LinkKey {
                link: LatticeLink::new(1, -1),
                boundary: 0,
            },
            Laurent::a_pow(-1),
        );
        assert_eq!(format_links(&e), "A*(1,1) + A^-1*(1,-1)");
        let back = links_from_json(&links_to_json("f11", &e)).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn huge_coefficients_survive_json() {
        let p = f11();
        let big = Laurent::from_terms([(3, BigInt::from(10).pow(30))]);
        let e = p.var("x1").scale(&big);
        let v = element_to_json("f11", &e);
        assert_eq!(element_from_json(&v, p.table()).unwrap(), e);
    }

    fn arb_element() -> impl Strategy<Value = Element> {
        let term = (
            prop::collection::vec(0u8..3, 0..4),
            prop::collection::vec((-4i64..5, -3i64..4), 1..3),
        );
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let t = presentations::f11().table().clone();
            Element::from_terms(
                &t,
                ts.into_iter()
                    .map(|(w, c)| (Word::from_vec(w), Laurent::from_terms(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_element()) {
            let t = e.table().clone();
            prop_assert_eq!(parse_element(&e.to_string(), &t).unwrap(), e);
        }

        #[test]
        fn json_round_trip(e in arb_element()) {
            let t = e.table().clone();
            let v = element_to_json("f11", &e);
            prop_assert_eq!(element_from_json(&v, &t).unwrap(), e);
        }
    }
}
