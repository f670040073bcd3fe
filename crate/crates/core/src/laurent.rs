//! Exact arithmetic in `Z[A, A^-1]` and in its quotients `Z[A]/(m(A))`.
//!
//! Elements are stored densely: a lowest exponent plus a coefficient vector
//! whose first and last entries are nonzero. The empty vector is zero, so
//! structural equality is ring equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element of `Z[A, A^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The ring variable `A`.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `A^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// `c * A^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::from_dense(k, vec![c.into()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `δ = A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, 1), (-2, -1)])
    }

    /// Builds an element from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn from_dense(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        low += lead_zeros as i64;
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let idx = k - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending in the exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// The integer value if this is a constant.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.low == 0 && self.coeffs.len() == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Multiplication by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Units of `Z[A, A^-1]` are exactly `±A^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    /// The inverse of a unit, `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| Self::monomial(self.coeffs[0].clone(), -self.low))
    }

    /// Exact quotient `self / divisor` in `Z[A, A^-1]`, if it exists.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Some(self * &inv);
        }
        // Both dense vectors have nonzero constant terms after factoring out
        // the lowest power of A, so polynomial long division decides it.
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        let dl = d.len();
        if rem.len() < dl {
            return None;
        }
        let lead = d.last().unwrap();
        let qlen = rem.len() - dl + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &q * dj;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - divisor.low, quot))
    }

    /// The image under the ring endomorphism `A ↦ A^2`.
    pub fn substitute_square(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (2 * e, c.clone())))
    }

    /// Evaluation at an integer value of `A`, if the value is a unit or the
    /// element has no negative exponents.
    pub fn eval_integer(&self, a: &BigInt) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.low < 0 && !a.abs().is_one() {
            return None;
        }
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                num_traits::pow(a.clone(), e as usize)
            } else {
                // a is ±1 here
                num_traits::pow(a.clone(), (-e) as usize)
            };
            acc += c * p;
        }
        Some(acc)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `A^2 - A^-2`, `-2*A + 1`, `0`. Terms descend in the exponent.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag.is_one(), e) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "A")?,
                (true, _) => write!(f, "A^{e}")?,
                (false, 1) => write!(f, "{mag}*A")?,
                (false, _) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        Laurent::from_dense(low, coeffs)
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::from_dense(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<Laurent> for &Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Laurent {
    fn sum<I: Iterator<Item = Laurent>>(iter: I) -> Self {
        iter.fold(Laurent::zero(), |acc, x| acc + x)
    }
}

// ---------------------------------------------------------------------------
// quotients

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("modulus must have degree at least 1")]
    Constant,
    #[error("modulus must have leading coefficient ±1, got {0}")]
    NonUnitLeading(BigInt),
    #[error("A is not invertible modulo the given polynomial (constant term {0})")]
    ANotInvertible(BigInt),
}

/// The quotient ring `Z[A]/(m(A))` where `A` is a unit.
///
/// Representatives are polynomials of degree `< deg m` with nonnegative
/// exponents; negative powers are first rewritten through the inverse of `A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuotientSpec {
    /// Monic modulus, coefficients in ascending degree.
    modulus: Vec<BigInt>,
    /// `A^-1` as a reduced polynomial.
    inv_a: Vec<BigInt>,
}

impl QuotientSpec {
    /// `modulus` is given as a Laurent polynomial with nonnegative exponents.
    pub fn new(modulus: &Laurent) -> Result<Self, QuotientError> {
        let shift = modulus.low_exp().unwrap_or(0).min(0);
        let m = modulus.shift(-shift);
        let deg = m.high_exp().unwrap_or(0);
        if deg < 1 {
            return Err(QuotientError::Constant);
        }
        let mut coeffs: Vec<BigInt> = (0..=deg).map(|k| m.coeff(k)).collect();
        let lead = coeffs[deg as usize].clone();
        if !lead.abs().is_one() {
            return Err(QuotientError::NonUnitLeading(lead));
        }
        if lead.is_negative() {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        let m0 = coeffs[0].clone();
        if !m0.abs().is_one() {
            return Err(QuotientError::ANotInvertible(m0));
        }
        // m = A*h + m0  =>  A^-1 = -m0^-1 * h = -m0 * h
        let inv_a: Vec<BigInt> = coeffs[1..].iter().map(|c| -(c * &m0)).collect();
        let mut spec = Self {
            modulus: coeffs,
            inv_a: Vec::new(),
        };
        spec.inv_a = spec.poly_rem(inv_a);
        Ok(spec)
    }

    /// `A + 1`: evaluation at `A = -1`.
    pub fn a_plus_one() -> Self {
        Self::new(&Laurent::from_terms([(1, 1), (0, 1)])).unwrap()
    }

    /// `A^2 - 1`.
    pub fn a2_minus_one() -> Self {
        Self::new(&Laurent::from_terms([(2, 1), (0, -1)])).unwrap()
    }

    /// `A^2 + 1`, so that `A^4 = 1`.
    pub fn a2_plus_one() -> Self {
        Self::new(&Laurent::from_terms([(2, 1), (0, 1)])).unwrap()
    }

    /// `A^4 - 1`.
    pub fn a4_minus_one() -> Self {
        Self::new(&Laurent::from_terms([(4, 1), (0, -1)])).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> Laurent {
        Laurent::from_dense(0, self.modulus.clone())
    }

    fn poly_rem(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = p.len() - d;
            for (j, mj) in self.modulus[..d].iter().enumerate() {
                p[base + j] -= &top * mj;
            }
        }
        p
    }

    fn poly_mulmod(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.poly_rem(out)
    }

    /// Canonical representative of `s` in the quotient.
    pub fn reduce(&self, s: &Laurent) -> Laurent {
        if s.is_zero() {
            return Laurent::zero();
        }
        if s.low >= 0 {
            let mut p = vec![BigInt::zero(); s.low as usize];
            p.extend(s.coeffs.iter().cloned());
            return Laurent::from_dense(0, self.poly_rem(p));
        }
        let p = self.poly_rem(s.coeffs.clone());
        let mut n = (-s.low) as u64;
        let mut base = self.inv_a.clone();
        let mut acc = vec![BigInt::one()];
        while n > 0 {
            if n & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.poly_mulmod(&base, &base);
            }
        }
        Laurent::from_dense(0, self.poly_mulmod(&p, &acc))
    }
}

impl fmt::Debug for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientSpec({})", self.modulus())
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.modulus())
    }
}

/// A ring homomorphism out of `Z[A, A^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Specialization {
    /// Reduction modulo a polynomial in `A`. `A + 1` is evaluation at `-1`.
    Quotient(QuotientSpec),
    /// `A ↦ A^2`, landing back in `Z[A, A^-1]`.
    SquareA,
}

impl Specialization {
    pub fn eval_minus_one() -> Self {
        Self::Quotient(QuotientSpec::a_plus_one())
    }

    pub fn apply(&self, s: &Laurent) -> Laurent {
        match self {
            Self::Quotient(q) => q.reduce(s),
            Self::SquareA => s.substitute_square(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Quotient(q) if *q == QuotientSpec::a_plus_one() => "A=-1".to_string(),
            Self::Quotient(q) => format!("mod ({q})"),
            Self::SquareA => "A->A^2".to_string(),
        }
    }
}

/// Image of `s` under `rule`.
pub fn specialize_scalar(s: &Laurent, rule: &Specialization) -> Laurent {
    rule.apply(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(k: i64) -> Laurent {
        Laurent::a_pow(k)
    }

    #[test]
    fn inverse_pair() {
        assert!((a(1) * a(-1)).is_one());
    }

    #[test]
    fn delta_squared() {
        let d = Laurent::delta();
        assert_eq!(&d * &d, Laurent::from_terms([(4, 1), (0, -2), (-4, 1)]));
    }

    #[test]
    fn additive_identity() {
        assert_eq!(Laurent::zero() + Laurent::delta(), Laurent::delta());
    }

    #[test]
    fn canonical_zero() {
        let x = Laurent::from_terms([(3, 2), (3, -2)]);
        assert!(x.is_zero());
        assert_eq!(x, Laurent::zero());
        assert_eq!(x.low_exp(), None);
    }

    #[test]
    fn units() {
        assert!(a(3).is_unit());
        assert!(Laurent::constant(-1).is_unit());
        assert!(!Laurent::delta().is_unit());
        assert!(!Laurent::constant(2).is_unit());
        assert!(!Laurent::zero().is_unit());
    }

    #[test]
    fn delta_is_not_unit_by_division() {
        // δ has two terms, so no ±A^k multiple is 1; exact division of 1 by δ fails.
        assert_eq!(Laurent::one().div_exact(&Laurent::delta()), None);
        for k in -6..=6 {
            for s in [1, -1] {
                assert!(!(Laurent::monomial(s, k) * Laurent::delta()).is_one());
            }
        }
    }

    #[test]
    fn exact_division() {
        let d = Laurent::delta();
        let s = Laurent::from_terms([(1, 1), (-1, 1)]);
        let prod = &d * &s;
        assert_eq!(prod.div_exact(&d), Some(s.clone()));
        assert_eq!(prod.div_exact(&s), Some(d.clone()));
        assert_eq!(Laurent::constant(3).div_exact(&Laurent::constant(2)), None);
    }

    #[test]
    fn specializations() {
        let d = Laurent::delta();
        assert!(specialize_scalar(&d, &Specialization::eval_minus_one()).is_zero());
        assert_eq!(
            specialize_scalar(&d, &Specialization::SquareA),
            Laurent::from_terms([(4, 1), (-4, -1)])
        );
        let s = Laurent::from_terms([(1, 1), (-1, 1)]);
        let q = Specialization::Quotient(QuotientSpec::a2_plus_one());
        assert!(specialize_scalar(&s, &q).is_zero());
    }

    #[test]
    fn eval_minus_one_is_integer() {
        let x = Laurent::from_terms([(3, 2), (-5, 7), (0, 1)]);
        let r = QuotientSpec::a_plus_one().reduce(&x);
        assert_eq!(r.to_integer(), Some(BigInt::from(-2 - 7 + 1)));
        assert_eq!(x.eval_integer(&BigInt::from(-1)), Some(BigInt::from(-8)));
    }

    #[test]
    fn quotient_representatives_are_canonical() {
        let q = QuotientSpec::a4_minus_one();
        assert_eq!(q.reduce(&a(-1)), a(3));
        assert_eq!(q.reduce(&a(9)), a(1));
        let q2 = QuotientSpec::a2_plus_one();
        assert_eq!(q2.reduce(&a(-1)), -a(1));
        assert_eq!(q2.reduce(&a(2)), Laurent::constant(-1));
    }

    #[test]
    fn bad_moduli() {
        assert!(QuotientSpec::new(&Laurent::constant(3)).is_err());
        assert!(QuotientSpec::new(&Laurent::from_terms([(2, 2), (0, 1)])).is_err());
        assert!(QuotientSpec::new(&Laurent::from_terms([(2, 1), (0, 2)])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Laurent::delta().to_string(), "A^2 - A^-2");
        assert_eq!(
            Laurent::from_terms([(1, -2), (0, 1)]).to_string(),
            "-2*A + 1"
        );
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(Laurent::a().to_string(), "A");
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((-6i64..=6, -5i64..=5), 0..5).prop_map(Laurent::from_terms)
    }

    fn arb_spec() -> impl Strategy<Value = Specialization> {
        prop_oneof![
            Just(Specialization::eval_minus_one()),
            Just(Specialization::SquareA),
            Just(Specialization::Quotient(QuotientSpec::a2_minus_one())),
            Just(Specialization::Quotient(QuotientSpec::a2_plus_one())),
            Just(Specialization::Quotient(QuotientSpec::a4_minus_one())),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_laurent(), y in arb_laurent(), z in arb_laurent()) {
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn specialization_is_a_homomorphism(x in arb_laurent(), y in arb_laurent(), rule in arb_spec()) {
            let f = |s: &Laurent| rule.apply(s);
            let norm = |s: Laurent| match &rule {
                Specialization::Quotient(q) => q.reduce(&s),
                Specialization::SquareA => s,
            };
            prop_assert_eq!(f(&(&x + &y)), norm(f(&x) + f(&y)));
            prop_assert_eq!(f(&(&x * &y)), norm(f(&x) * f(&y)));
        }

        #[test]
        fn unit_inverse_validates(k in -20i64..20, neg in any::<bool>()) {
            let u = Laurent::monomial(if neg { -1 } else { 1 }, k);
            let inv = u.unit_inverse().unwrap();
            prop_assert!((&u * &inv).is_one());
        }

        #[test]
        fn division_roundtrip(x in arb_laurent(), y in arb_laurent()) {
            prop_assume!(!y.is_zero());
            let p = &x * &y;
            prop_assert_eq!(p.div_exact(&y), Some(x));
        }
    }
}
