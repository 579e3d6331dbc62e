//! Tropical and trivial semifields, and the group ring of a tropical semifield.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Monomial `Π u_j^{e_j}` in the tropical semifield on named generators.
///
/// The trivial semifield is the tropical semifield on no generators.
/// The order is lexicographic on exponent vectors (generators sorted by name),
/// which is compatible with multiplication.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TropicalElement {
    exps: BTreeMap<Arc<str>, i64>,
}

impl TropicalElement {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(name: &str) -> Self {
        Self::from_pairs([(name, 1)])
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, i64)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (name, e) in pairs {
            out.bump(Arc::from(name), e);
        }
        out
    }

    fn bump(&mut self, name: Arc<str>, e: i64) {
        if e == 0 {
            return;
        }
        let v = self.exps.entry(name.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.exps.remove(&name);
        }
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.exps.get(name).copied().unwrap_or(0)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.exps.iter().map(|(k, v)| (k.as_ref(), *v))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn inv(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        Self {
            exps: self.exps.iter().map(|(k, v)| (k.clone(), v * n)).collect(),
        }
    }

    /// Tropical sum: entrywise minimum of exponents.
    pub fn oplus(&self, other: &Self) -> Self {
        let mut out = Self::one();
        for name in self.exps.keys().chain(other.exps.keys()) {
            if out.exps.contains_key(name) {
                continue;
            }
            let m = self.exponent(name).min(other.exponent(name));
            out.bump(name.clone(), m);
        }
        out
    }

    /// `1 ⊕ self`.
    pub fn one_plus(&self) -> Self {
        Self::one().oplus(self)
    }
}

impl Ord for TropicalElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, va)), None) => return va.cmp(&&0),
                (None, Some((_, vb))) => return 0.cmp(*vb),
                (Some((ka, va)), Some((kb, vb))) => match ka.cmp(kb) {
                    Ordering::Less => return va.cmp(&&0),
                    Ordering::Greater => return 0.cmp(*vb),
                    Ordering::Equal => {
                        if va != vb {
                            return va.cmp(vb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for TropicalElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul<&TropicalElement> for &TropicalElement {
    type Output = TropicalElement;
    fn mul(self, rhs: &TropicalElement) -> TropicalElement {
        let mut out = self.clone();
        for (k, v) in &rhs.exps {
            out.bump(k.clone(), *v);
        }
        out
    }
}

impl Div<&TropicalElement> for &TropicalElement {
    type Output = TropicalElement;
    fn div(self, rhs: &TropicalElement) -> TropicalElement {
        self * &rhs.inv()
    }
}

impl fmt::Debug for TropicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TropicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (k, v)) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *v == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemifieldError {
    #[error("cannot parse tropical monomial `{0}`")]
    Parse(String),
    #[error("semifield tag mismatch: {0} vs {1}")]
    TagMismatch(&'static str, &'static str),
}

impl FromStr for TropicalElement {
    type Err = SemifieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || SemifieldError::Parse(s.to_string());
        if s == "1" {
            return Ok(Self::one());
        }
        let mut out = Self::one();
        for factor in s.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| err())?),
                None => (factor, 1),
            };
            let valid = name.chars().next().is_some_and(|c| c.is_alphabetic())
                && name.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(err());
            }
            out.bump(Arc::from(name), e);
        }
        Ok(out)
    }
}

/// Element of a supported semifield.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemifieldValue {
    Trivial,
    Tropical(TropicalElement),
}

impl SemifieldValue {
    fn tag(&self) -> &'static str {
        match self {
            SemifieldValue::Trivial => "trivial",
            SemifieldValue::Tropical(_) => "tropical",
        }
    }

    /// The underlying monomial; the trivial value is the empty monomial.
    pub fn as_tropical(&self) -> TropicalElement {
        match self {
            SemifieldValue::Trivial => TropicalElement::one(),
            SemifieldValue::Tropical(t) => t.clone(),
        }
    }

    fn combine(
        &self,
        other: &Self,
        f: impl Fn(&TropicalElement, &TropicalElement) -> TropicalElement,
    ) -> Result<Self, SemifieldError> {
        match (self, other) {
            (SemifieldValue::Trivial, SemifieldValue::Trivial) => Ok(SemifieldValue::Trivial),
            (SemifieldValue::Tropical(a), SemifieldValue::Tropical(b)) => {
                Ok(SemifieldValue::Tropical(f(a, b)))
            }
            _ => Err(SemifieldError::TagMismatch(self.tag(), other.tag())),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.combine(other, |a, b| a * b)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.combine(other, |a, b| a / b)
    }
}

pub fn oplus(a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue, SemifieldError> {
    a.combine(b, TropicalElement::oplus)
}

/// `(y / (1 ⊕ y), 1 / (1 ⊕ y))`.
pub fn hensel_pair(y: &SemifieldValue) -> (SemifieldValue, SemifieldValue) {
    match y {
        SemifieldValue::Trivial => (SemifieldValue::Trivial, SemifieldValue::Trivial),
        SemifieldValue::Tropical(t) => {
            let (p, m) = tropical_hensel_pair(t);
            (SemifieldValue::Tropical(p), SemifieldValue::Tropical(m))
        }
    }
}

pub fn tropical_hensel_pair(y: &TropicalElement) -> (TropicalElement, TropicalElement) {
    let den = y.one_plus();
    (y / &den, den.inv())
}

/// Element of the group ring `ℤP` of a tropical semifield `P`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    terms: BTreeMap<TropicalElement, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(TropicalElement::one(), BigInt::one())
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::monomial(TropicalElement::one(), c.into())
    }

    pub fn monomial(m: TropicalElement, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_semifield(u: &TropicalElement) -> Self {
        Self::monomial(u.clone(), BigInt::one())
    }

    pub fn add_term(&mut self, m: TropicalElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TropicalElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The term that is largest in the monomial order.
    pub fn leading(&self) -> Option<(&TropicalElement, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&TropicalElement, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn mul_monomial(&self, m: &TropicalElement) -> Self {
        if m.is_one() {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        }
    }

    /// Integer content (gcd of coefficients), zero for the zero element.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Sign of the leading coefficient.
    pub fn leading_is_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&GroupRingElement> for GroupRingElement {
    fn add_assign(&mut self, rhs: &GroupRingElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a * b, x * y);
            }
        }
        out
    }
}
