use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in one variable `z` with big-integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * z^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `z^k`.
    pub fn z_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// Builds `c[0] + c[1] z + c[2] z^2 + ...`.
    pub fn from_ascending(c: &[i64]) -> Self {
        Self::from_terms(
            c.iter()
                .enumerate()
                .map(|(k, &v)| (k as i64, BigInt::from(v))),
        )
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeff_i64(&self, k: i64) -> i64 {
        self.coeffs
            .get(&k)
            .map_or(0, |c| i64::try_from(c).expect("coefficient exceeds i64"))
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Substitutes `z -> z^{-1}`.
    pub fn invert_z(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Substitutes `z -> z^c`.
    pub fn subs_pow(&self, c: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, v)| (k * c, v.clone())))
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Coefficientwise `max(c, 0)`.
    pub fn positive_part(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, c)| c.is_positive())
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| c.is_positive())
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<Self> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if !(c % d).is_zero() {
                return None;
            }
            out.insert(*k, c / d);
        }
        Some(Self { coeffs: out })
    }

    /// Coefficients `c_0, ..., c_max` when the polynomial has no negative powers.
    pub fn to_ascending(&self) -> Option<Vec<BigInt>> {
        if self.min_degree().is_some_and(|k| k < 0) {
            return None;
        }
        let top = self.max_degree().unwrap_or(-1);
        Some((0..=top).map(|k| self.coeff(k)).collect())
    }
}

/// The z-integer `[k]_{z^c} = z^{c(k-1)} + z^{c(k-3)} + ... + z^{-c(k-1)}`; zero for `k = 0`.
pub fn z_integer(k: u32, c: u32) -> LaurentPoly {
    let (k, c) = (k as i64, c as i64);
    LaurentPoly::from_terms((0..k).map(|j| (c * (k - 1 - 2 * j), BigInt::one())))
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (k, true) => write!(f, "z^{k}")?,
                (k, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Laurent polynomial term `{0}`")]
pub struct ParseLaurentError(pub String);

impl FromStr for LaurentPoly {
    type Err = ParseLaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseLaurentError(s));
        }
        let mut out = LaurentPoly::zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = 1;
        let mut pieces = Vec::new();
        while i <= bytes.len() {
            let at_sign =
                i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^';
            if i == bytes.len() || at_sign {
                pieces.push(&s[start..i]);
                start = i;
            }
            i += 1;
        }
        for piece in pieces {
            let err = || ParseLaurentError(piece.to_string());
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            let (coef, var) = match body.split_once('*') {
                Some((c, v)) => (c.parse::<BigInt>().map_err(|_| err())?, Some(v)),
                None if body.starts_with('z') => (BigInt::one(), Some(body)),
                None => (body.parse::<BigInt>().map_err(|_| err())?, None),
            };
            let exp = match var {
                None => 0,
                Some("z") => 1,
                Some(v) => v
                    .strip_prefix("z^")
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(err)?,
            };
            out.add_term(exp, coef * sign);
        }
        Ok(out)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "1", "z", "-z^-1", "1-2*z^2+z^4", "3*z^-2+z-7*z^5"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("z^4 - 2*z^2 + 1"), p("1-2*z^2+z^4"));
        assert!("2*y".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn z_integers() {
        assert_eq!(z_integer(1, 1), LaurentPoly::one());
        assert_eq!(z_integer(2, 1), p("z^-1+z"));
        assert_eq!(z_integer(3, 2), p("z^-4+1+z^4"));
        assert!(z_integer(0, 3).is_zero());
    }

    #[test]
    fn products_cancel() {
        let a = p("1+z");
        let b = p("1-z");
        assert_eq!(&a * &b, p("1-z^2"));
        assert!((&a - &a).is_zero());
        assert_eq!(p("1-2*z^2+z^4").eval_at_one(), BigInt::zero());
    }
}
