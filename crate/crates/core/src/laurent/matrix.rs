use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{LaurentPoly, RationalMatrix};

/// Square matrix of Laurent polynomials, indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    r: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(r: usize) -> Self {
        Self {
            r,
            entries: vec![LaurentPoly::zero(); r * r],
        }
    }

    pub fn identity(r: usize) -> Self {
        Self::from_fn(r, |a, b| {
            if a == b {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    pub fn from_fn(r: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                entries.push(f(a, b));
            }
        }
        Self { r, entries }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        assert!(
            rows.iter().all(|row| row.len() == r),
            "PolyMatrix must be square"
        );
        Self {
            r,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Entries given as ascending coefficient lists starting at `z^0`.
    pub fn from_coeff_rows(rows: &[Vec<Vec<i64>>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|c| LaurentPoly::from_ascending(c)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[LaurentPoly]) -> Self {
        Self::from_fn(d.len(), |a, b| {
            if a == b {
                d[a].clone()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn get(&self, a: usize, b: usize) -> &LaurentPoly {
        &self.entries[a * self.r + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: LaurentPoly) {
        self.entries[a * self.r + b] = v;
    }

    pub fn entry_mut(&mut self, a: usize, b: usize) -> &mut LaurentPoly {
        &mut self.entries[a * self.r + b]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            r: self.r,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.r, |a, b| self.get(b, a).clone())
    }

    /// `(M|_{z -> z^{-1}})^T`.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.r, |a, b| self.get(b, a).invert_z())
    }

    pub fn positive_part(&self) -> Self {
        self.map(LaurentPoly::positive_part)
    }

    pub fn eval_at_one(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.r, self.r, |a, b| {
            BigRational::from_integer(self.get(a, b).eval_at_one())
        })
    }

    /// `diag(d) * M`.
    pub fn scale_rows(&self, d: &[i64]) -> Self {
        Self::from_fn(self.r, |a, b| self.get(a, b).scale(&BigInt::from(d[a])))
    }

    /// `M * diag(d)`.
    pub fn scale_cols(&self, d: &[i64]) -> Self {
        Self::from_fn(self.r, |a, b| self.get(a, b).scale(&BigInt::from(d[b])))
    }

    /// `diag(d)^{-1} M diag(d)` if it is integral.
    pub fn conjugate_by_diag(&self, d: &[i64]) -> Option<Self> {
        let mut out = Self::zero(self.r);
        for a in 0..self.r {
            for b in 0..self.r {
                let e = self
                    .get(a, b)
                    .scale(&BigInt::from(d[b]))
                    .div_exact_int(&BigInt::from(d[a]))?;
                out.set(a, b, e);
            }
        }
        Some(out)
    }

    /// Reindexes so that `out[rho[a]][rho[b]] = self[a][b]`.
    pub fn permute(&self, rho: &[usize]) -> Self {
        let mut out = Self::zero(self.r);
        for a in 0..self.r {
            for b in 0..self.r {
                out.set(rho[a], rho[b], self.get(a, b).clone());
            }
        }
        out
    }

    /// Principal submatrix on `idx`.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, s) = (self.r, other.r);
        Self::from_fn(r + s, |a, b| match (a < r, b < r) {
            (true, true) => self.get(a, b).clone(),
            (false, false) => other.get(a - r, b - r).clone(),
            _ => LaurentPoly::zero(),
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.r.max(1))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for a in 0..self.r {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for b in 0..self.r {
                if b > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(a, b))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Add<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.r, rhs.r);
        PolyMatrix {
            r: self.r,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.r, rhs.r);
        PolyMatrix {
            r: self.r,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.r, rhs.r);
        let r = self.r;
        PolyMatrix::from_fn(r, |a, b| {
            let mut acc = LaurentPoly::zero();
            for c in 0..r {
                let (x, y) = (self.get(a, c), rhs.get(c, b));
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|x| -x)
    }
}

impl Add for PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: PolyMatrix) -> PolyMatrix {
        &self + &rhs
    }
}
