//! T-data: validation, Langlands duality, consistent subsets, equivalence and decomposition.

pub mod builders;
pub mod catalog;
mod consistent;
mod json;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::{LaurentPoly, PolyMatrix};

pub use consistent::{
    decompose, find_equivalence, validate_consistent, ConsistencyViolation, ConsistentSubset,
    EquivalenceError, TDatumEquivalence,
};
pub use json::{JsonError, TDatumJson};

/// Which of `N₊`, `N₋` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A failed T-datum axiom. Indices are 0-based; `p` is a power of `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    NonPositiveD {
        a: usize,
    },
    N1 {
        a: usize,
        b: usize,
        detail: String,
    },
    N2 {
        sign: Sign,
        a: usize,
        b: usize,
        p: i64,
    },
    N3 {
        sign: Sign,
        a: usize,
        b: usize,
        p: i64,
    },
    N4 {
        a: usize,
        b: usize,
        p: i64,
    },
    DCommutes {
        a: usize,
    },
    DIntegral {
        sign: Sign,
        a: usize,
        b: usize,
    },
    Symplectic {
        a: usize,
        b: usize,
        p: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::NonPositiveD { a } => write!(f, "D: d_{} is not positive", a + 1),
            Violation::N1 { a, b, detail } => write!(f, "(N1) at ({},{}): {detail}", a + 1, b + 1),
            Violation::N2 { sign, a, b, p } => {
                write!(
                    f,
                    "(N2) negative coefficient n{sign}_{{{},{};{p}}}",
                    a + 1,
                    b + 1
                )
            }
            Violation::N3 { sign, a, b, p } => {
                write!(
                    f,
                    "(N3) n{sign}_{{{},{};{p}}} is nonzero outside 0 < p < p_{}",
                    a + 1,
                    b + 1,
                    a + 1
                )
            }
            Violation::N4 { a, b, p } => write!(
                f,
                "(N4) n+ and n- both nonzero at ({},{};{p})",
                a + 1,
                b + 1
            ),
            Violation::DCommutes { a } => {
                write!(f, "D: d_{} differs from d_sigma({})", a + 1, a + 1)
            }
            Violation::DIntegral { sign, a, b } => {
                write!(
                    f,
                    "D: (D^-1 N{sign} D)_{{{},{}}} is not integral",
                    a + 1,
                    b + 1
                )
            }
            Violation::Symplectic { a, b, p } => {
                write!(
                    f,
                    "symplectic relation fails at ({},{}) coefficient of z^{p}",
                    a + 1,
                    b + 1
                )
            }
        }
    }
}

/// All violations found while validating a candidate.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid T-datum: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationReport(pub Vec<Violation>);

/// A validated T-datum, stored as `(σ, p, N₊, N₋, D)`; all indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TDatum {
    sigma: Vec<usize>,
    p: Vec<i64>,
    n_plus: PolyMatrix,
    n_minus: PolyMatrix,
    d: Vec<i64>,
}

impl TDatum {
    /// Checks all axioms on explicit components.
    pub fn new(
        sigma: Vec<usize>,
        p: Vec<i64>,
        n_plus: PolyMatrix,
        n_minus: PolyMatrix,
        d: Vec<i64>,
    ) -> Result<Self, ValidationReport> {
        let r = sigma.len();
        let mut v = Vec::new();
        if p.len() != r || n_plus.size() != r || n_minus.size() != r || d.len() != r {
            return Err(ValidationReport(vec![Violation::Shape(
                "component sizes disagree".into(),
            )]));
        }
        let mut seen = vec![false; r];
        for (b, &a) in sigma.iter().enumerate() {
            if a >= r || std::mem::replace(&mut seen[a], true) {
                v.push(Violation::N1 {
                    a,
                    b,
                    detail: "sigma is not a permutation".into(),
                });
            }
        }
        for (a, &pa) in p.iter().enumerate() {
            if pa <= 0 {
                v.push(Violation::N1 {
                    a,
                    b: a,
                    detail: format!("p_{} = {pa} is not positive", a + 1),
                });
            }
        }
        if !v.is_empty() {
            return Err(ValidationReport(v));
        }
        let alpha = TDatum {
            sigma,
            p,
            n_plus,
            n_minus,
            d,
        };
        alpha.check_axioms(&mut v);
        if v.is_empty() {
            Ok(alpha)
        } else {
            Err(ValidationReport(v))
        }
    }

    fn check_axioms(&self, v: &mut Vec<Violation>) {
        let r = self.size();
        for a in 0..r {
            for b in 0..r {
                for sign in Sign::BOTH {
                    for (p, c) in self.n(sign).get(a, b).terms() {
                        if c.is_negative() {
                            v.push(Violation::N2 { sign, a, b, p });
                        }
                        if p <= 0 || p >= self.p[a] {
                            v.push(Violation::N3 { sign, a, b, p });
                        }
                    }
                }
                for (p, _) in self.n_plus.get(a, b).terms() {
                    if !self.n_minus.get(a, b).coeff(p).is_zero() {
                        v.push(Violation::N4 { a, b, p });
                    }
                }
            }
        }
        for a in 0..r {
            if self.d[a] <= 0 {
                v.push(Violation::NonPositiveD { a });
            } else if self.d[a] != self.d[self.sigma[a]] {
                v.push(Violation::DCommutes { a });
            }
        }
        if self.d.iter().all(|&x| x > 0) {
            for sign in Sign::BOTH {
                for a in 0..r {
                    for b in 0..r {
                        let e = self.n(sign).get(a, b).scale(&BigInt::from(self.d[b]));
                        if e.div_exact_int(&BigInt::from(self.d[a])).is_none() {
                            v.push(Violation::DIntegral { sign, a, b });
                        }
                    }
                }
            }
            let (lhs, rhs) = self.symplectic_sides();
            for a in 0..r {
                for b in 0..r {
                    let diff = lhs.get(a, b) - rhs.get(a, b);
                    if let Some(p) = diff.min_degree() {
                        v.push(Violation::Symplectic { a, b, p });
                    }
                }
            }
        }
    }

    /// `(A₊ D A₋†, A₋ D A₊†)`.
    pub fn symplectic_sides(&self) -> (PolyMatrix, PolyMatrix) {
        let (ap, am) = (self.a_plus(), self.a_minus());
        (
            &ap.scale_cols(&self.d) * &am.dagger(),
            &am.scale_cols(&self.d) * &ap.dagger(),
        )
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for (b, &a) in self.sigma.iter().enumerate() {
            inv[a] = b;
        }
        inv
    }

    pub fn p(&self) -> &[i64] {
        &self.p
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn n_plus(&self) -> &PolyMatrix {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &PolyMatrix {
        &self.n_minus
    }

    pub fn n(&self, sign: Sign) -> &PolyMatrix {
        match sign {
            Sign::Plus => &self.n_plus,
            Sign::Minus => &self.n_minus,
        }
    }

    /// `n^±_{ab;p}` as a machine integer.
    pub fn n_coeff(&self, sign: Sign, a: usize, b: usize, p: i64) -> i64 {
        self.n(sign).get(a, b).coeff_i64(p)
    }

    /// `n⁰_{ab;p} = δ_{ab}δ_{p0} + δ_{aσ(b)}δ_{p,p_a}`.
    pub fn n0_coeff(&self, a: usize, b: usize, p: i64) -> i64 {
        i64::from(a == b && p == 0) + i64::from(a == self.sigma[b] && p == self.p[a])
    }

    pub fn n0(&self) -> PolyMatrix {
        let r = self.size();
        let mut m = PolyMatrix::identity(r);
        for b in 0..r {
            let a = self.sigma[b];
            *m.entry_mut(a, b) += &LaurentPoly::z_pow(self.p[a]);
        }
        m
    }

    pub fn a_plus(&self) -> PolyMatrix {
        &self.n0() - &self.n_plus
    }

    pub fn a_minus(&self) -> PolyMatrix {
        &self.n0() - &self.n_minus
    }

    pub fn a(&self, sign: Sign) -> PolyMatrix {
        &self.n0() - self.n(sign)
    }

    pub fn max_p(&self) -> i64 {
        self.p.iter().copied().max().unwrap_or(0)
    }

    /// `δ = gcd(D)·lcm(D)`.
    pub fn delta(&self) -> i64 {
        let g = self.d.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        let l = self.d.iter().fold(1i64, |acc, &x| acc.lcm(&x));
        g * l
    }

    /// `(N₊∨, N₋∨, D∨) = (D⁻¹N₊D, D⁻¹N₋D, δD⁻¹)`.
    pub fn langlands_dual(&self) -> TDatum {
        let delta = self.delta();
        TDatum {
            sigma: self.sigma.clone(),
            p: self.p.clone(),
            n_plus: self
                .n_plus
                .conjugate_by_diag(&self.d)
                .expect("validated integrality"),
            n_minus: self
                .n_minus
                .conjugate_by_diag(&self.d)
                .expect("validated integrality"),
            d: self.d.iter().map(|x| delta / x).collect(),
        }
    }

    /// The datum `(A₋, A₊, D)`.
    pub fn swap(&self) -> TDatum {
        TDatum {
            n_plus: self.n_minus.clone(),
            n_minus: self.n_plus.clone(),
            ..self.clone()
        }
    }

    /// Reindexes so that index `a` becomes `rho[a]`.
    pub fn permute(&self, rho: &[usize]) -> TDatum {
        let r = self.size();
        let mut sigma = vec![0; r];
        let mut p = vec![0; r];
        let mut d = vec![0; r];
        for a in 0..r {
            sigma[rho[a]] = rho[self.sigma[a]];
            p[rho[a]] = self.p[a];
            d[rho[a]] = self.d[a];
        }
        TDatum {
            sigma,
            p,
            n_plus: self.n_plus.permute(rho),
            n_minus: self.n_minus.permute(rho),
            d,
        }
    }

    pub fn direct_sum(&self, other: &TDatum) -> TDatum {
        let r = self.size();
        TDatum {
            sigma: self
                .sigma
                .iter()
                .copied()
                .chain(other.sigma.iter().map(|s| s + r))
                .collect(),
            p: [self.p.clone(), other.p.clone()].concat(),
            n_plus: self.n_plus.direct_sum(&other.n_plus),
            n_minus: self.n_minus.direct_sum(&other.n_minus),
            d: [self.d.clone(), other.d.clone()].concat(),
        }
    }

    /// Sub-datum on a `σ`-stable index set closed under the supports of `N±`.
    pub(crate) fn restrict(&self, idx: &[usize]) -> TDatum {
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &a) in idx.iter().enumerate() {
            pos[a] = i;
        }
        TDatum {
            sigma: idx.iter().map(|&a| pos[self.sigma[a]]).collect(),
            p: idx.iter().map(|&a| self.p[a]).collect(),
            n_plus: self.n_plus.restrict(idx),
            n_minus: self.n_minus.restrict(idx),
            d: idx.iter().map(|&a| self.d[a]).collect(),
        }
    }
}

/// Validates a candidate `(A₊, A₋, D)` and recovers `(σ, p, N₊, N₋)`.
pub fn validate(
    a_plus: &PolyMatrix,
    a_minus: &PolyMatrix,
    d: &[i64],
) -> Result<TDatum, ValidationReport> {
    let r = a_plus.size();
    if a_minus.size() != r || d.len() != r {
        return Err(ValidationReport(vec![Violation::Shape(format!(
            "A+ is {r}x{r}, A- is {m}x{m}, D has {} entries",
            d.len(),
            m = a_minus.size()
        ))]));
    }
    if r == 0 {
        return Err(ValidationReport(vec![Violation::Shape(
            "empty datum".into(),
        )]));
    }
    let n0 = a_plus.positive_part();
    let mut v = Vec::new();
    let n0_minus = a_minus.positive_part();
    for a in 0..r {
        for b in 0..r {
            if n0.get(a, b) != n0_minus.get(a, b) {
                v.push(Violation::N1 {
                    a,
                    b,
                    detail: format!(
                        "[A+]_+ = {} but [A-]_+ = {}",
                        n0.get(a, b),
                        n0_minus.get(a, b)
                    ),
                });
            }
        }
    }
    if !v.is_empty() {
        return Err(ValidationReport(v));
    }
    let mut sigma = vec![usize::MAX; r];
    let mut p = vec![0i64; r];
    for b in 0..r {
        let mut found = None;
        for a in 0..r {
            let mut e = n0.get(a, b).clone();
            if a == b {
                if !e.coeff(0).is_one() {
                    v.push(Violation::N1 {
                        a,
                        b,
                        detail: format!("diagonal entry {e} lacks constant term 1"),
                    });
                    continue;
                }
                e.add_term(0, BigInt::from(-1));
            }
            for (k, c) in e.terms() {
                if k <= 0 || !c.is_one() || found.is_some() {
                    v.push(Violation::N1 {
                        a,
                        b,
                        detail: format!("unexpected term {c}*z^{k} in N0"),
                    });
                } else {
                    found = Some((a, k));
                }
            }
        }
        match found {
            Some((a, k)) => {
                if sigma.contains(&a) {
                    v.push(Violation::N1 {
                        a,
                        b,
                        detail: "sigma is not a permutation".into(),
                    });
                }
                sigma[b] = a;
                p[a] = k;
            }
            None => v.push(Violation::N1 {
                a: b,
                b,
                detail: "column has no z^{p} term".into(),
            }),
        }
    }
    if !v.is_empty() {
        return Err(ValidationReport(v));
    }
    let n_plus = (-a_plus).positive_part();
    let n_minus = (-a_minus).positive_part();
    TDatum::new(sigma, p, n_plus, n_minus, d.to_vec())
}

pub fn langlands_dual(alpha: &TDatum) -> TDatum {
    alpha.langlands_dual()
}
