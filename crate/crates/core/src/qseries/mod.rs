//! Partition q-series of Cartan-like T-data of finite type and the sector group indexing them.

mod oracles;
mod snf;

pub use oracles::{
    andrews_gordon_check, asymptotic_ratio, eta_theta_check, euler_function, family_datum,
    product_side, Family, SectorCheck,
};
pub use snf::{smith, Smith};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::laurent::{LinalgError, RationalMatrix};
use crate::positivity::{compute_k, is_cartan_like, simultaneous_positivity};
use crate::tdatum::TDatum;

/// Upper limit on `order · M`, the length of a stored expansion.
pub const MAX_TERMS: u64 = 20_000_000;
/// Upper limit on the number of lattice points scanned in the enumeration box.
pub const MAX_BOX: u128 = 200_000_000;

#[derive(Debug, thiserror::Error)]
pub enum QSeriesError {
    #[error("not a Cartan-like T-datum")]
    NotCartanLike,
    #[error("simultaneous positivity fails, so the datum is not of finite type")]
    NotFinite,
    #[error("K∨D∨ is not positive definite")]
    NotPositiveDefinite,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("sector {0} out of range for a group of order {1}")]
    BadSector(usize, u64),
    #[error("expansion too large ({0})")]
    TooLarge(String),
}

/// `Σ c_k q^{k/M}` known for `k ≤ order·M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    denom: u64,
    order: u64,
    coeffs: Vec<BigInt>,
}

impl QExpansion {
    pub fn zero(denom: u64, order: u64) -> Self {
        assert!(denom > 0);
        QExpansion {
            denom,
            order,
            coeffs: vec![BigInt::zero(); (order * denom + 1) as usize],
        }
    }

    pub fn one(denom: u64, order: u64) -> Self {
        Self::monomial(denom, order, 0, BigInt::one())
    }

    /// `c·q^{k/M}`, zero if beyond the truncation.
    pub fn monomial(denom: u64, order: u64, k: u64, c: BigInt) -> Self {
        let mut s = Self::zero(denom, order);
        if let Some(x) = s.coeffs.get_mut(k as usize) {
            *x = c;
        }
        s
    }

    /// Builds from coefficients of `q^{k/M}` for `k = 0, 1, …`; the order is the largest one they cover.
    pub fn from_coeffs(denom: u64, coeffs: Vec<BigInt>) -> Self {
        let order = (coeffs.len() as u64 - 1) / denom;
        let mut coeffs = coeffs;
        coeffs.truncate((order * denom + 1) as usize);
        QExpansion {
            denom,
            order,
            coeffs,
        }
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficient of `q^{k/M}`.
    pub fn coeff(&self, k: u64) -> Option<&BigInt> {
        self.coeffs.get(k as usize)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero terms as `(k, c)` meaning `c·q^{k/M}`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
    }

    /// The same series over the denominator `denom`, a multiple of the current one.
    pub fn with_denom(&self, denom: u64) -> Self {
        assert!(
            denom % self.denom == 0,
            "denominator {denom} is not a multiple of {}",
            self.denom
        );
        let f = denom / self.denom;
        let mut out = Self::zero(denom, self.order);
        for (k, c) in self.terms() {
            out.coeffs[(k * f) as usize] = c.clone();
        }
        out
    }

    /// The smallest denominator that still represents the series.
    pub fn reduced(&self) -> Self {
        let g = self.terms().fold(self.denom, |g, (k, _)| g.gcd(&k));
        let mut out = Self::zero(self.denom / g, self.order);
        for (k, c) in self.terms() {
            out.coeffs[(k / g) as usize] = c.clone();
        }
        out
    }

    pub fn truncate(&self, order: u64) -> Self {
        let order = order.min(self.order);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate((order * self.denom + 1) as usize);
        QExpansion {
            denom: self.denom,
            order,
            coeffs,
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.denom.lcm(&other.denom);
        let order = self.order.min(other.order);
        (
            self.with_denom(m).truncate(order),
            other.with_denom(m).truncate(order),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut out = Self::zero(a.denom, a.order);
        let len = out.coeffs.len();
        for (i, x) in a.terms() {
            for (j, y) in b.coeffs[..len - i as usize]
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
            {
                out.coeffs[i as usize + j] += x * y;
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QExpansion {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    /// Divides in place by `1 − q^{k/M}`, `k > 0`.
    pub fn divide_one_minus(&mut self, k: u64) {
        assert!(k > 0);
        let k = k as usize;
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            if !prev.is_zero() {
                self.coeffs[i] += prev;
            }
        }
    }

    /// Divides exactly by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, c: &BigInt) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                let (q, r) = x.div_rem(c);
                r.is_zero().then_some(q)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(QExpansion {
            coeffs,
            ..self.clone()
        })
    }

    /// `Σ c_k x^{k/M}` in floating point, for `0 < x < 1`.
    pub fn eval(&self, x: f64) -> f64 {
        let step = x.ln() / self.denom as f64;
        self.terms()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::INFINITY) * (step * k as f64).exp())
            .sum()
    }

    /// First index where two expansions differ, up to the smaller order, after aligning denominators.
    pub fn first_difference(&self, other: &Self) -> Option<(u64, u64)> {
        let (a, b) = self.common(other);
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .position(|(x, y)| x != y)
            .map(|k| (k as u64, a.denom))
    }
}

impl fmt::Display for QExpansion {
    /// One `k/M<TAB>c` line per nonzero term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.terms() {
            writeln!(f, "{k}/{}\t{c}", self.denom)?;
        }
        Ok(())
    }
}

/// `S_α = ℤʳ / (Å₊∨)ᵀℤʳ` together with the data defining the partition series.
#[derive(Clone, Debug)]
pub struct SectorGroup {
    /// Common exponent denominator of all partition series of the datum.
    pub denom: u64,
    /// Invariant factors greater than one.
    pub invariants: Vec<i64>,
    /// Rows of the Smith transform matching `invariants`.
    rows: Vec<Vec<i64>>,
    pub order: u64,
    /// `M·K∨D∨`, an integer matrix with even diagonal.
    quadratic: Vec<Vec<i64>>,
    /// `δ/d_a`.
    pub d_dual: Vec<i64>,
    kd_dual: RationalMatrix,
}

impl SectorGroup {
    /// Index in `0..order` of the class of `m`; zero is the identity class.
    pub fn class(&self, m: &[i64]) -> usize {
        let mut idx = 0usize;
        for (row, &s) in self.rows.iter().zip(&self.invariants) {
            let x: i64 = row.iter().zip(m).map(|(a, b)| a * b).sum();
            idx = idx * s as usize + x.rem_euclid(s) as usize;
        }
        idx
    }

    /// For instance `0`, `ℤ/2ℤ` or `ℤ/2ℤ × ℤ/4ℤ`.
    pub fn isomorphism_type(&self) -> String {
        if self.invariants.is_empty() {
            "0".into()
        } else {
            self.invariants
                .iter()
                .map(|s| format!("ℤ/{s}ℤ"))
                .collect::<Vec<_>>()
                .join(" × ")
        }
    }

    /// `M·½·mᵀK∨D∨m`.
    pub fn exponent(&self, m: &[i64]) -> i64 {
        let mut e = 0;
        for (a, row) in self.quadratic.iter().enumerate() {
            for (b, q) in row.iter().enumerate() {
                e += q * m[a] * m[b];
            }
        }
        e / 2
    }

    pub fn kd_dual(&self) -> &RationalMatrix {
        &self.kd_dual
    }
}

fn lcm_of_denominators(m: &RationalMatrix) -> BigInt {
    let mut l = BigInt::one();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            l = l.lcm(m.get(i, j).denom());
        }
    }
    l
}

fn to_i64(x: &BigRational) -> i64 {
    assert!(x.is_integer());
    x.to_integer().to_i64().expect("small integer")
}

/// The sector group of a Cartan-like datum of finite type.
pub fn sector_group(alpha: &TDatum) -> Result<SectorGroup, QSeriesError> {
    if !is_cartan_like(alpha) {
        return Err(QSeriesError::NotCartanLike);
    }
    if !simultaneous_positivity(alpha).is_feasible() {
        return Err(QSeriesError::NotFinite);
    }
    let k = compute_k(alpha)?;
    if !k.kd_dual_symmetric || !k.kd_dual_positive_definite {
        return Err(QSeriesError::NotPositiveDefinite);
    }
    let r = alpha.size();
    let dual = alpha.langlands_dual();
    let ap = dual.a_plus().eval_at_one();
    let at: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| to_i64(ap.get(j, i))).collect())
        .collect();
    let s = smith(&at);
    let (invariants, rows): (Vec<i64>, Vec<Vec<i64>>) = s
        .invariants
        .iter()
        .zip(&s.u)
        .filter(|(&x, _)| x != 1)
        .map(|(&x, row)| (x, row.clone()))
        .unzip();
    let order = invariants.iter().product::<i64>() as u64;
    let denom = BigInt::from(2) * lcm_of_denominators(&k.kd_dual);
    let scaled = k.kd_dual.scale(&BigRational::from_integer(denom.clone()));
    let quadratic = (0..r)
        .map(|i| (0..r).map(|j| to_i64(scaled.get(i, j))).collect())
        .collect();
    Ok(SectorGroup {
        denom: denom.to_u64().expect("small denominator"),
        invariants,
        rows,
        order,
        quadratic,
        d_dual: dual.d().to_vec(),
        kd_dual: k.kd_dual,
    })
}

/// Largest `m_a` with `½ mᵀSm ≤ order` for some real `m`: `⌊√(2·order·(S⁻¹)_aa)⌋`.
fn box_bounds(s: &RationalMatrix, order: u64) -> Result<Vec<u64>, QSeriesError> {
    let inv = s.inverse()?;
    Ok((0..s.nrows())
        .map(|a| {
            let x = inv.get(a, a) * BigRational::from_integer(BigInt::from(2 * order));
            x.floor().to_integer().sqrt().to_u64().expect("bounded")
        })
        .collect())
}

/// Partition series of every sector, indexed by [`SectorGroup::class`], truncated at `q^order`.
pub fn partition_series_all(
    alpha: &TDatum,
    order: u64,
) -> Result<(SectorGroup, Vec<QExpansion>), QSeriesError> {
    let g = sector_group(alpha)?;
    let len = order.checked_mul(g.denom).filter(|&x| x <= MAX_TERMS);
    if len.is_none() {
        return Err(QSeriesError::TooLarge(format!(
            "order {order} with denominator {}",
            g.denom
        )));
    }
    let bounds = box_bounds(&g.kd_dual, order)?;
    let points: u128 = bounds.iter().map(|&b| u128::from(b) + 1).product();
    if points > MAX_BOX {
        return Err(QSeriesError::TooLarge(format!("{points} lattice points")));
    }
    let mut out = vec![QExpansion::zero(g.denom, order); g.order as usize];
    let cap = (order * g.denom) as i64;
    let r = bounds.len();
    let mut m = vec![0i64; r];
    loop {
        let e = g.exponent(&m);
        if e <= cap {
            let mut term = QExpansion::monomial(g.denom, order, e as u64, BigInt::one());
            for (a, &ma) in m.iter().enumerate() {
                for i in 1..=ma as u64 {
                    term.divide_one_minus(i * g.d_dual[a] as u64 * g.denom);
                }
            }
            let slot = &mut out[g.class(&m)];
            for (x, y) in slot.coeffs.iter_mut().zip(term.coeffs).skip(e as usize) {
                *x += y;
            }
        }
        let mut a = 0;
        while a < r {
            if (m[a] as u64) < bounds[a] {
                m[a] += 1;
                break;
            }
            m[a] = 0;
            a += 1;
        }
        if a == r {
            break;
        }
    }
    Ok((g, out))
}

/// `Z_{α,σ}` truncated at `q^order`.
pub fn partition_series(
    alpha: &TDatum,
    sector: usize,
    order: u64,
) -> Result<QExpansion, QSeriesError> {
    let (g, mut all) = partition_series_all(alpha, order)?;
    if sector >= all.len() {
        return Err(QSeriesError::BadSector(sector, g.order));
    }
    Ok(all.swap_remove(sector))
}

/// `Z_{α,tot}`, the sum over all sectors.
pub fn total_series(alpha: &TDatum, order: u64) -> Result<QExpansion, QSeriesError> {
    let (g, all) = partition_series_all(alpha, order)?;
    Ok(all
        .iter()
        .fold(QExpansion::zero(g.denom, order), |acc, s| acc.add(s)))
}

#[cfg(test)]
mod tests;
