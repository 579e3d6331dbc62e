//! Product and theta sides of the known identities for partition series.

use std::f64::consts::PI;

use super::{partition_series_all, total_series, QExpansion, QSeriesError};
use crate::analytic::{dilog_invariant, DEFAULT_TOLERANCE};
use crate::tdatum::catalog::{from_strings, tadpole_swapped};
use crate::tdatum::TDatum;
use num_bigint::BigInt;

/// The size-1 data of finite type, up to the degree `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(1+z^{2p}, 1+z^{2p})`.
    Alpha1,
    /// `(1−z^p+z^{2p}, 1+z^{2p})`.
    Alpha2,
    /// `(1+z^{2p}, 1−z^p+z^{2p})`.
    Alpha3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Alpha1, Family::Alpha2, Family::Alpha3];

    /// Level `K₀` of the theta side: `Z_σ·(q^d;q^d)_∞ = ½ Σ_n a_σ(n) q^{d(n²−1)/K₀}`.
    fn level(self) -> i64 {
        match self {
            Family::Alpha1 => 48,
            Family::Alpha2 => 40,
            Family::Alpha3 => 60,
        }
    }

    /// `a_σ(n)`.
    fn theta_coefficient(self, sector: usize, n: i64) -> i64 {
        let (modulus, plus, minus) = match (self, sector) {
            (Family::Alpha1, 0) => (24, 1, 7),
            (Family::Alpha1, _) => (24, 5, 11),
            (Family::Alpha2, _) => (20, 1, 9),
            (Family::Alpha3, 0) => (30, 1, 11),
            (Family::Alpha3, _) => (30, 4, 14),
        };
        let x = n.rem_euclid(modulus);
        if x == plus || x == modulus - plus {
            1
        } else if x == minus || x == modulus - minus {
            -1
        } else {
            0
        }
    }
}

/// The datum of a family with `p` and `D = (d)`.
pub fn family_datum(family: Family, p: u32, d: i64) -> TDatum {
    let pal = format!("1+z^{}", 2 * p);
    let alt = format!("1-z^{p}+z^{}", 2 * p);
    let (plus, minus) = match family {
        Family::Alpha1 => (pal.clone(), pal),
        Family::Alpha2 => (alt, pal),
        Family::Alpha3 => (pal, alt),
    };
    from_strings(&[&[plus.as_str()]], &[&[minus.as_str()]], &[d])
}

/// `(q^{k/M}; q^{k/M})_∞` by the pentagonal number theorem.
pub fn euler_function(denom: u64, order: u64, k: u64) -> QExpansion {
    let mut out = QExpansion::zero(denom, order);
    let cap = order * denom;
    for j in 0i64.. {
        let mut any = false;
        for (i, g) in [j * (3 * j - 1) / 2, j * (3 * j + 1) / 2]
            .into_iter()
            .enumerate()
        {
            if j == 0 && i == 1 {
                continue;
            }
            let e = g as u64 * k;
            if e <= cap {
                any = true;
                let s = if j % 2 == 0 { 1 } else { -1 };
                out.coeffs[e as usize] += s;
            }
        }
        if !any {
            break;
        }
    }
    out
}

/// Outcome of comparing one sector with its theta side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorCheck {
    pub sector: usize,
    pub pass: bool,
    /// First differing exponent as `(k, M)` meaning `q^{k/M}`.
    pub first_mismatch: Option<(u64, u64)>,
}

/// Compares `Z_σ·(q^d;q^d)_∞` with `½ Σ_n a_σ(n) q^{d(n²−1)/K₀}` for every sector, to `q^order`.
pub fn eta_theta_check(
    family: Family,
    d: i64,
    order: u64,
) -> Result<Vec<SectorCheck>, QSeriesError> {
    let alpha = family_datum(family, 1, d);
    let (g, series) = partition_series_all(&alpha, order)?;
    let level = family.level();
    let denom = (g.denom as i64 * level / num_integer::gcd(g.denom as i64, level)) as u64;
    let eta = euler_function(denom, order, d as u64 * denom);
    let cap = (order * denom) as i64;
    Ok(series
        .iter()
        .enumerate()
        .map(|(sector, z)| {
            let lhs = z.with_denom(denom).mul(&eta);
            let mut theta = QExpansion::zero(denom, order);
            for n in 0i64.. {
                let e = d * (n * n - 1) * denom as i64 / level;
                if e > cap {
                    break;
                }
                let c = family.theta_coefficient(sector, n);
                if c != 0 {
                    let mult = if n == 0 { 1 } else { 2 };
                    theta.coeffs[e as usize] += c * mult;
                }
            }
            let rhs = theta.div_exact(&BigInt::from(2));
            let first_mismatch = match &rhs {
                Some(rhs) => lhs.first_difference(rhs),
                None => Some((0, denom)),
            };
            SectorCheck {
                sector,
                pass: first_mismatch.is_none(),
                first_mismatch,
            }
        })
        .collect())
}

/// `Π_{n>0, n ≢ 0, ±(r+1) mod 2r+3} 1/(1−qⁿ)` to `q^order`.
pub fn product_side(r: u64, order: u64) -> QExpansion {
    let modulus = 2 * r + 3;
    let mut out = QExpansion::one(1, order);
    for n in 1..=order {
        let x = n % modulus;
        if x != 0 && x != r + 1 && x != modulus - r - 1 {
            out.divide_one_minus(n);
        }
    }
    out
}

/// Whether the partition series of the tadpole datum with `Å₊ = T_r` equals [`product_side`] to `q^order`.
pub fn andrews_gordon_check(r: usize, order: u64) -> Result<bool, QSeriesError> {
    let (g, series) = partition_series_all(&tadpole_swapped(r), order)?;
    if g.order != 1 {
        return Ok(false);
    }
    Ok(series[0]
        .first_difference(&product_side(r as u64, order))
        .is_none())
}

/// `(ε·log Z_tot(e^{−ε}), π²c_α/(6δ))` with `Z_tot` truncated at `q^order`.
pub fn asymptotic_ratio(alpha: &TDatum, eps: f64, order: u64) -> Result<(f64, f64), QSeriesError> {
    let z = total_series(alpha, order)?;
    let (_, c) =
        dilog_invariant(alpha, DEFAULT_TOLERANCE).map_err(|_| QSeriesError::NotPositiveDefinite)?;
    let lhs = eps * z.eval((-eps).exp()).ln();
    let rhs = PI * PI * c.c_float / (6.0 * alpha.delta() as f64);
    Ok((lhs, rhs))
}
