//! Rogers dilogarithm, the Nahm equation and the invariant `c_α`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;

use crate::laurent::RationalMatrix;
use crate::positivity::compute_k;
use crate::tdatum::TDatum;

pub const DEFAULT_TOLERANCE: f64 = 1e-13;
pub const MAX_DENOMINATOR: i64 = 10_000;
pub const RECOGNITION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyticError {
    #[error("Nahm iteration did not converge; residuals {0:?}")]
    NoConvergence(Vec<f64>),
    #[error("K is not available: {0}")]
    NoK(String),
    #[error("K∨D∨ is not positive definite")]
    NotPositiveDefinite,
}

/// `Li₂(x)` for `0 ≤ x ≤ 1`.
pub fn li2(x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x), "Li2 argument {x} outside [0,1]");
    if x == 1.0 {
        return PI * PI / 6.0;
    }
    if x > 0.5 {
        return PI * PI / 6.0 - x.ln() * (1.0 - x).ln() - li2(1.0 - x);
    }
    let mut sum = 0.0;
    let mut pow = x;
    let mut n = 1.0;
    while pow > 1e-18 * n * n {
        sum += pow / (n * n);
        pow *= x;
        n += 1.0;
    }
    sum
}

/// `L(x) = Li₂(x) + ½ log x log(1−x)`, with `L(0) = 0`, `L(1) = π²/6`.
pub fn rogers_l(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return PI * PI / 6.0;
    }
    li2(x) + 0.5 * x.ln() * (1.0 - x).ln()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NahmSolution {
    pub f: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

fn nahm_map(k: &[Vec<f64>], f: &[f64]) -> Vec<f64> {
    k.iter()
        .map(|row| {
            row.iter()
                .zip(f)
                .map(|(kab, fb)| kab * (1.0 - fb).ln())
                .sum::<f64>()
                .exp()
        })
        .collect()
}

fn residual(k: &[Vec<f64>], f: &[f64]) -> f64 {
    if !f.iter().all(|x| *x > 0.0 && *x < 1.0) {
        return f64::INFINITY;
    }
    let res = nahm_map(k, f)
        .iter()
        .zip(f)
        .map(|(g, x)| (g - x).abs())
        .fold(0.0, f64::max);
    if res.is_nan() {
        f64::INFINITY
    } else {
        res
    }
}

/// Solves `f_a = Π_b (1 − f_b)^{κ̌_ab}` in `(0,1)^r`.
pub fn nahm_solve(k_dual: &RationalMatrix, tolerance: f64) -> Result<NahmSolution, AnalyticError> {
    let k = k_dual.to_f64();
    let r = k.len();
    if r == 1 {
        // log f − κ log(1−f) is increasing in f.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut it = 0;
        while hi - lo > 1e-16 && it < 200 {
            let mid = 0.5 * (lo + hi);
            if mid.ln() - k[0][0] * (1.0 - mid).ln() > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            it += 1;
        }
        let f = vec![0.5 * (lo + hi)];
        return Ok(NahmSolution {
            residual: residual(&k, &f),
            f,
            iterations: it,
        });
    }
    let mut f = vec![0.5; r];
    let mut trace = Vec::new();
    let mut it = 0;
    while it < 500 {
        let g = nahm_map(&k, &f);
        let next: Vec<f64> = f.iter().zip(&g).map(|(x, y)| 0.5 * x + 0.5 * y).collect();
        if residual(&k, &next).is_infinite() {
            break;
        }
        f = next;
        it += 1;
        let res = residual(&k, &f);
        if res <= tolerance {
            return Ok(NahmSolution {
                f,
                residual: res,
                iterations: it,
            });
        }
        if it % 100 == 0 {
            trace.push(res);
        }
    }
    // Newton in x_a = −log(1 − f_a): G(x) = log(1 − e^{−x}) + K∨x.
    let km = DMatrix::from_fn(r, r, |i, j| k[i][j]);
    let mut x = DVector::from_iterator(
        r,
        f.iter().map(|v| -(1.0 - v.clamp(1e-12, 1.0 - 1e-12)).ln()),
    );
    for _ in 0..200 {
        let g = DVector::from_fn(r, |i, _| (1.0 - (-x[i]).exp()).ln()) + &km * &x;
        let jac = DMatrix::from_fn(r, r, |i, j| {
            let e = (-x[i]).exp();
            km[(i, j)] + if i == j { e / (1.0 - e) } else { 0.0 }
        });
        let Some(step) = jac.lu().solve(&g) else {
            break;
        };
        let mut t = 1.0;
        while (0..r).any(|i| x[i] - t * step[i] <= 0.0) {
            t *= 0.5;
        }
        x -= step * t;
        it += 1;
        f = x.iter().map(|v| 1.0 - (-v).exp()).collect();
        let res = residual(&k, &f);
        trace.push(res);
        if res <= tolerance {
            return Ok(NahmSolution {
                f,
                residual: res,
                iterations: it,
            });
        }
    }
    Err(AnalyticError::NoConvergence(trace))
}

/// Continued-fraction recognition with `den ≤ max_den` and `|x − n/den| < tol`.
pub fn recognize_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() < tol {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-300 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

/// `c_α` as a float and, when recognised, as a rational.
#[derive(Clone, Debug, PartialEq)]
pub struct DilogInvariant {
    pub c_float: f64,
    pub c_rational: Option<(i64, i64)>,
}

impl DilogInvariant {
    pub fn rational(&self) -> Option<BigRational> {
        self.c_rational
            .map(|(n, d)| BigRational::new(n.into(), d.into()))
    }
}

impl fmt::Display for DilogInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c_rational {
            Some((n, 1)) => write!(f, "{:.12} = {n}", self.c_float),
            Some((n, d)) => write!(f, "{:.12} = {n}/{d}", self.c_float),
            None => write!(f, "{:.12} (unrecognized)", self.c_float),
        }
    }
}

/// `(6/π²) Σ d_a L(f_a)`.
pub fn c_alpha(alpha: &TDatum, solution: &NahmSolution) -> DilogInvariant {
    let s: f64 = alpha
        .d()
        .iter()
        .zip(&solution.f)
        .map(|(&d, &f)| d as f64 * rogers_l(f))
        .sum();
    let c = 6.0 / (PI * PI) * s;
    DilogInvariant {
        c_float: c,
        c_rational: recognize_rational(c, MAX_DENOMINATOR, RECOGNITION_TOLERANCE),
    }
}

/// `K∨`, the Nahm solution and `c_α` for a Cartan-like datum of finite type.
pub fn dilog_invariant(
    alpha: &TDatum,
    tolerance: f64,
) -> Result<(NahmSolution, DilogInvariant), AnalyticError> {
    let km = compute_k(alpha).map_err(|e| AnalyticError::NoK(e.to_string()))?;
    if !km.kd_dual_positive_definite {
        return Err(AnalyticError::NotPositiveDefinite);
    }
    let sol = nahm_solve(&km.k_dual, tolerance)?;
    let c = c_alpha(alpha, &sol);
    Ok((sol, c))
}

/// `F_α(x) = ½ xᵀ K∨D∨ x + Σ (d∨_a)⁻¹ Li₂(e^{−d∨_a x_a})` and its gradient.
pub fn f_alpha(kd_dual: &[Vec<f64>], d_dual: &[f64], x: &[f64]) -> (f64, Vec<f64>) {
    let r = x.len();
    let qx: Vec<f64> = (0..r)
        .map(|a| (0..r).map(|b| kd_dual[a][b] * x[b]).sum())
        .collect();
    let mut val = 0.5 * x.iter().zip(&qx).map(|(a, b)| a * b).sum::<f64>();
    let mut grad = qx;
    for a in 0..r {
        let e = (-d_dual[a] * x[a]).exp();
        val += li2(e) / d_dual[a];
        grad[a] += (1.0 - e).ln();
    }
    (val, grad)
}
