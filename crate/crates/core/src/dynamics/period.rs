use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{column_terms, evolve_t_standalone, DynamicsError};
use crate::cluster::Label;
use crate::correspondence::window;
use crate::semifield::TropicalElement;
use crate::tdatum::{validate_consistent, ConsistentSubset, Sign, TDatum};

pub const DEFAULT_TERM_CEILING: usize = 1_000_000;

const PRIME: u64 = (1 << 61) - 1;

/// Heuristic search bound `2 · max p_a · r · 24`.
pub fn default_bound(alpha: &TDatum) -> i64 {
    2 * alpha.max_p() * alpha.size() as i64 * 24
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub periodic: bool,
    pub omega: Option<i64>,
    pub bound: i64,
}

impl std::fmt::Display for PeriodReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.omega {
            Some(o) => write!(f, "periodic with period {o}"),
            None => write!(f, "no period up to {}", self.bound),
        }
    }
}

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

/// Trivial-coefficient T-system modulo a prime from random initial values.
/// Returns shifts `Ω ≤ bound`, multiples of `t`, at which the initial window recurs.
fn modular_candidates(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    bound: i64,
    rng: &mut StdRng,
) -> Option<Vec<i64>> {
    let r = alpha.size();
    let sigma = alpha.sigma();
    let p = alpha.p();
    let plus: Vec<_> = (0..r).map(|a| column_terms(alpha, Sign::Plus, a)).collect();
    let minus: Vec<_> = (0..r)
        .map(|a| column_terms(alpha, Sign::Minus, a))
        .collect();
    let initial = window(alpha, rr, 0);
    let mut values: BTreeMap<Label, u64> = initial
        .iter()
        .map(|&l| (l, rng.gen_range(1..PRIME)))
        .collect();
    let prod = |terms: &[(usize, i64, i64)], u: i64, values: &BTreeMap<Label, u64>| {
        terms.iter().fold(1, |acc, &(b, q, k)| {
            mul(acc, pow(values[&(b, u + q)], k as u64))
        })
    };
    let t = rr.t();
    let mut out = Vec::new();
    for u in 0..bound {
        for a in rr.at(u) {
            let den = values[&(a, u)];
            if den == 0 {
                return None;
            }
            let num = (prod(&minus[a], u, &values) + prod(&plus[a], u, &values)) % PRIME;
            let s = sigma[a];
            values.insert((s, u + p[s]), mul(num, inv(den)));
        }
        let omega = u + 1;
        if omega % t == 0
            && initial
                .iter()
                .all(|&(a, w)| values[&(a, w + omega)] == values[&(a, w)])
        {
            out.push(omega);
        }
    }
    Some(out)
}

/// Finds the least `Ω ≤ bound` with `T_a(u+Ω) = T_a(u)` for trivial coefficients.
///
/// Candidates come from a modular run, which can only over-report; each is then confirmed
/// on the exact Laurent polynomials.
pub fn detect_period(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    bound: i64,
) -> Result<PeriodReport, DynamicsError> {
    validate_consistent(alpha, rr).map_err(|v| {
        DynamicsError::Correspondence(crate::correspondence::CorrespondenceError::Inconsistent(v))
    })?;
    let mut rng = StdRng::seed_from_u64(0x7379_7374);
    let mut runs = Vec::new();
    while runs.len() < 2 {
        if let Some(c) = modular_candidates(alpha, rr, bound, &mut rng) {
            runs.push(c);
        }
    }
    let candidates: Vec<i64> = runs[0]
        .iter()
        .copied()
        .filter(|o| runs[1].contains(o))
        .collect();
    let none = PeriodReport {
        periodic: false,
        omega: None,
        bound,
    };
    let initial = window(alpha, rr, 0);
    for omega in candidates {
        let y: BTreeMap<Label, TropicalElement> = (0..omega + alpha.max_p())
            .flat_map(|u| {
                rr.at(u)
                    .into_iter()
                    .map(move |a| ((a, u), TropicalElement::one()))
            })
            .collect();
        let traj = match evolve_t_standalone(
            alpha,
            rr,
            &y,
            0,
            omega + alpha.max_p(),
            DEFAULT_TERM_CEILING,
        ) {
            Ok(traj) => traj,
            Err(DynamicsError::TooLarge(_)) => return Ok(none),
            Err(e) => return Err(e),
        };
        if initial
            .iter()
            .all(|&(a, w)| traj.get(a, w + omega) == traj.get(a, w))
        {
            return Ok(PeriodReport {
                periodic: true,
                omega: Some(omega),
                bound,
            });
        }
    }
    Ok(none)
}
