use std::collections::BTreeMap;

use super::column_terms;
use crate::tdatum::{Sign, TDatum};

/// `𝔱_a^{(c)}(u)` on `[1,r] × [from, to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalTable {
    pub c: usize,
    pub tilde: bool,
    pub values: BTreeMap<(usize, i64), i64>,
}

impl TropicalTable {
    pub fn get(&self, a: usize, u: i64) -> Option<i64> {
        self.values.get(&(a, u)).copied()
    }

    /// `ŷ_a(u) = Σ (n⁻_{ba;p} − n⁺_{ba;p}) 𝔱_b(u+p)`, when the table reaches far enough.
    pub fn y_hat(&self, alpha: &TDatum, a: usize, u: i64) -> Option<i64> {
        let mut v = 0;
        for (b, p, k) in column_terms(alpha, Sign::Minus, a) {
            v += k * self.get(b, u + p)?;
        }
        for (b, p, k) in column_terms(alpha, Sign::Plus, a) {
            v -= k * self.get(b, u + p)?;
        }
        Some(v)
    }
}

fn side(terms: &[(usize, i64, i64)], u: i64, values: &BTreeMap<(usize, i64), i64>) -> i64 {
    terms.iter().map(|&(b, p, k)| k * values[&(b, u + p)]).sum()
}

/// The tropical T-system on `R = [1,r] × ℤ` with initial value `∓1` at `(c,0)`.
///
/// `tilde` selects `+1` at `(c,0)`; `from ≤ 0 ≤ to`.
pub fn tropical_t(alpha: &TDatum, c: usize, from: i64, to: i64, tilde: bool) -> TropicalTable {
    let r = alpha.size();
    let sigma = alpha.sigma();
    let p = alpha.p();
    let plus: Vec<_> = (0..r).map(|a| column_terms(alpha, Sign::Plus, a)).collect();
    let minus: Vec<_> = (0..r)
        .map(|a| column_terms(alpha, Sign::Minus, a))
        .collect();
    let mut values = BTreeMap::new();
    for a in 0..r {
        for q in 0..p[a] {
            let v = if (a, q) == (c, 0) {
                if tilde {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            values.insert((a, q), v);
        }
    }
    for u in 0..to.max(0) {
        for a in 0..r {
            let m = side(&minus[a], u, &values).max(side(&plus[a], u, &values));
            let s = sigma[a];
            values.insert((s, u + p[s]), m - values[&(a, u)]);
        }
    }
    for u in (from.min(0)..0).rev() {
        for a in 0..r {
            let m = side(&minus[a], u, &values).max(side(&plus[a], u, &values));
            let s = sigma[a];
            values.insert((a, u), m - values[&(s, u + p[s])]);
        }
    }
    values.retain(|l, _| l.1 >= from && l.1 <= to);
    TropicalTable { c, tilde, values }
}

/// Checks the values of `𝔱^{(c)}` and `ŷ^{(c)}` around the initial window, for every `c`.
pub fn check_tropical_lemma(alpha: &TDatum) -> Result<(), String> {
    let r = alpha.size();
    let sigma = alpha.sigma();
    let sinv = alpha.sigma_inv();
    let p = alpha.p();
    let reach = 2 * alpha.max_p() + 1;
    for c in 0..r {
        let tab = tropical_t(alpha, c, -reach, reach, false);
        for a in 0..r {
            let want = i64::from(a == sigma[c]);
            if tab.get(a, p[a]) != Some(want) {
                return Err(format!("t_{}({}) != {want} for c = {}", a + 1, p[a], c + 1));
            }
            for q in 0..=p[c] {
                let want = if (a, q) == (c, 0) {
                    -1
                } else if (a, q) == (sinv[c], p[c]) {
                    1
                } else {
                    0
                };
                if tab.get(a, -q) != Some(want) {
                    return Err(format!("t_{}({}) != {want} for c = {}", a + 1, -q, c + 1));
                }
                let y = tab.y_hat(alpha, a, -q).ok_or("table too short")?;
                if y.max(0) != alpha.n_coeff(Sign::Plus, c, a, q)
                    || (-y).max(0) != alpha.n_coeff(Sign::Minus, c, a, q)
                {
                    return Err(format!(
                        "y_{}({}) = {y} disagrees with N at c = {}",
                        a + 1,
                        -q,
                        c + 1
                    ));
                }
            }
        }
    }
    Ok(())
}
