use std::collections::BTreeMap;

use super::{column_terms, dual_row_terms, evolve_y, variable_names, DynamicsError, YSpec};
use crate::cluster::{ClusterPoly, Label};
use crate::correspondence::window;
use crate::semifield::{tropical_hensel_pair, GroupRingElement, TropicalElement};
use crate::tdatum::{validate_consistent, ConsistentSubset, Sign, TDatum};

/// Values `T_a(u)` as Laurent polynomials in the initial window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTrajectory {
    pub initial: Vec<Label>,
    pub values: BTreeMap<Label, ClusterPoly>,
}

impl TTrajectory {
    pub fn get(&self, a: usize, u: i64) -> Option<&ClusterPoly> {
        self.values.get(&(a, u))
    }

    pub fn names(&self) -> Vec<String> {
        variable_names(self.initial.len())
    }

    pub fn to_string_at(&self, a: usize, u: i64) -> Option<String> {
        self.get(a, u).map(|x| x.to_fraction_string(&self.names()))
    }
}

struct Relation {
    plus: Vec<Vec<(usize, i64, i64)>>,
    minus: Vec<Vec<(usize, i64, i64)>>,
}

impl Relation {
    fn new(alpha: &TDatum) -> Self {
        let r = alpha.size();
        Self {
            plus: (0..r).map(|a| column_terms(alpha, Sign::Plus, a)).collect(),
            minus: (0..r)
                .map(|a| column_terms(alpha, Sign::Minus, a))
                .collect(),
        }
    }

    /// `P⁺_a(u) Π T^{n⁻} + P⁻_a(u) Π T^{n⁺}`.
    fn rhs(
        &self,
        a: usize,
        u: i64,
        y: &TropicalElement,
        values: &BTreeMap<Label, ClusterPoly>,
        n: usize,
    ) -> ClusterPoly {
        let (pp, pm) = tropical_hensel_pair(y);
        let product = |terms: &[(usize, i64, i64)], c: &TropicalElement| {
            let mut acc = ClusterPoly::constant(n, GroupRingElement::from_semifield(c));
            for &(b, p, k) in terms {
                acc = acc.mul(&values[&(b, u + p)].pow(k as u32));
            }
            acc
        };
        product(&self.minus[a], &pp).add(&product(&self.plus[a], &pm))
    }
}

/// Runs the T-system relation directly, dividing exactly at each step.
///
/// `y` must hold `Y_a(u)` for every `(a,u) ∈ R` with `from ≤ u < to`.
pub fn evolve_t_standalone(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    y: &BTreeMap<Label, TropicalElement>,
    from: i64,
    to: i64,
    ceiling: usize,
) -> Result<TTrajectory, DynamicsError> {
    validate_consistent(alpha, rr).map_err(|v| {
        DynamicsError::Correspondence(crate::correspondence::CorrespondenceError::Inconsistent(v))
    })?;
    let initial = window(alpha, rr, 0);
    let n = initial.len();
    let rel = Relation::new(alpha);
    let sigma = alpha.sigma();
    let p = alpha.p();
    let mut values: BTreeMap<Label, ClusterPoly> = initial
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, ClusterPoly::var(n, i)))
        .collect();
    let get_y = |l: Label| y.get(&l).cloned().ok_or(DynamicsError::MissingY(l));
    let check = |x: &ClusterPoly| {
        if x.num_terms() > ceiling {
            Err(DynamicsError::TooLarge(ceiling))
        } else {
            Ok(())
        }
    };
    for u in 0..to {
        for a in rr.at(u) {
            let rhs = rel.rhs(a, u, &get_y((a, u))?, &values, n);
            let s = sigma[a];
            let x = rhs
                .div_exact(&values[&(a, u)])
                .ok_or(DynamicsError::InexactDivision((a, u)))?;
            check(&x)?;
            values.insert((s, u + p[s]), x);
        }
    }
    for u in (from..0).rev() {
        for a in rr.at(u) {
            let rhs = rel.rhs(a, u, &get_y((a, u))?, &values, n);
            let s = sigma[a];
            let den = (s, u + p[s]);
            let x = rhs
                .div_exact(&values[&den])
                .ok_or(DynamicsError::InexactDivision(den))?;
            check(&x)?;
            values.insert((a, u), x);
        }
    }
    values.retain(|l, _| l.1 >= from && l.1 <= to);
    Ok(TTrajectory { initial, values })
}

/// `T_a(u)` for `(a,u) ∈ R`, `from ≤ u ≤ to`, with coefficients read off the Y-seed route.
pub fn evolve_t(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    spec: &YSpec,
    from: i64,
    to: i64,
) -> Result<TTrajectory, DynamicsError> {
    let y = evolve_y(alpha, rr, spec, from.min(0), to.max(0))?;
    evolve_t_standalone(alpha, rr, &y, from, to, super::DEFAULT_TERM_CEILING)
}

/// Labels `(a,u)` where the Y-system relation fails; relations reaching outside `values` are skipped.
pub fn check_y_system(alpha: &TDatum, values: &BTreeMap<Label, TropicalElement>) -> Vec<Label> {
    let sinv = alpha.sigma_inv();
    let p = alpha.p();
    let mut bad = Vec::new();
    'outer: for (&(a, u), ya) in values {
        let Some(prev) = values.get(&(sinv[a], u - p[a])) else {
            continue;
        };
        let lhs = ya * prev;
        let mut rhs = TropicalElement::one();
        for (b, q, c) in dual_row_terms(alpha, Sign::Minus, a) {
            let Some(yb) = values.get(&(b, u - q)) else {
                continue 'outer;
            };
            rhs = &rhs * &yb.one_plus().pow(c);
        }
        for (b, q, c) in dual_row_terms(alpha, Sign::Plus, a) {
            let Some(yb) = values.get(&(b, u - q)) else {
                continue 'outer;
            };
            rhs = &rhs * &yb.inv().one_plus().pow(-c);
        }
        if lhs != rhs {
            bad.push((a, u));
        }
    }
    bad
}
