//! Evolution of T-systems and Y-systems.

mod period;
mod standalone;
mod tropical;

pub use period::{default_bound, detect_period, PeriodReport, DEFAULT_TERM_CEILING};
pub use standalone::{check_y_system, evolve_t, evolve_t_standalone, TTrajectory};
pub use tropical::{check_tropical_lemma, tropical_t, TropicalTable};

use std::collections::BTreeMap;

use crate::cluster::{ClusterError, ClusterPoly, ExchangeMatrix, Label, SymbolicSeed};
use crate::correspondence::{bar_b, phi, window, CorrespondenceError};
use crate::semifield::TropicalElement;
use crate::tdatum::{validate_consistent, ConsistentSubset, Sign, TDatum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("expected {expected} values on the initial window, got {got}")]
    WindowSize { expected: usize, got: usize },
    #[error("missing value Y_{} at {}", .0.0 + 1, .0.1)]
    MissingY(Label),
    #[error("division by T_{}({}) is not exact", .0.0 + 1, .0.1)]
    InexactDivision(Label),
    #[error("a Laurent polynomial exceeded {0} terms")]
    TooLarge(usize),
}

/// Coefficients of a T-system or Y-system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YSpec {
    /// All `Y_a(u) = 1`.
    Trivial,
    /// Y-seed `y_i` = generator `y{i+1}` on the initial window.
    Principal,
    /// Explicit Y-seed on the initial window, in window order.
    Seed(Vec<TropicalElement>),
    /// Values `Y_a(p)` of a Y-system solution on the initial window, in window order.
    Solution(Vec<TropicalElement>),
}

/// `(b, p, n_{ba;p})` for the nonzero coefficients in column `a` of `N_ε`.
pub(crate) fn column_terms(alpha: &TDatum, sign: Sign, a: usize) -> Vec<(usize, i64, i64)> {
    let mut out = Vec::new();
    for b in 0..alpha.size() {
        for (p, c) in alpha.n(sign).get(b, a).terms() {
            out.push((b, p, i64::try_from(c).expect("small coefficient")));
        }
    }
    out
}

/// `(b, p, ň_{ab;p})` for the nonzero coefficients in row `a` of `D⁻¹N_εD`.
pub(crate) fn dual_row_terms(alpha: &TDatum, sign: Sign, a: usize) -> Vec<(usize, i64, i64)> {
    let d = alpha.d();
    let mut out = Vec::new();
    for b in 0..alpha.size() {
        for (p, c) in alpha.n(sign).get(a, b).terms() {
            out.push((
                b,
                p,
                i64::try_from(c).expect("small coefficient") * d[b] / d[a],
            ));
        }
    }
    out
}

/// Names `x1, x2, ...` of the initial cluster variables.
pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// The Y-seed on `R_in` determined by a Y-system solution.
pub fn y_seed_from_solution(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    values: &[TropicalElement],
) -> Result<Vec<TropicalElement>, DynamicsError> {
    let labels = window(alpha, rr, 0);
    if values.len() != labels.len() {
        return Err(DynamicsError::WindowSize {
            expected: labels.len(),
            got: values.len(),
        });
    }
    let y: BTreeMap<Label, &TropicalElement> = labels.iter().copied().zip(values).collect();
    let get = |l: Label| y.get(&l).copied().ok_or(DynamicsError::MissingY(l));
    labels
        .iter()
        .map(|&(a, p)| {
            let mut acc = get((a, p))?.clone();
            for (b, q, c) in dual_row_terms(alpha, Sign::Plus, a) {
                if q <= p {
                    acc = &acc * &get((b, p - q))?.inv().one_plus().pow(c);
                }
            }
            for (b, q, c) in dual_row_terms(alpha, Sign::Minus, a) {
                if q <= p {
                    acc = &acc * &get((b, p - q))?.one_plus().pow(-c);
                }
            }
            Ok(acc)
        })
        .collect()
}

/// The initial Y-seed on `R_in` described by `spec`.
pub fn initial_y_seed(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    spec: &YSpec,
) -> Result<Vec<TropicalElement>, DynamicsError> {
    let n = window(alpha, rr, 0).len();
    match spec {
        YSpec::Trivial => Ok(vec![TropicalElement::one(); n]),
        YSpec::Principal => Ok((1..=n)
            .map(|i| TropicalElement::generator(&format!("y{i}")))
            .collect()),
        YSpec::Seed(y) if y.len() == n => Ok(y.clone()),
        YSpec::Seed(y) => Err(DynamicsError::WindowSize {
            expected: n,
            got: y.len(),
        }),
        YSpec::Solution(v) => y_seed_from_solution(alpha, rr, v),
    }
}

/// Seeds along the loop `G(α,R)`, each vertex carrying a label in the current window `R(u)`.
#[derive(Clone, Debug)]
pub struct SeedEvolution {
    alpha: TDatum,
    rr: ConsistentSubset,
    seed: SymbolicSeed,
    carried: Vec<Label>,
    u: i64,
}

impl SeedEvolution {
    /// Starts at `u = 0`; `with_cluster = false` evolves a Y-seed only.
    pub fn new(
        alpha: &TDatum,
        rr: &ConsistentSubset,
        spec: &YSpec,
        with_cluster: bool,
    ) -> Result<Self, DynamicsError> {
        validate_consistent(alpha, rr)
            .map_err(|v| DynamicsError::Correspondence(CorrespondenceError::Inconsistent(v)))?;
        let b: ExchangeMatrix = bar_b(alpha, rr, 0);
        let y = initial_y_seed(alpha, rr, spec)?;
        let carried = b.labels().to_vec();
        let seed = if with_cluster {
            SymbolicSeed::initial(b, y)
        } else {
            SymbolicSeed::y_seed(b, y)
        };
        Ok(Self {
            alpha: alpha.clone(),
            rr: rr.clone(),
            seed,
            carried,
            u: 0,
        })
    }

    pub fn time(&self) -> i64 {
        self.u
    }

    pub fn seed(&self) -> &SymbolicSeed {
        &self.seed
    }

    /// Labels carried by the vertices.
    pub fn carried(&self) -> &[Label] {
        &self.carried
    }

    /// `T_a(w)` for every `(a,w)` in the current window.
    pub fn window_values(&self) -> Vec<(Label, ClusterPoly)> {
        self.carried
            .iter()
            .copied()
            .zip(self.seed.x.iter().cloned())
            .collect()
    }

    /// Mutates at `R₀(u)`; returns `Y_a(u)` and `T_a(u)` read before mutation.
    #[allow(clippy::type_complexity)]
    pub fn step_forward(
        &mut self,
    ) -> Result<Vec<(Label, TropicalElement, Option<ClusterPoly>)>, DynamicsError> {
        let u = self.u;
        let mut out = Vec::new();
        let mut idx: Vec<(Label, usize)> = self
            .carried
            .iter()
            .enumerate()
            .filter(|(_, l)| l.1 == u)
            .map(|(i, l)| (*l, i))
            .collect();
        idx.sort();
        for &(l, i) in &idx {
            out.push((l, self.seed.y[i].clone(), self.seed.x.get(i).cloned()));
        }
        for &(_, i) in &idx {
            self.seed = self.seed.mutate(i)?;
        }
        for l in self.carried.iter_mut() {
            *l = phi(&self.alpha, u, *l);
        }
        self.u += 1;
        Ok(out)
    }

    /// Undoes [`step_forward`](Self::step_forward); returns `Y_a(u-1)` and `T_a(u-1)`.
    #[allow(clippy::type_complexity)]
    pub fn step_backward(
        &mut self,
    ) -> Result<Vec<(Label, TropicalElement, Option<ClusterPoly>)>, DynamicsError> {
        let u = self.u - 1;
        let sigma = self.alpha.sigma();
        let p = self.alpha.p();
        let mut idx = Vec::new();
        for a in self.rr.at(u) {
            let s = sigma[a];
            let target = (s, u + p[s]);
            let i = self
                .carried
                .iter()
                .position(|&l| l == target)
                .expect("label in window");
            idx.push(((a, u), i));
        }
        for &(_, i) in &idx {
            self.seed = self.seed.mutate(i)?;
        }
        let mut out = Vec::new();
        for &(l, i) in &idx {
            self.carried[i] = l;
            out.push((l, self.seed.y[i].clone(), self.seed.x.get(i).cloned()));
        }
        self.u = u;
        Ok(out)
    }
}

/// `Y_a(u)` for `(a,u) ∈ R` with `from ≤ u < to`, by Y-seed mutation along the loop.
pub fn evolve_y(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    spec: &YSpec,
    from: i64,
    to: i64,
) -> Result<BTreeMap<Label, TropicalElement>, DynamicsError> {
    let mut out = BTreeMap::new();
    let mut ev = SeedEvolution::new(alpha, rr, spec, false)?;
    while ev.time() < to {
        for (l, y, _) in ev.step_forward()? {
            if l.1 >= from {
                out.insert(l, y);
            }
        }
    }
    let mut ev = SeedEvolution::new(alpha, rr, spec, false)?;
    while ev.time() > from.min(0) {
        for (l, y, _) in ev.step_backward()? {
            if l.1 < to && l.1 >= from {
                out.insert(l, y);
            }
        }
    }
    Ok(out)
}

/// `T_a(u)` for `(a,u) ∈ R` with `from ≤ u ≤ to`, by seed mutation along the loop.
pub fn evolve_t_seed(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    spec: &YSpec,
    from: i64,
    to: i64,
) -> Result<BTreeMap<Label, ClusterPoly>, DynamicsError> {
    let mut out = BTreeMap::new();
    let mut keep = |l: Label, x: ClusterPoly| {
        if l.1 >= from && l.1 <= to {
            out.insert(l, x);
        }
    };
    let mut ev = SeedEvolution::new(alpha, rr, spec, true)?;
    for (l, x) in ev.window_values() {
        keep(l, x);
    }
    while ev.time() < to {
        ev.step_forward()?;
        for (l, x) in ev.window_values() {
            keep(l, x);
        }
    }
    let mut ev = SeedEvolution::new(alpha, rr, spec, true)?;
    while ev.time() > from {
        for (l, _, x) in ev.step_backward()? {
            keep(l, x.expect("cluster present"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
