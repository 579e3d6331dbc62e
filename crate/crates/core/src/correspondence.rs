//! Mutation loops from T-data and back.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::cluster::{
    analyze_loop, label_string, ClusterError, ExchangeMatrix, Label, LoopAnalysis, MutationLoop,
};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::tdatum::{
    validate_consistent, ConsistencyViolation, ConsistentSubset, Sign, TDatum, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorrespondenceError {
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("loop is incomplete: indices {0:?} are never mutated")]
    Incomplete(Vec<usize>),
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
    #[error("subset is not consistent: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Inconsistent(Vec<ConsistencyViolation>),
}

/// `ň^ε_{ab;p}`, the coefficients of `D⁻¹N_εD`.
fn dual_coeff(alpha: &TDatum, sign: Sign, a: usize, b: usize, p: i64) -> i64 {
    let d = alpha.d();
    alpha.n_coeff(sign, a, b, p) * d[b] / d[a]
}

/// Entry `B̄_{(a,u+p),(b,u+q)}` of the closed formula; independent of `u`.
pub fn bar_b_entry(alpha: &TDatum, a: usize, p: i64, b: usize, q: i64) -> i64 {
    use Sign::{Minus, Plus};
    let mut v = -alpha.n_coeff(Plus, a, b, p - q)
        + alpha.n_coeff(Minus, a, b, p - q)
        + dual_coeff(alpha, Plus, b, a, q - p)
        - dual_coeff(alpha, Minus, b, a, q - p);
    for c in 0..alpha.size() {
        for w in 0..=p.min(q) {
            v += alpha.n_coeff(Plus, a, c, p - w) * dual_coeff(alpha, Minus, b, c, q - w)
                - alpha.n_coeff(Minus, a, c, p - w) * dual_coeff(alpha, Plus, b, c, q - w);
        }
    }
    v
}

/// `R(u) = {(a,w) ∈ R : u ≤ w < u + p_a}`, sorted.
pub fn window(alpha: &TDatum, rr: &ConsistentSubset, u: i64) -> Vec<Label> {
    (0..alpha.size())
        .flat_map(|a| {
            (u..u + alpha.p()[a])
                .filter(move |&w| rr.contains(a, w))
                .map(move |w| (a, w))
        })
        .collect()
}

/// `B̄(u)` on the labels `R(u)`.
pub fn bar_b(alpha: &TDatum, rr: &ConsistentSubset, u: i64) -> ExchangeMatrix {
    let labels = window(alpha, rr, u);
    let rows = labels
        .iter()
        .map(|&(a, w)| {
            labels
                .iter()
                .map(|&(b, w2)| bar_b_entry(alpha, a, w - u, b, w2 - u))
                .collect()
        })
        .collect();
    let d = labels.iter().map(|&(a, _)| alpha.d()[a]).collect();
    ExchangeMatrix::new(rows, d, labels).expect("closed formula gives a skew-symmetrizable matrix")
}

/// `φ_u(a,w)`: unchanged unless `w = u`, in which case `(σ(a), u + p_{σ(a)})`.
pub fn phi(alpha: &TDatum, u: i64, l: Label) -> Label {
    let (a, w) = l;
    if w != u {
        return l;
    }
    let s = alpha.sigma()[a];
    (s, u + alpha.p()[s])
}

/// The staged data of the construction: labels carried by each vertex before step `u`.
#[derive(Clone, Debug)]
pub struct LoopConstruction {
    pub gamma: MutationLoop,
    pub carried: Vec<Vec<Label>>,
}

fn check_input(alpha: &TDatum, rr: &ConsistentSubset) -> Result<(), CorrespondenceError> {
    validate_consistent(alpha, rr).map_err(CorrespondenceError::Inconsistent)
}

/// The loop `G(α, R)`.
pub fn construct(
    alpha: &TDatum,
    rr: &ConsistentSubset,
) -> Result<LoopConstruction, CorrespondenceError> {
    check_input(alpha, rr)?;
    let b = bar_b(alpha, rr, 0);
    let t = rr.t();
    let mut labels: Vec<Label> = b.labels().to_vec();
    let mut carried = vec![labels.clone()];
    let mut blocks = Vec::with_capacity(t as usize);
    for u in 0..t {
        let mut block: Vec<(usize, usize)> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.1 == u)
            .map(|(i, l)| (l.0, i))
            .collect();
        block.sort();
        blocks.push(block.iter().map(|&(_, i)| i).collect());
        for l in labels.iter_mut() {
            *l = phi(alpha, u, *l);
        }
        carried.push(labels.clone());
    }
    let start = b.labels();
    let nu = start
        .iter()
        .map(|&(a, p)| {
            labels
                .iter()
                .position(|&l| l == (a, p + t))
                .expect("ψ^t(R(0)) = R(t)")
        })
        .collect();
    Ok(LoopConstruction {
        gamma: MutationLoop::new(b, blocks, nu),
        carried,
    })
}

/// The map `G`.
pub fn build_loop(
    alpha: &TDatum,
    rr: &ConsistentSubset,
) -> Result<MutationLoop, CorrespondenceError> {
    Ok(construct(alpha, rr)?.gamma)
}

/// A disagreement between `B̄(u+1)` and `φ_u(μ_{R₀(u)}(B̄(u)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedMismatch {
    pub u: i64,
    pub row: Label,
    pub col: Label,
    pub formula: i64,
    pub staged: i64,
}

impl std::fmt::Display for StagedMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "stage {}: entry ({}, {}) is {} by formula but {} by mutation",
            self.u,
            label_string(&self.row),
            label_string(&self.col),
            self.formula,
            self.staged
        )
    }
}

/// Checks `B̄(u+1) = φ_u(μ_{R₀(u)}(B̄(u)))` for `0 ≤ u < t`.
pub fn check_staged(alpha: &TDatum, rr: &ConsistentSubset) -> Result<(), Vec<StagedMismatch>> {
    let mut bad = Vec::new();
    for u in 0..rr.t() {
        let cur = bar_b(alpha, rr, u);
        let mut m = cur.clone();
        for (i, l) in cur.labels().iter().enumerate() {
            if l.1 == u {
                m = m.mutate(i).expect("index in range");
            }
        }
        let moved: Vec<Label> = cur.labels().iter().map(|&l| phi(alpha, u, l)).collect();
        let next = bar_b(alpha, rr, u + 1);
        let pos: BTreeMap<Label, usize> = moved.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        for (i, ri) in next.labels().iter().enumerate() {
            for (j, rj) in next.labels().iter().enumerate() {
                let staged = match (pos.get(ri), pos.get(rj)) {
                    (Some(&x), Some(&y)) => m.get(x, y),
                    _ => i64::MIN,
                };
                if staged != next.get(i, j) {
                    bad.push(StagedMismatch {
                        u,
                        row: *ri,
                        col: *rj,
                        formula: next.get(i, j),
                        staged,
                    });
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

fn add_coeff(m: &mut PolyMatrix, a: usize, b: usize, p: i64, c: i64) {
    if c != 0 {
        m.entry_mut(a, b).add_term(p, BigInt::from(c));
    }
}

/// `(σ, p, N₊, N₋, D)` read from a complete loop, before validation.
#[derive(Clone, Debug)]
pub struct TTriple {
    pub sigma: Vec<usize>,
    pub p: Vec<i64>,
    pub n0: PolyMatrix,
    pub n_plus: PolyMatrix,
    pub n_minus: PolyMatrix,
    pub d: Vec<i64>,
    pub residues: ConsistentSubset,
}

fn complete_analysis(gamma: &MutationLoop) -> Result<LoopAnalysis, CorrespondenceError> {
    let an = analyze_loop(gamma)?;
    if !an.is_complete() {
        return Err(CorrespondenceError::Incomplete(an.never_mutated.clone()));
    }
    Ok(an)
}

/// The T-system triple of a complete loop.
pub fn t_triple(gamma: &MutationLoop) -> Result<TTriple, CorrespondenceError> {
    let an = complete_analysis(gamma)?;
    let r = an.r();
    let mut p = vec![0; r];
    let mut n0 = PolyMatrix::identity(r);
    for a in 0..r {
        p[an.sigma[a]] = an.lambda[a];
        *n0.entry_mut(an.sigma[a], a) += &LaurentPoly::z_pow(an.lambda[a]);
    }
    let mut n_plus = PolyMatrix::zero(r);
    let mut n_minus = PolyMatrix::zero(r);
    for (a, &(k, u)) in an.points.iter().enumerate() {
        for j in 0..an.n() {
            let bjk = an.b_entry(u, j, k);
            if bjk == 0 {
                continue;
            }
            let (j2, w) = an.next_point(j, u).expect("complete loop");
            let b = an.pi(j2, w).expect("mutation point");
            let lat = an.latency(j, u).expect("complete loop");
            add_coeff(&mut n_plus, b, a, lat, (-bjk).max(0));
            add_coeff(&mut n_minus, b, a, lat, bjk.max(0));
        }
    }
    let d = an.points.iter().map(|&(k, _)| gamma.b.d()[k]).collect();
    let residues = ConsistentSubset::new(an.t(), an.points.iter().map(|&(_, v)| v).collect());
    Ok(TTriple {
        sigma: an.sigma.clone(),
        p,
        n0,
        n_plus,
        n_minus,
        d,
        residues,
    })
}

/// The map `F`.
pub fn extract_tdatum(
    gamma: &MutationLoop,
) -> Result<(TDatum, ConsistentSubset), CorrespondenceError> {
    let tt = t_triple(gamma)?;
    let alpha = TDatum::new(tt.sigma, tt.p, tt.n_plus, tt.n_minus, tt.d)?;
    Ok((alpha, tt.residues))
}

/// The Y-system triple `(Ň₀, Ň₊, Ň₋)` of a complete loop.
pub fn y_triple(
    gamma: &MutationLoop,
) -> Result<(PolyMatrix, PolyMatrix, PolyMatrix), CorrespondenceError> {
    let an = complete_analysis(gamma)?;
    let r = an.r();
    let mut n0 = PolyMatrix::identity(r);
    let mut n_plus = PolyMatrix::zero(r);
    let mut n_minus = PolyMatrix::zero(r);
    for (a, &(k, u)) in an.points.iter().enumerate() {
        let (_, prev) = an.previous_point(k, u).expect("complete loop");
        let b0 = an.pi(k, prev).expect("mutation point");
        *n0.entry_mut(a, b0) += &LaurentPoly::z_pow(u - prev);
        for v in prev..u {
            for j in an.block(v) {
                let bjk = an.b_entry(v, j, k);
                if bjk == 0 {
                    continue;
                }
                let b = an.pi(j, v).expect("mutation point");
                add_coeff(&mut n_plus, a, b, u - v, bjk.max(0));
                add_coeff(&mut n_minus, a, b, u - v, (-bjk).max(0));
            }
        }
    }
    Ok((n0, n_plus, n_minus))
}

/// An entry where one of the duality identities fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityFailure {
    pub identity: &'static str,
    pub a: usize,
    pub b: usize,
}

impl std::fmt::Display for DualityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at ({},{})",
            self.identity,
            self.a + 1,
            self.b + 1
        )
    }
}

fn compare(identity: &'static str, x: &PolyMatrix, y: &PolyMatrix, out: &mut Vec<DualityFailure>) {
    for a in 0..x.size() {
        for b in 0..x.size() {
            if x.get(a, b) != y.get(a, b) {
                out.push(DualityFailure { identity, a, b });
            }
        }
    }
}

/// Checks `Ň₀ = N₀`, `D Ň_ε = N_ε D` and `A₊∨ A₋† = A₋∨ A₊†` on the triples read from a loop.
pub fn verify_duality(gamma: &MutationLoop) -> Result<Vec<DualityFailure>, CorrespondenceError> {
    let tt = t_triple(gamma)?;
    let (y0, yp, ym) = y_triple(gamma)?;
    let mut out = Vec::new();
    compare("N0 dual = N0", &y0, &tt.n0, &mut out);
    compare(
        "D N+ dual = N+ D",
        &yp.scale_rows(&tt.d),
        &tt.n_plus.scale_cols(&tt.d),
        &mut out,
    );
    compare(
        "D N- dual = N- D",
        &ym.scale_rows(&tt.d),
        &tt.n_minus.scale_cols(&tt.d),
        &mut out,
    );
    let ap_dual = &y0 - &yp;
    let am_dual = &y0 - &ym;
    let ap = &tt.n0 - &tt.n_plus;
    let am = &tt.n0 - &tt.n_minus;
    compare(
        "A+ dual A- dagger = A- dual A+ dagger",
        &(&ap_dual * &am.dagger()),
        &(&am_dual * &ap.dagger()),
        &mut out,
    );
    Ok(out)
}

/// `ρ(a)` = rank of `a` when indices are ordered by `(c_a, a)`.
pub fn canonical_order(rr: &ConsistentSubset) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..rr.size()).collect();
    idx.sort_by_key(|&a| (rr.residue(a), a));
    let mut rho = vec![0; idx.len()];
    for (rank, a) in idx.into_iter().enumerate() {
        rho[a] = rank;
    }
    rho
}

/// Checks `F(G(α,R)) = ρ(α, R)` for the canonical relabelling `ρ`.
pub fn round_trip_fg(alpha: &TDatum, rr: &ConsistentSubset) -> Result<bool, CorrespondenceError> {
    let gamma = build_loop(alpha, rr)?;
    let (beta, ss) = extract_tdatum(&gamma)?;
    let rho = canonical_order(rr);
    Ok(beta == alpha.permute(&rho) && ss == rr.permute(&rho))
}

/// Checks `G(F(γ)) = γ` up to the relabelling `f` of vertices by their next mutation points.
pub fn round_trip_gf(gamma: &MutationLoop) -> Result<Result<(), String>, CorrespondenceError> {
    let an = complete_analysis(gamma)?;
    let (alpha, rr) = extract_tdatum(gamma)?;
    let g2 = build_loop(&alpha, &rr)?;
    let n = gamma.size();
    if g2.size() != n || g2.t() != gamma.t() {
        return Ok(Err(format!(
            "size or length differs: {} vs {}",
            g2.size(),
            n
        )));
    }
    let mut f = vec![0usize; n];
    for i in 0..n {
        let label = if an.in_p(i, 0) {
            (an.pi(i, 0).expect("point"), 0)
        } else {
            let (j, w) = an.next_point(i, 0).expect("complete");
            (an.pi(j, w).expect("point"), w)
        };
        match g2.b.index_of(&label) {
            Some(x) => f[i] = x,
            None => return Ok(Err(format!("label {} missing", label_string(&label)))),
        }
    }
    for i in 0..n {
        if g2.b.d()[f[i]] != gamma.b.d()[i] {
            return Ok(Err(format!("symmetrizer differs at {i}")));
        }
        for j in 0..n {
            if g2.b.get(f[i], f[j]) != gamma.b.get(i, j) {
                return Ok(Err(format!("B differs at ({i},{j})")));
            }
        }
        if g2.nu[f[i]] != f[gamma.nu[i]] {
            return Ok(Err(format!("nu differs at {i}")));
        }
    }
    for (u, block) in gamma.blocks.iter().enumerate() {
        let mut mine: Vec<usize> = block.iter().map(|&i| f[i]).collect();
        let mut theirs = g2.blocks[u].clone();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Ok(Err(format!("block {u} differs")));
        }
    }
    Ok(Ok(()))
}
