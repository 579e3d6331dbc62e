use std::collections::BTreeSet;

use super::{ClusterError, ExchangeMatrix};

/// `(B, d, 𝐢 = 𝐢(0)|…|𝐢(t−1), ν)` with `μ_𝐢(B) = ν(B)` and `d = ν(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationLoop {
    pub b: ExchangeMatrix,
    pub blocks: Vec<Vec<usize>>,
    pub nu: Vec<usize>,
}

impl MutationLoop {
    pub fn new(b: ExchangeMatrix, blocks: Vec<Vec<usize>>, nu: Vec<usize>) -> Self {
        Self { b, blocks, nu }
    }

    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    pub fn size(&self) -> usize {
        self.b.size()
    }

    /// `B(0), …, B(t)`; fails on the first non-simultaneous block.
    pub fn stages(&self) -> Result<Vec<ExchangeMatrix>, ClusterError> {
        let mut cur = self.b.clone();
        let mut out = vec![cur.clone()];
        for (u, block) in self.blocks.iter().enumerate() {
            for (x, &i) in block.iter().enumerate() {
                if i >= cur.size() {
                    return Err(ClusterError::UnknownIndex(i));
                }
                for &j in &block[x + 1..] {
                    if i == j || cur.get(i, j) != 0 {
                        return Err(ClusterError::NotSimultaneous { block: u, i, j });
                    }
                }
            }
            for &i in block {
                cur = cur.mutate(i)?;
            }
            out.push(cur.clone());
        }
        Ok(out)
    }
}

pub fn verify_loop(gamma: &MutationLoop) -> Result<(), ClusterError> {
    let n = gamma.size();
    let mut seen = vec![false; n];
    for &v in &gamma.nu {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(ClusterError::NotPermutation);
        }
    }
    if gamma.nu.len() != n {
        return Err(ClusterError::NotPermutation);
    }
    let stages = gamma.stages()?;
    let last = stages.last().expect("at least B(0)");
    let target = gamma.b.relabel(&gamma.nu);
    for i in 0..n {
        if target.d()[i] != gamma.b.d()[i] {
            return Err(ClusterError::SymmetrizerNotInvariant { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if last.get(i, j) != target.get(i, j) {
                return Err(ClusterError::RelabelMismatch {
                    i,
                    j,
                    expected: target.get(i, j),
                    found: last.get(i, j),
                });
            }
        }
    }
    Ok(())
}

/// Powers of a permutation via its cycle decomposition.
#[derive(Clone, Debug)]
struct PermPowers {
    cycles: Vec<Vec<usize>>,
    place: Vec<(usize, usize)>,
}

impl PermPowers {
    fn new(nu: &[usize]) -> Self {
        let n = nu.len();
        let mut place = vec![(usize::MAX, 0); n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if place[s].0 != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            loop {
                place[x] = (cycles.len(), cyc.len());
                cyc.push(x);
                x = nu[x];
                if x == s {
                    break;
                }
            }
            cycles.push(cyc);
        }
        Self { cycles, place }
    }

    fn apply(&self, i: usize, k: i64) -> usize {
        let (c, pos) = self.place[i];
        let len = self.cycles[c].len() as i64;
        self.cycles[c][(pos as i64 + k).rem_euclid(len) as usize]
    }

    fn orbit_len(&self, i: usize) -> usize {
        self.cycles[self.place[i].0].len()
    }
}

/// Mutation points, latencies, next points and the labelling `π` of a mutation loop.
#[derive(Clone, Debug)]
pub struct LoopAnalysis {
    t: i64,
    n: usize,
    stages: Vec<ExchangeMatrix>,
    blocks: Vec<Vec<usize>>,
    powers: PermPowers,
    /// The `a`-th entry `(i_a, v_a)` of `𝐢(0)|…|𝐢(t−1)`.
    pub points: Vec<(usize, i64)>,
    /// `σ(a) = π(s(i_a, v_a))`.
    pub sigma: Vec<usize>,
    /// `λ_a`, the time from `(i_a, v_a)` to `s(i_a, v_a)`.
    pub lambda: Vec<i64>,
    /// Indices whose latency at time 0 is infinite.
    pub never_mutated: Vec<usize>,
}

impl LoopAnalysis {
    pub fn is_complete(&self) -> bool {
        self.never_mutated.is_empty()
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn split(&self, u: i64) -> (i64, usize) {
        (u.div_euclid(self.t), u.rem_euclid(self.t) as usize)
    }

    /// `B(u)_{ij}` for any integer `u`.
    pub fn b_entry(&self, u: i64, i: usize, j: usize) -> i64 {
        let (m, k) = self.split(u);
        self.stages[k].get(self.powers.apply(i, -m), self.powers.apply(j, -m))
    }

    /// `B(k)` for `0 ≤ k ≤ t`.
    pub fn stage(&self, k: usize) -> &ExchangeMatrix {
        &self.stages[k]
    }

    /// `𝐢(u)`.
    pub fn block(&self, u: i64) -> Vec<usize> {
        let (m, k) = self.split(u);
        self.blocks[k]
            .iter()
            .map(|&j| self.powers.apply(j, m))
            .collect()
    }

    pub fn in_p(&self, i: usize, u: i64) -> bool {
        let (m, k) = self.split(u);
        self.blocks[k].contains(&self.powers.apply(i, -m))
    }

    /// `π(i,u)` for `(i,u) ∈ P`.
    pub fn pi(&self, i: usize, u: i64) -> Option<usize> {
        let (m, k) = self.split(u);
        let j = self.powers.apply(i, -m);
        self.points
            .iter()
            .position(|&(x, v)| x == j && v == k as i64)
    }

    /// `λ(i,u)`; `None` if `i` is never mutated from time `u` on.
    pub fn latency(&self, i: usize, u: i64) -> Option<i64> {
        let bound = self.t * (self.powers.orbit_len(i) as i64 + 1);
        (0..=bound).find(|&v| self.in_p(i, u + v))
    }

    /// `s(i,u)`.
    pub fn next_point(&self, i: usize, u: i64) -> Option<(usize, i64)> {
        if self.in_p(i, u) {
            Some((i, u + 1 + self.latency(i, u + 1)?))
        } else {
            Some((i, u + self.latency(i, u)?))
        }
    }

    /// The latest `(i, v) ∈ P` with `v < u`.
    pub fn previous_point(&self, i: usize, u: i64) -> Option<(usize, i64)> {
        let bound = self.t * (self.powers.orbit_len(i) as i64 + 1);
        (1..=bound)
            .map(|v| u - v)
            .find(|&v| self.in_p(i, v))
            .map(|v| (i, v))
    }
}

pub fn analyze_loop(gamma: &MutationLoop) -> Result<LoopAnalysis, ClusterError> {
    if gamma.blocks.is_empty() {
        return Err(ClusterError::Shape);
    }
    let stages = gamma.stages()?;
    let points: Vec<(usize, i64)> = gamma
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(u, blk)| blk.iter().map(move |&i| (i, u as i64)))
        .collect();
    let mut analysis = LoopAnalysis {
        t: gamma.t() as i64,
        n: gamma.size(),
        stages,
        blocks: gamma.blocks.clone(),
        powers: PermPowers::new(&gamma.nu),
        points,
        sigma: Vec::new(),
        lambda: Vec::new(),
        never_mutated: Vec::new(),
    };
    analysis.never_mutated = (0..analysis.n)
        .filter(|&i| analysis.latency(i, 0).is_none())
        .collect();
    if !analysis.is_complete() {
        return Ok(analysis);
    }
    let mut sigma = Vec::with_capacity(analysis.r());
    let mut lambda = Vec::with_capacity(analysis.r());
    for &(i, v) in &analysis.points {
        let (j, w) = analysis.next_point(i, v).expect("complete loop");
        sigma.push(analysis.pi(j, w).expect("mutation point"));
        lambda.push(w - v);
    }
    let distinct: BTreeSet<usize> = sigma.iter().copied().collect();
    debug_assert_eq!(distinct.len(), sigma.len());
    analysis.sigma = sigma;
    analysis.lambda = lambda;
    Ok(analysis)
}
