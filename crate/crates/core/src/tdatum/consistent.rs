use std::fmt;

use num_traits::Zero;

use super::{Sign, TDatum};

/// `R = {(a,u) : u ≡ c_a mod t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsistentSubset {
    t: i64,
    residues: Vec<i64>,
}

impl ConsistentSubset {
    /// Residues are reduced into `[0, t)`.
    pub fn new(t: i64, residues: Vec<i64>) -> Self {
        assert!(t > 0, "t must be positive");
        let residues = residues.into_iter().map(|c| c.rem_euclid(t)).collect();
        Self { t, residues }
    }

    /// `[1,r] × ℤ`.
    pub fn whole(r: usize) -> Self {
        Self::new(1, vec![0; r])
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    pub fn residue(&self, a: usize) -> i64 {
        self.residues[a]
    }

    pub fn size(&self) -> usize {
        self.residues.len()
    }

    pub fn contains(&self, a: usize, u: i64) -> bool {
        (u - self.residues[a]).rem_euclid(self.t) == 0
    }

    /// Indices `a` with `(a,u) ∈ R`, ascending.
    pub fn at(&self, u: i64) -> Vec<usize> {
        (0..self.size()).filter(|&a| self.contains(a, u)).collect()
    }

    pub fn permute(&self, rho: &[usize]) -> Self {
        let mut residues = vec![0; self.size()];
        for (a, &c) in self.residues.iter().enumerate() {
            residues[rho[a]] = c;
        }
        Self {
            t: self.t,
            residues,
        }
    }

    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self::new(self.t, idx.iter().map(|&a| self.residues[a]).collect())
    }
}

impl fmt::Display for ConsistentSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={}, c=(", self.t)?;
        for (i, c) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A nonzero `n^ε_{ab;p}` whose residues violate `c_b ≡ c_a − p (mod t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub matrix: &'static str,
    pub a: usize,
    pub b: usize,
    pub p: i64,
}

impl fmt::Display for ConsistencyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n{}_{{{},{};{}}} is nonzero but c_{} ≢ c_{} - {}",
            self.matrix,
            self.a + 1,
            self.b + 1,
            self.p,
            self.b + 1,
            self.a + 1,
            self.p
        )
    }
}

pub fn validate_consistent(
    alpha: &TDatum,
    rr: &ConsistentSubset,
) -> Result<(), Vec<ConsistencyViolation>> {
    let r = alpha.size();
    if rr.size() != r {
        return Err(vec![ConsistencyViolation {
            matrix: "size",
            a: 0,
            b: 0,
            p: 0,
        }]);
    }
    let ok = |a: usize, b: usize, p: i64| (rr.residue(b) - rr.residue(a) + p).rem_euclid(rr.t) == 0;
    let mut v = Vec::new();
    for b in 0..r {
        let a = alpha.sigma()[b];
        if !ok(a, b, alpha.p()[a]) {
            v.push(ConsistencyViolation {
                matrix: "0",
                a,
                b,
                p: alpha.p()[a],
            });
        }
    }
    for (name, sign) in [("+", Sign::Plus), ("-", Sign::Minus)] {
        for a in 0..r {
            for b in 0..r {
                for (p, c) in alpha.n(sign).get(a, b).terms() {
                    if !c.is_zero() && !ok(a, b, p) {
                        v.push(ConsistencyViolation {
                            matrix: name,
                            a,
                            b,
                            p,
                        });
                    }
                }
            }
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// A permutation `ρ` with `α′ = ρ(α)` and `R′ = ρ(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDatumEquivalence {
    pub rho: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("equivalence search supports r <= {max}, got r = {r}")]
    TooLarge { r: usize, max: usize },
}

pub const MAX_EQUIVALENCE_SIZE: usize = 8;

/// Exhaustive permutation search with pruning; `Ok(None)` when inequivalent.
pub fn find_equivalence(
    alpha: &TDatum,
    rr: &ConsistentSubset,
    beta: &TDatum,
    ss: &ConsistentSubset,
) -> Result<Option<TDatumEquivalence>, EquivalenceError> {
    let r = alpha.size();
    if r > MAX_EQUIVALENCE_SIZE {
        return Err(EquivalenceError::TooLarge {
            r,
            max: MAX_EQUIVALENCE_SIZE,
        });
    }
    if beta.size() != r || rr.t() != ss.t() || rr.size() != r || ss.size() != r {
        return Ok(None);
    }
    let local = |x: &TDatum, s: &ConsistentSubset, a: usize| {
        (
            x.p()[a],
            x.d()[a],
            s.residue(a),
            x.n_plus().get(a, a).clone(),
            x.n_minus().get(a, a).clone(),
            x.sigma()[a] == a,
        )
    };
    let mut rho = vec![usize::MAX; r];
    let mut used = vec![false; r];
    fn extend(
        k: usize,
        rho: &mut Vec<usize>,
        used: &mut Vec<bool>,
        fits: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        let r = rho.len();
        if k == r {
            return true;
        }
        for j in 0..r {
            if !used[j] && fits(rho, k, j) {
                rho[k] = j;
                used[j] = true;
                if extend(k + 1, rho, used, fits) {
                    return true;
                }
                used[j] = false;
                rho[k] = usize::MAX;
            }
        }
        false
    }
    let fits = |rho: &[usize], k: usize, j: usize| {
        if local(alpha, rr, k) != local(beta, ss, j) {
            return false;
        }
        for i in 0..k {
            let ri = rho[i];
            for sign in Sign::BOTH {
                if alpha.n(sign).get(i, k) != beta.n(sign).get(ri, j)
                    || alpha.n(sign).get(k, i) != beta.n(sign).get(j, ri)
                {
                    return false;
                }
            }
            if (alpha.sigma()[i] == k) != (beta.sigma()[ri] == j)
                || (alpha.sigma()[k] == i) != (beta.sigma()[j] == ri)
            {
                return false;
            }
        }
        true
    };
    if extend(0, &mut rho, &mut used, &fits) {
        debug_assert_eq!(&alpha.permute(&rho), beta);
        Ok(Some(TDatumEquivalence { rho }))
    } else {
        Ok(None)
    }
}

/// Splits `α` into indecomposable summands; each part comes with its (ascending) indices.
pub fn decompose(alpha: &TDatum) -> Vec<(TDatum, Vec<usize>)> {
    let r = alpha.size();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut y = x;
        while parent[y] != root {
            let next = parent[y];
            parent[y] = root;
            y = next;
        }
        root
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (x, y) = (find(parent, a), find(parent, b));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    };
    for a in 0..r {
        union(&mut parent, a, alpha.sigma()[a]);
        for b in 0..r {
            if !alpha.n_plus().get(a, b).is_zero() || !alpha.n_minus().get(a, b).is_zero() {
                union(&mut parent, a, b);
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut root_of = std::collections::BTreeMap::new();
    for a in 0..r {
        let root = find(&mut parent, a);
        let slot = *root_of.entry(root).or_insert_with(|| {
            parts.push(Vec::new());
            parts.len() - 1
        });
        parts[slot].push(a);
    }
    parts
        .into_iter()
        .map(|idx| (alpha.restrict(&idx), idx))
        .collect()
}
