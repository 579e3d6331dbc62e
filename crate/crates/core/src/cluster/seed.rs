use super::{ClusterError, ClusterPoly, ExchangeMatrix};
use crate::semifield::{tropical_hensel_pair, GroupRingElement, TropicalElement};

/// Exchange matrix with tropical coefficients and, optionally, a cluster of Laurent polynomials.
///
/// An empty cluster makes this a Y-seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSeed {
    pub b: ExchangeMatrix,
    pub y: Vec<TropicalElement>,
    pub x: Vec<ClusterPoly>,
}

impl SymbolicSeed {
    /// Initial seed: `x_i` the `i`-th variable.
    pub fn initial(b: ExchangeMatrix, y: Vec<TropicalElement>) -> Self {
        let n = b.size();
        assert_eq!(y.len(), n);
        let x = (0..n).map(|i| ClusterPoly::var(n, i)).collect();
        Self { b, y, x }
    }

    pub fn y_seed(b: ExchangeMatrix, y: Vec<TropicalElement>) -> Self {
        assert_eq!(y.len(), b.size());
        Self {
            b,
            y,
            x: Vec::new(),
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Self, ClusterError> {
        let n = self.b.size();
        if k >= n {
            return Err(ClusterError::UnknownIndex(k));
        }
        let yk = &self.y[k];
        let y = (0..n)
            .map(|i| {
                if i == k {
                    return yk.inv();
                }
                let bki = self.b.get(k, i);
                if bki <= 0 {
                    &self.y[i] * &yk.one_plus().pow(-bki)
                } else {
                    &self.y[i] * &yk.inv().one_plus().pow(-bki)
                }
            })
            .collect();
        let mut x = self.x.clone();
        if !x.is_empty() {
            let (pp, pm) = tropical_hensel_pair(yk);
            let mut plus = ClusterPoly::constant(n, GroupRingElement::from_semifield(&pp));
            let mut minus = ClusterPoly::constant(n, GroupRingElement::from_semifield(&pm));
            for j in 0..n {
                let bjk = self.b.get(j, k);
                if bjk > 0 {
                    plus = plus.mul(&self.x[j].pow(bjk as u32));
                } else if bjk < 0 {
                    minus = minus.mul(&self.x[j].pow((-bjk) as u32));
                }
            }
            x[k] = plus
                .add(&minus)
                .div_exact(&self.x[k])
                .ok_or(ClusterError::InexactDivision { k })?;
        }
        Ok(Self {
            b: self.b.mutate(k)?,
            y,
            x,
        })
    }
}

pub fn mutate_seed(seed: &SymbolicSeed, k: usize) -> Result<SymbolicSeed, ClusterError> {
    seed.mutate(k)
}
