use std::fmt;

use super::ClusterError;

/// Vertex label `(a, p)`; `a` is 0-based and shown 1-based.
pub type Label = (usize, i64);

pub fn label_string(l: &Label) -> String {
    format!("({},{})", l.0 + 1, l.1)
}

/// Skew-symmetrizable integer matrix with symmetrizer `d` (`B_ij d_j = −B_ji d_i`) and vertex labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<i64>,
    d: Vec<i64>,
    labels: Vec<Label>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>, d: Vec<i64>, labels: Vec<Label>) -> Result<Self, ClusterError> {
        let n = b.len();
        if d.len() != n || labels.len() != n || b.iter().any(|row| row.len() != n) {
            return Err(ClusterError::Shape);
        }
        if let Some(i) = d.iter().position(|&x| x <= 0) {
            return Err(ClusterError::NotSkewSymmetrizable { i, j: i });
        }
        let m = Self {
            n,
            b: b.into_iter().flatten().collect(),
            d,
            labels,
        };
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) * m.d[j] != -m.get(j, i) * m.d[i] {
                    return Err(ClusterError::NotSkewSymmetrizable { i, j });
                }
            }
        }
        Ok(m)
    }

    /// Skew-symmetric matrix on labels `(i, 0)`.
    pub fn skew(b: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = b.len();
        Self::new(b, vec![1; n], (0..n).map(|i| (i, 0)).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn with_labels(&self, labels: Vec<Label>) -> Self {
        assert_eq!(labels.len(), self.n);
        Self {
            labels,
            ..self.clone()
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, ClusterError> {
        if k >= self.n {
            return Err(ClusterError::UnknownIndex(k));
        }
        let n = self.n;
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                b[i * n + j] = if i == k || j == k {
                    -v
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    v + bik.max(0) * bkj.max(0) - (-bik).max(0) * (-bkj).max(0)
                };
            }
        }
        Ok(Self { b, ..self.clone() })
    }

    /// `ν(B)` with `ν(B)_{ν(i)ν(j)} = B_ij`, `ν(d)_{ν(i)} = d_i`; labels stay in place.
    pub fn relabel(&self, nu: &[usize]) -> Self {
        let n = self.n;
        let mut b = vec![0; n * n];
        let mut d = vec![0; n];
        for i in 0..n {
            d[nu[i]] = self.d[i];
            for j in 0..n {
                b[nu[i] * n + nu[j]] = self.get(i, j);
            }
        }
        Self {
            n,
            b,
            d,
            labels: self.labels.clone(),
        }
    }

    /// Same matrix entries and symmetrizer, ignoring labels.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.b == other.b && self.d == other.d
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.labels.iter().map(label_string).collect();
        let w = names.iter().map(String::len).max().unwrap_or(1).max(3);
        write!(f, "{:w$}", "")?;
        for name in &names {
            write!(f, " {name:>w$}")?;
        }
        writeln!(f)?;
        for i in 0..self.n {
            write!(f, "{:>w$}", names[i])?;
            for j in 0..self.n {
                write!(f, " {:>w$}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix, ClusterError> {
    b.mutate(k)
}
