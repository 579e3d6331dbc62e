//! Smith normal form over the integers.

/// `u · a · v = diag(invariants)` with `u`, `v` unimodular and each invariant dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub invariants: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn row_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(s) {
        *x -= k * y;
    }
}

fn col_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] -= k * row[src];
    }
}

fn swap_cols(m: &mut [Vec<i64>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith normal form of a square integer matrix.
pub fn smith(a: &[Vec<i64>]) -> Smith {
    let n = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(n);
    let mut v = identity(n);
    for k in 0..n {
        loop {
            let Some((pi, pj)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
            else {
                break;
            };
            m.swap(k, pi);
            u.swap(k, pi);
            swap_cols(&mut m, k, pj);
            swap_cols(&mut v, k, pj);
            let p = m[k][k];
            let mut clean = true;
            for i in k + 1..n {
                let q = m[i][k] / p;
                row_axpy(&mut m, i, k, q);
                row_axpy(&mut u, i, k, q);
                clean &= m[i][k] == 0;
            }
            for j in k + 1..n {
                let q = m[k][j] / p;
                col_axpy(&mut m, j, k, q);
                col_axpy(&mut v, j, k, q);
                clean &= m[k][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut m, k, i, -1);
                    row_axpy(&mut u, k, i, -1);
                }
                None => break,
            }
        }
        if m[k][k] < 0 {
            m[k].iter_mut().for_each(|x| *x = -*x);
            u[k].iter_mut().for_each(|x| *x = -*x);
        }
    }
    Smith {
        invariants: (0..n).map(|i| m[i][i]).collect(),
        u,
        v,
    }
}
