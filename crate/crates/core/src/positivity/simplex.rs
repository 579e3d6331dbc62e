//! Exact feasibility of `M w ≥ b, w ≥ 0` by a two-phase-style simplex with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::laurent::RationalMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point `w ≥ 0` with `M w ≥ b`.
    Feasible(Vec<BigRational>),
    /// `y ≥ 0` with `Mᵀy ≤ 0` and `bᵀy > 0`.
    Infeasible(Vec<BigRational>),
}

/// Solves the phase-one problem `min Σ a` over `sM w − s·slack + a = s b`, `s = sign(b)`.
pub fn feasibility(m: &RationalMatrix, b: &[BigRational]) -> Feasibility {
    let rows = m.nrows();
    let nw = m.ncols();
    assert_eq!(b.len(), rows);
    let sign: Vec<BigRational> = b
        .iter()
        .map(|x| {
            if x.is_negative() {
                -BigRational::one()
            } else {
                BigRational::one()
            }
        })
        .collect();
    // Columns: w (nw), slack (rows), artificial (rows).
    let ncols = nw + 2 * rows;
    let mut tab: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row = vec![BigRational::zero(); ncols + 1];
            for j in 0..nw {
                row[j] = &sign[i] * m.get(i, j);
            }
            row[nw + i] = -sign[i].clone();
            row[nw + rows + i] = BigRational::one();
            row[ncols] = &sign[i] * &b[i];
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..rows).map(|i| nw + rows + i).collect();
    let cost = |j: usize| {
        if j >= nw + rows {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    loop {
        // Reduced costs c_j − c_Bᵀ column_j.
        let reduced = |j: usize, tab: &Vec<Vec<BigRational>>, basis: &Vec<usize>| {
            let mut r = cost(j);
            for (i, &bi) in basis.iter().enumerate() {
                r -= cost(bi) * &tab[i][j];
            }
            r
        };
        let entering =
            (0..ncols).find(|&j| !basis.contains(&j) && reduced(j, &tab, &basis).is_negative());
        let Some(e) = entering else {
            let obj: BigRational = basis
                .iter()
                .enumerate()
                .map(|(i, &bi)| cost(bi) * &tab[i][ncols])
                .sum();
            if obj.is_zero() {
                let mut w = vec![BigRational::zero(); nw];
                for (i, &bi) in basis.iter().enumerate() {
                    if bi < nw {
                        w[bi] = tab[i][ncols].clone();
                    }
                }
                return Feasibility::Feasible(w);
            }
            // Duals π_i = 1 − reduced cost of the artificial in row i.
            let y = (0..rows)
                .map(|i| {
                    let j = nw + rows + i;
                    let rc = if basis.contains(&j) {
                        BigRational::zero()
                    } else {
                        reduced(j, &tab, &basis)
                    };
                    &sign[i] * (BigRational::one() - rc)
                })
                .collect();
            return Feasibility::Infeasible(y);
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if tab[i][e].is_positive() {
                let ratio = &tab[i][ncols] / &tab[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (l, _) = leave.expect("phase one is bounded below");
        let piv = tab[l][e].clone();
        for x in tab[l].iter_mut() {
            *x /= &piv;
        }
        let prow = tab[l].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != l && !row[e].is_zero() {
                let f = row[e].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[l] = e;
    }
}

/// Checks a [`Feasibility`] answer exactly.
pub fn verify(m: &RationalMatrix, b: &[BigRational], ans: &Feasibility) -> bool {
    match ans {
        Feasibility::Feasible(w) => {
            w.iter().all(|x| !x.is_negative()) && m.mul_vec(w).iter().zip(b).all(|(l, r)| l >= r)
        }
        Feasibility::Infeasible(y) => {
            let by: BigRational = b.iter().zip(y).map(|(x, z)| x * z).sum();
            y.iter().all(|x| !x.is_negative())
                && m.transpose().mul_vec(y).iter().all(|x| !x.is_positive())
                && by.is_positive()
        }
    }
}
