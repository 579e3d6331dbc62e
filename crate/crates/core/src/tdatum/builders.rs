//! Constructions of T-data from size-1 coefficient lists, commuting Cartan pairs, and affinizations.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{validate, ConsistentSubset, TDatum, ValidationReport};
use crate::laurent::{z_integer, LaurentPoly, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("coefficients are not palindromic: n_{q} = {a} but n_{mirror} = {b}")]
    NotPalindromic {
        q: usize,
        mirror: usize,
        a: i64,
        b: i64,
    },
    #[error("d must be positive")]
    NonPositiveD,
    #[error("not a weak generalized Cartan matrix: entry ({a},{b}) = {value}")]
    NotWeakCartan { a: usize, b: usize, value: i64 },
    #[error("matrix is not symmetrized by D at ({a},{b})")]
    NotSymmetrizable { a: usize, b: usize },
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("off-diagonal supports overlap at ({a},{b})")]
    SupportsOverlap { a: usize, b: usize },
    #[error("dimension mismatch")]
    Shape,
    #[error("level must be at least 2")]
    Level,
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
}

/// Size-1 datum with `N₊ = Σ[n_q]₊ z^q`, `N₋ = Σ[−n_q]₊ z^q`, `p = len + 1`.
pub fn build_size1(coeffs: &[i64], d: i64) -> Result<TDatum, BuildError> {
    if d <= 0 {
        return Err(BuildError::NonPositiveD);
    }
    let p = coeffs.len() + 1;
    for q in 1..p {
        let (a, b) = (coeffs[q - 1], coeffs[p - q - 1]);
        if a != b {
            return Err(BuildError::NotPalindromic {
                q,
                mirror: p - q,
                a,
                b,
            });
        }
    }
    let n0 = LaurentPoly::one() + LaurentPoly::z_pow(p as i64);
    let np = LaurentPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as i64 + 1, BigInt::from(c.max(0)))),
    );
    let nm = LaurentPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as i64 + 1, BigInt::from((-c).max(0)))),
    );
    let ap = PolyMatrix::from_rows(vec![vec![&n0 - &np]]);
    let am = PolyMatrix::from_rows(vec![vec![&n0 - &nm]]);
    Ok(validate(&ap, &am, &[d])?)
}

fn check_weak_cartan(c: &[Vec<i64>]) -> Result<(), BuildError> {
    let r = c.len();
    for a in 0..r {
        if c[a].len() != r {
            return Err(BuildError::Shape);
        }
        for b in 0..r {
            let bad = if a == b { c[a][b] > 2 } else { c[a][b] > 0 };
            if bad {
                return Err(BuildError::NotWeakCartan {
                    a,
                    b,
                    value: c[a][b],
                });
            }
        }
    }
    Ok(())
}

/// Pair of commuting weak generalized Cartan matrices sharing the right symmetrizer `D`
/// (`AD` and `A′D` symmetric): `N₀ = (1+z²)I`, `N₊ = z(2I − A)`, `N₋ = z(2I − A′)`.
pub fn build_cartan_pair(a: &[Vec<i64>], a2: &[Vec<i64>], d: &[i64]) -> Result<TDatum, BuildError> {
    let r = a.len();
    if a2.len() != r || d.len() != r {
        return Err(BuildError::Shape);
    }
    check_weak_cartan(a)?;
    check_weak_cartan(a2)?;
    for m in [a, a2] {
        for x in 0..r {
            for y in 0..r {
                if m[x][y] * d[y] != m[y][x] * d[x] {
                    return Err(BuildError::NotSymmetrizable { a: x, b: y });
                }
            }
        }
    }
    let mul = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|k| x[i][k] * y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    if mul(a, a2) != mul(a2, a) {
        return Err(BuildError::NotCommuting);
    }
    let n = |m: &[Vec<i64>], x: usize, y: usize| i64::from(x == y) * 2 - m[x][y];
    for x in 0..r {
        for y in 0..r {
            if n(a, x, y) != 0 && n(a2, x, y) != 0 {
                return Err(BuildError::SupportsOverlap { a: x, b: y });
            }
        }
    }
    let n0 = LaurentPoly::from_ascending(&[1, 0, 1]);
    let build = |m: &[Vec<i64>]| {
        PolyMatrix::from_fn(r, |x, y| {
            let base = if x == y {
                n0.clone()
            } else {
                LaurentPoly::zero()
            };
            &base - &LaurentPoly::monomial(n(m, x, y), 1)
        })
    };
    Ok(validate(&build(a), &build(a2), d)?)
}

/// Residues `c_a ∈ {0,1}` for a bipartite coloring of the off-diagonal support of `A + A′`,
/// with the first vertex of each component at residue 0; `None` if not bipartite.
pub fn bipartite_residues(alpha: &TDatum) -> Option<ConsistentSubset> {
    let r = alpha.size();
    let mut color = vec![-1i64; r];
    for start in 0..r {
        if color[start] >= 0 {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..r {
                let adj = !alpha.n_plus().get(x, y).is_zero()
                    || !alpha.n_minus().get(x, y).is_zero()
                    || !alpha.n_plus().get(y, x).is_zero()
                    || !alpha.n_minus().get(y, x).is_zero();
                if !adj {
                    continue;
                }
                if color[y] < 0 {
                    color[y] = 1 - color[x];
                    stack.push(y);
                } else if color[y] == color[x] {
                    return None;
                }
            }
        }
    }
    Some(ConsistentSubset::new(2, color))
}

/// Cartan matrix and left symmetrizer `c` (`diag(c)·C` symmetric) of a finite type.
///
/// Types: `A_n`, `B_n`, `C_n`, `D_n`, `E6..E8`, `F4`, `G2`, and the tadpole `T_n`.
pub fn cartan_matrix(kind: &str) -> Result<(Vec<Vec<i64>>, Vec<i64>), BuildError> {
    let err = || BuildError::UnknownType(kind.to_string());
    let (letter, rank) = kind.split_at(1);
    let n: usize = rank.trim_start_matches('_').parse().map_err(|_| err())?;
    if n == 0 {
        return Err(err());
    }
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    let mut sym = vec![1i64; n];
    match letter.to_ascii_uppercase().as_str() {
        "A" => {}
        "B" if n >= 2 => {
            c[n - 1][n - 2] = -2;
            sym = (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect();
        }
        "C" if n >= 2 => {
            c[n - 2][n - 1] = -2;
            sym = (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect();
        }
        "D" if n >= 4 => {
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        "E" if (6..=8).contains(&n) => {
            // Chain 1-3-4-5-...-n with node 2 attached to node 4 (Bourbaki labels).
            c = vec![vec![0i64; n]; n];
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            edges.extend((3..n - 1).map(|i| (i, i + 1)));
            for i in 0..n {
                c[i][i] = 2;
            }
            for (i, j) in edges {
                c[i][j] = -1;
                c[j][i] = -1;
            }
        }
        "F" if n == 4 => {
            c[2][1] = -2;
            sym = vec![2, 2, 1, 1];
        }
        "G" if n == 2 => {
            c[1][0] = -3;
            sym = vec![3, 1];
        }
        "T" => {
            c[n - 1][n - 1] = 1;
        }
        _ => return Err(err()),
    }
    Ok((c, sym))
}

/// Right symmetrizer `lcm(c)/c_a` matching a left symmetrizer `c`.
pub fn right_symmetrizer(left: &[i64]) -> Vec<i64> {
    let l = left.iter().fold(1i64, |acc, &x| acc.lcm(&x));
    left.iter().map(|x| l / x).collect()
}

fn kron(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, m) = (x.len(), y.len());
    (0..n * m)
        .map(|i| {
            (0..n * m)
                .map(|j| x[i / m][j / m] * y[i % m][j % m])
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Bipartite belt `(A, A′) = (2I, C_X)`.
pub fn belt(kind: &str) -> Result<TDatum, BuildError> {
    let (c, sym) = cartan_matrix(kind)?;
    let two: Vec<Vec<i64>> = identity(c.len())
        .into_iter()
        .map(|row| row.into_iter().map(|v| 2 * v).collect())
        .collect();
    build_cartan_pair(&two, &c, &right_symmetrizer(&sym))
}

/// Tensor product `(C_X ⊗ I, I ⊗ C_{X′})`, indices ordered `(a, a′)` lexicographically.
pub fn tensor(kind: &str, kind2: &str) -> Result<TDatum, BuildError> {
    let (c, s) = cartan_matrix(kind)?;
    let (c2, s2) = cartan_matrix(kind2)?;
    let a = kron(&c, &identity(c2.len()));
    let a2 = kron(&identity(c.len()), &c2);
    let (d, d2) = (right_symmetrizer(&s), right_symmetrizer(&s2));
    let dd: Vec<i64> = d
        .iter()
        .flat_map(|x| d2.iter().map(move |y| x * y))
        .collect();
    build_cartan_pair(&a, &a2, &dd)
}

/// `(A, A′) = (2I, T_r)`; the tadpole sits in `A₋`.
pub fn tadpole(r: usize) -> Result<TDatum, BuildError> {
    belt(&format!("T{r}"))
}

/// Affinization datum on `H = {(a,m) : 1 ≤ m ≤ t_a ℓ − 1}` for a Cartan matrix with left symmetrizer `c`.
///
/// Returns the datum and the labels `(a, m)` (0-based `a`) of its indices.
pub fn build_affinization(
    cm: &[Vec<i64>],
    c: &[i64],
    level: i64,
) -> Result<(TDatum, Vec<(usize, i64)>), BuildError> {
    let r = cm.len();
    if c.len() != r || cm.iter().any(|row| row.len() != r) {
        return Err(BuildError::Shape);
    }
    if level < 2 {
        return Err(BuildError::Level);
    }
    for a in 0..r {
        for b in 0..r {
            if c[a] * cm[a][b] != c[b] * cm[b][a] {
                return Err(BuildError::NotSymmetrizable { a, b });
            }
        }
    }
    let l = c.iter().fold(1i64, |acc, &x| acc.lcm(&x));
    let t: Vec<i64> = c.iter().map(|x| l / x).collect();
    let tab = |a: usize, b: usize| c[a].lcm(&c[b]) / c[a];
    let labels: Vec<(usize, i64)> = (0..r)
        .flat_map(|a| (1..t[a] * level).map(move |m| (a, m)))
        .collect();
    let h = labels.len();
    let mut ap = PolyMatrix::zero(h);
    let mut am = PolyMatrix::zero(h);
    for (i, &(a, m)) in labels.iter().enumerate() {
        let shift = |x: &LaurentPoly| x.shift(c[a]);
        for (j, &(b, k)) in labels.iter().enumerate() {
            let mut zero = LaurentPoly::zero();
            if a == b && m == k {
                zero = z_integer(2, c[a] as u32);
            }
            let mut plus = LaurentPoly::zero();
            if a == b && (m == k + 1 || m == k - 1) {
                plus = LaurentPoly::one();
            }
            let mut minus = LaurentPoly::zero();
            if cm[a][b] < 0 && a != b {
                let (t_ab, t_ba) = (tab(a, b), tab(b, a));
                if (m * t_ba) % t_ab == 0 {
                    let p = m * t_ba / t_ab;
                    let gap = (p - k).abs();
                    if gap < t_ba {
                        let factor = -cm[a][b];
                        let base = z_integer((t_ba - gap) as u32, c[b] as u32);
                        let scaled = base.scale(&BigInt::from(factor));
                        minus = scaled
                            .div_exact_int(&BigInt::from(t_ab))
                            .ok_or(BuildError::NotSymmetrizable { a, b })?;
                    }
                }
            }
            ap.set(i, j, shift(&(&zero - &plus)));
            am.set(i, j, shift(&(&zero - &minus)));
        }
    }
    let alpha = validate(&ap, &am, &vec![1; h])?;
    Ok((alpha, labels))
}

/// Affinization of a named finite type.
pub fn affinization(kind: &str, level: i64) -> Result<(TDatum, Vec<(usize, i64)>), BuildError> {
    let (cm, c) = cartan_matrix(kind)?;
    build_affinization(&cm, &c, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tdatum::validate_consistent;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn size1_examples() {
        let somos = build_size1(&[-1, 2, -1], 1).unwrap();
        assert_eq!(somos.a_plus().get(0, 0), &lp("1-2*z^2+z^4"));
        assert_eq!(somos.a_minus().get(0, 0), &lp("1-z-z^3+z^4"));
        let flat = build_size1(&[0], 1).unwrap();
        assert_eq!(flat.a_plus().get(0, 0), &lp("1+z^2"));
        let p3 = build_size1(&[1, 1], 1).unwrap();
        assert_eq!(p3.n_plus().get(0, 0), &lp("z+z^2"));
        assert!(p3.n_minus().is_zero());
        assert!(matches!(
            build_size1(&[1, 0], 1),
            Err(BuildError::NotPalindromic { .. })
        ));
    }

    #[test]
    fn belt_a2() {
        let alpha = belt("A2").unwrap();
        assert_eq!(
            alpha.a_plus(),
            PolyMatrix::diagonal(&[lp("1+z^2"), lp("1+z^2")])
        );
        assert_eq!(alpha.a_minus().get(0, 1), &lp("-z"));
        assert_eq!(
            alpha.a_minus().eval_at_one().to_f64(),
            vec![vec![2.0, -1.0], vec![-1.0, 2.0]]
        );
    }

    #[test]
    fn tadpole_row() {
        let alpha = tadpole(3).unwrap();
        let am = alpha.a_minus();
        assert_eq!(
            [am.get(2, 0), am.get(2, 1), am.get(2, 2)],
            [&lp("0"), &lp("-z"), &lp("1-z+z^2")]
        );
        assert!(validate_consistent(&alpha, &ConsistentSubset::whole(3)).is_ok());
        assert!(bipartite_residues(&alpha).is_none());
    }

    #[test]
    fn tensor_a3_a2() {
        let alpha = tensor("A3", "A2").unwrap();
        assert_eq!(alpha.size(), 6);
        let rr = bipartite_residues(&alpha).unwrap();
        assert!(validate_consistent(&alpha, &rr).is_ok());
    }

    #[test]
    fn pair_errors() {
        let (a3, _) = cartan_matrix("A3").unwrap();
        let (b3, _) = cartan_matrix("B3").unwrap();
        assert_eq!(
            build_cartan_pair(&a3, &a3, &[1, 1, 1]),
            Err(BuildError::SupportsOverlap { a: 0, b: 1 })
        );
        let bad = vec![vec![2, 1], vec![-1, 2]];
        assert!(matches!(
            build_cartan_pair(&bad, &bad, &[1, 1]),
            Err(BuildError::NotWeakCartan { .. })
        ));
        let a2 = vec![vec![2, -1, 0], vec![-1, 2, 0], vec![0, 0, 2]];
        assert!(build_cartan_pair(&a2, &b3, &[1, 1, 1]).is_err());
    }

    #[test]
    fn affinization_a1() {
        let (alpha, labels) = affinization("A1", 2).unwrap();
        assert_eq!(labels, vec![(0, 1)]);
        assert_eq!(alpha.a_plus().get(0, 0), &lp("1+z^2"));
        assert_eq!(alpha.a_minus().get(0, 0), &lp("1+z^2"));
    }

    #[test]
    fn affinization_f4_level2() {
        let (alpha, labels) = affinization("F4", 2).unwrap();
        assert_eq!(
            labels,
            vec![
                (0, 1),
                (1, 1),
                (2, 1),
                (2, 2),
                (2, 3),
                (3, 1),
                (3, 2),
                (3, 3)
            ]
        );
        // Rows of Ã± = z^{-c_a} A±.
        let c = [2, 2, 1, 1, 1, 1, 1, 1];
        let untwist = |m: PolyMatrix| PolyMatrix::from_fn(8, |i, j| m.get(i, j).shift(-c[i]));
        let q2 = "z^-2+z^2";
        let q1 = "z^-1+z";
        let expect = |rows: [[&str; 8]; 8]| {
            PolyMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|s| lp(s)).collect())
                    .collect(),
            )
        };
        let plus = expect([
            [q2, "0", "0", "0", "0", "0", "0", "0"],
            ["0", q2, "0", "0", "0", "0", "0", "0"],
            ["0", "0", q1, "-1", "0", "0", "0", "0"],
            ["0", "0", "-1", q1, "-1", "0", "0", "0"],
            ["0", "0", "0", "-1", q1, "0", "0", "0"],
            ["0", "0", "0", "0", "0", q1, "-1", "0"],
            ["0", "0", "0", "0", "0", "-1", q1, "-1"],
            ["0", "0", "0", "0", "0", "0", "-1", q1],
        ]);
        let minus = expect([
            [q2, "-1", "0", "0", "0", "0", "0", "0"],
            ["-1", q2, "-1", "-z^-1-z", "-1", "0", "0", "0"],
            ["0", "0", q1, "0", "0", "-1", "0", "0"],
            ["0", "-1", "0", q1, "0", "0", "-1", "0"],
            ["0", "0", "0", "0", q1, "0", "0", "-1"],
            ["0", "0", "-1", "0", "0", q1, "0", "0"],
            ["0", "0", "0", "-1", "0", "0", q1, "0"],
            ["0", "0", "0", "0", "-1", "0", "0", q1],
        ]);
        assert_eq!(untwist(alpha.a_plus()), plus);
        assert_eq!(untwist(alpha.a_minus()), minus);
    }

    #[test]
    fn affinization_b3_level5_size() {
        let (alpha, _) = affinization("B3", 5).unwrap();
        assert_eq!(alpha.size(), 17);
    }

    #[test]
    fn affinization_grid_validates() {
        for kind in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
        ] {
            for level in 2..=3 {
                assert!(affinization(kind, level).is_ok(), "{kind} level {level}");
            }
        }
    }

    #[test]
    fn cartan_pair_grid_validates() {
        for kind in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "T1", "T2", "T3",
            "T4",
        ] {
            let alpha = belt(kind).unwrap();
            assert!(alpha.swap().a_plus() == alpha.a_minus(), "{kind}");
        }
    }
}
