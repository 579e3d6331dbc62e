//! Named T-data used in tests, examples and the CLI.

use super::builders::{affinization, belt, bipartite_residues, build_size1, tadpole, tensor};
use super::{validate, ConsistentSubset, TDatum};
use crate::laurent::{LaurentPoly, PolyMatrix};

fn matrix(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<LaurentPoly>().expect("catalog entry"))
                    .collect()
            })
            .collect(),
    )
}

/// Validates a catalogue entry given as strings; panics on invalid input.
pub fn from_strings(a_plus: &[&[&str]], a_minus: &[&[&str]], d: &[i64]) -> TDatum {
    validate(&matrix(a_plus), &matrix(a_minus), d).expect("catalog datum is valid")
}

pub fn size1(coeffs: &[i64], d: i64) -> TDatum {
    build_size1(coeffs, d).expect("palindromic")
}

/// `A₊ = 1 − 2z² + z⁴`, `A₋ = 1 − z − z³ + z⁴`.
pub fn somos4() -> TDatum {
    size1(&[-1, 2, -1], 1)
}

/// `A₊ = (1+z²)I`, `A₋ = (1+z²)I − zN` with `N` the adjacency of `A₂`.
pub fn a2_belt() -> TDatum {
    belt("A2").expect("A2")
}

/// Residues `c₁ = 0`, `c₂ = 1` of the two-colouring of the `A₂` belt.
pub fn a2_belt_residues() -> ConsistentSubset {
    ConsistentSubset::new(2, vec![0, 1])
}

/// Two indices swapped by `σ`, `p = (1, 1)`, `N± = 0`.
pub fn cyclic_pair() -> TDatum {
    from_strings(
        &[&["1", "z"], &["z", "1"]],
        &[&["1", "z"], &["z", "1"]],
        &[1, 1],
    )
}

/// The tadpole datum with the roles of `A₊` and `A₋` exchanged, so that `Å₊ = T_r`.
pub fn tadpole_swapped(r: usize) -> TDatum {
    tadpole(r).expect("tadpole").swap()
}

/// Size-2 data with `D = I`, their `K` matrices and central charges `(num, den)`.
pub fn size2_table() -> Vec<(TDatum, [[(i64, i64); 2]; 2], (i64, i64))> {
    let id = [1, 1];
    vec![
        (
            from_strings(
                &[&["1+z^2", "-z"], &["-z", "1+z^2"]],
                &[&["1+z^2", "0"], &["0", "1+z^2"]],
                &id,
            ),
            [[(4, 3), (2, 3)], [(2, 3), (4, 3)]],
            (4, 5),
        ),
        (
            from_strings(
                &[&["1+z^2", "-z"], &["-z", "1+z^2"]],
                &[&["1-z+z^2", "0"], &["0", "1-z+z^2"]],
                &id,
            ),
            [[(2, 3), (1, 3)], [(1, 3), (2, 3)]],
            (1, 1),
        ),
        (
            from_strings(
                &[&["1+z^2", "-z"], &["-z-z^5", "1+z^6"]],
                &[&["1+z^2", "0"], &["-z^3", "1+z^6"]],
                &id,
            ),
            [[(3, 2), (1, 1)], [(1, 1), (2, 1)]],
            (5, 7),
        ),
        (
            from_strings(
                &[&["1+z^2", "-z"], &["-z-z^2", "1+z^3"]],
                &[&["1-z+z^2", "0"], &["0", "1+z^3"]],
                &id,
            ),
            [[(1, 1), (1, 1)], [(1, 1), (2, 1)]],
            (3, 4),
        ),
        (
            from_strings(
                &[&["1+z^2", "-z"], &["-z-z^5-z^9", "1+z^10"]],
                &[&["1+z^2", "0"], &["-z^3-z^7", "1+z^10"]],
                &id,
            ),
            [[(2, 1), (2, 1)], [(2, 1), (4, 1)]],
            (4, 7),
        ),
    ]
}

/// Size-3 data with `D = I`, their `K` matrices (integers over a common denominator) and central charges.
pub fn size3_table() -> Vec<(TDatum, ([[i64; 3]; 3], i64), (i64, i64))> {
    let id = [1, 1, 1];
    let a3 = [
        &["1+z^2", "-z", "0"][..],
        &["-z", "1+z^2", "-z"],
        &["0", "-z", "1+z^2"],
    ];
    vec![
        (
            from_strings(
                &a3,
                &[
                    &["1+z^2", "0", "0"],
                    &["0", "1+z^2", "0"],
                    &["0", "0", "1+z^2"],
                ],
                &id,
            ),
            ([[3, 2, 1], [2, 4, 2], [1, 2, 3]], 2),
            (1, 1),
        ),
        (
            from_strings(
                &a3,
                &[
                    &["1-z+z^2", "0", "0"],
                    &["0", "1-z+z^2", "0"],
                    &["0", "0", "1-z+z^2"],
                ],
                &id,
            ),
            ([[3, 2, 1], [2, 4, 2], [1, 2, 3]], 4),
            (9, 7),
        ),
        (
            from_strings(
                &[
                    &["1+z^2", "-z", "0"],
                    &["-z", "1+z^2", "-z"],
                    &["0", "-z-z^2", "1+z^3"],
                ],
                &[
                    &["1-z+z^2", "0", "0"],
                    &["0", "1-z+z^2", "0"],
                    &["0", "0", "1+z^3"],
                ],
                &id,
            ),
            ([[1, 1, 1], [1, 2, 2], [1, 2, 3]], 1),
            (9, 10),
        ),
        (
            from_strings(
                &[
                    &["1+z^2", "0", "-z"],
                    &["-z^3", "1+z^6", "0"],
                    &["-z-z^7", "-z^2-z^6", "1+z^8"],
                ],
                &[
                    &["1+z^2", "-z", "0"],
                    &["-z-z^5", "1+z^6", "0"],
                    &["0", "0", "1+z^8"],
                ],
                &id,
            ),
            ([[2, 0, 2], [0, 1, 1], [2, 1, 4]], 1),
            (1, 1),
        ),
        (
            from_strings(
                &[
                    &["1+z^2", "-z", "0"],
                    &["-z", "1+z^2", "-z"],
                    &["0", "-z", "1-z+z^2"],
                ],
                &[
                    &["1+z^2", "0", "0"],
                    &["0", "1+z^2", "0"],
                    &["0", "0", "1+z^2"],
                ],
                &id,
            ),
            ([[2, 2, 2], [2, 4, 4], [2, 4, 6]], 1),
            (2, 3),
        ),
        (
            from_strings(
                &[
                    &["1+z^2", "-z", "0"],
                    &["-z-z^5", "1+z^6", "-z^3"],
                    &["0", "-z^3", "1+z^6"],
                ],
                &[
                    &["1+z^2", "0", "0"],
                    &["-z^3", "1+z^6", "0"],
                    &["0", "0", "1+z^6"],
                ],
                &id,
            ),
            ([[2, 2, 1], [2, 4, 2], [1, 2, 2]], 1),
            (4, 5),
        ),
        (
            from_strings(
                &[
                    &["1-z+z^2", "-z", "0"],
                    &["-z", "1+z^2", "0"],
                    &["0", "0", "1+z^5"],
                ],
                &[
                    &["1+z^2", "0", "0"],
                    &["0", "1+z^2", "-z"],
                    &["-z^2-z^3", "-z-z^4", "1+z^5"],
                ],
                &id,
            ),
            ([[4, 2, -1], [2, 2, -1], [-1, -1, 1]], 1),
            (3, 2),
        ),
    ]
}

/// A corpus entry: name, datum, consistent subset, and whether the datum is of finite type.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub alpha: TDatum,
    pub r: ConsistentSubset,
    pub finite: bool,
}

fn entry(
    name: impl Into<String>,
    alpha: TDatum,
    r: Option<ConsistentSubset>,
    finite: bool,
) -> Entry {
    let r = r.unwrap_or_else(|| ConsistentSubset::whole(alpha.size()));
    Entry {
        name: name.into(),
        alpha,
        r,
        finite,
    }
}

/// Builder corpus with consistent subsets, sizes 1 to 17.
pub fn entries() -> Vec<Entry> {
    let mut out = vec![
        entry("somos4", somos4(), None, false),
        entry("size1 p=1", size1(&[], 1), None, true),
        entry("size1 (0)", size1(&[0], 1), None, true),
        entry(
            "size1 (0) t=2",
            size1(&[0], 2),
            Some(ConsistentSubset::new(2, vec![1])),
            true,
        ),
        entry("size1 (0,1,0)", size1(&[0, 1, 0], 1), None, true),
        entry("size1 (0,-1,0)", size1(&[0, -1, 0], 1), None, true),
        entry("size1 (1,1)", size1(&[1, 1], 1), None, false),
        entry("size1 (-2,-2)", size1(&[-2, -2], 3), None, false),
        entry("size1 (1,-1,1)", size1(&[1, -1, 1], 1), None, false),
        entry("size1 (2,0,0,2)", size1(&[2, 0, 0, 2], 1), None, false),
        entry("cyclic pair", cyclic_pair(), None, true),
    ];
    for kind in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"] {
        let alpha = belt(kind).expect("belt");
        let rr = bipartite_residues(&alpha);
        out.push(entry(format!("belt {kind}"), alpha, rr, true));
    }
    for r in 1..=4 {
        out.push(entry(
            format!("tadpole T{r}"),
            tadpole(r).expect("tadpole"),
            None,
            true,
        ));
    }
    for (x, y) in [("A3", "A2"), ("A2", "A2")] {
        let alpha = tensor(x, y).expect("tensor");
        let rr = bipartite_residues(&alpha);
        out.push(entry(format!("tensor {x}x{y}"), alpha, rr, true));
    }
    for (kind, level) in [
        ("A1", 2),
        ("A2", 2),
        ("B2", 2),
        ("G2", 2),
        ("A3", 2),
        ("C3", 2),
        ("F4", 2),
        ("B3", 5),
    ] {
        let (alpha, _) = affinization(kind, level).expect("affinization");
        out.push(entry(
            format!("affinization {kind} level {level}"),
            alpha,
            None,
            true,
        ));
    }
    for (i, (alpha, _, _)) in size2_table().into_iter().enumerate() {
        out.push(entry(format!("size2 row {}", i + 1), alpha, None, true));
    }
    for (i, (alpha, _, _)) in size3_table().into_iter().enumerate() {
        out.push(entry(format!("size3 row {}", i + 1), alpha, None, true));
    }
    out
}

/// Names and data of [`entries`].
pub fn corpus() -> Vec<(String, TDatum)> {
    entries().into_iter().map(|e| (e.name, e.alpha)).collect()
}
