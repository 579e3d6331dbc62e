//! Simultaneous positivity, Cartan-likeness and the matrices `K`, `K∨`.

mod simplex;
mod sturm;

pub use simplex::{feasibility, verify, Feasibility};
pub use sturm::{has_nonpositive_real_root, negative_real_roots};

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::laurent::{LinalgError, RationalMatrix};
use crate::tdatum::{Sign, TDatum};

/// Either `v > 0` with every `M v > 0`, or a Farkas vector for the normalised system
/// `[M₁; M₂; …] w ≥ 1 − [M₁; M₂; …]𝟙`, `w ≥ 0`, with `v = 𝟙 + w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityCertificate {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

impl PositivityCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }

    pub fn vector(&self) -> Option<&[BigRational]> {
        match self {
            Self::Feasible(v) => Some(v),
            Self::Infeasible(_) => None,
        }
    }
}

impl fmt::Display for PositivityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigRational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Self::Feasible(v) => write!(f, "feasible: v = ({})", join(v)),
            Self::Infeasible(y) => write!(f, "infeasible: certificate y = ({})", join(y)),
        }
    }
}

fn stack(ms: &[RationalMatrix]) -> RationalMatrix {
    let r = ms[0].ncols();
    let rows: usize = ms.iter().map(|m| m.nrows()).sum();
    let mut out = RationalMatrix::zeros(rows, r);
    let mut off = 0;
    for m in ms {
        for i in 0..m.nrows() {
            for j in 0..r {
                out.set(off + i, j, m.get(i, j).clone());
            }
        }
        off += m.nrows();
    }
    out
}

/// Decides `∃ v > 0` with `M v > 0` for every `M` in `ms`, exactly.
pub fn common_positive_vector(ms: &[RationalMatrix]) -> PositivityCertificate {
    let m = stack(ms);
    let ones = vec![BigRational::one(); m.ncols()];
    let b: Vec<BigRational> = m
        .mul_vec(&ones)
        .into_iter()
        .map(|x| BigRational::one() - x)
        .collect();
    let ans = feasibility(&m, &b);
    assert!(
        verify(&m, &b, &ans),
        "simplex answer failed its own certificate"
    );
    match ans {
        Feasibility::Feasible(w) => {
            let v: Vec<BigRational> = w.into_iter().map(|x| x + BigRational::one()).collect();
            debug_assert!(ms
                .iter()
                .all(|mi| mi.mul_vec(&v).iter().all(|x| x.is_positive())));
            PositivityCertificate::Feasible(v)
        }
        Feasibility::Infeasible(y) => PositivityCertificate::Infeasible(y),
    }
}

/// `∃ v > 0` with `Å₊ᵀ v > 0` and `Å₋ᵀ v > 0`.
pub fn simultaneous_positivity(alpha: &TDatum) -> PositivityCertificate {
    common_positive_vector(&[
        alpha.a_plus().eval_at_one().transpose(),
        alpha.a_minus().eval_at_one().transpose(),
    ])
}

/// Off-diagonal entries all `≤ 0`.
pub fn is_z_matrix(a: &RationalMatrix) -> bool {
    (0..a.nrows()).all(|i| (0..a.ncols()).all(|j| i == j || !a.get(i, j).is_positive()))
}

/// All real eigenvalues positive, by a Sturm count on the characteristic polynomial.
pub fn real_eigenvalues_positive(a: &RationalMatrix) -> bool {
    !has_nonpositive_real_root(&a.characteristic_polynomial())
}

/// For a Z-matrix, whether the LP and the eigenvalue criterion agree; `None` otherwise.
pub fn fiedler_ptak_agrees(a: &RationalMatrix) -> Option<bool> {
    is_z_matrix(a).then(|| {
        common_positive_vector(std::slice::from_ref(a)).is_feasible()
            == real_eigenvalues_positive(a)
    })
}

/// `diag(z^{-p_a/2}) A±` invariant under `z ↦ z⁻¹`: row `a` of `A±` has `z^q ↔ z^{p_a−q}` symmetric coefficients.
pub fn is_cartan_like(alpha: &TDatum) -> bool {
    let r = alpha.size();
    Sign::BOTH.iter().all(|&s| {
        let a = alpha.a(s);
        (0..r).all(|i| (0..r).all(|j| a.get(i, j).invert_z().shift(alpha.p()[i]) == *a.get(i, j)))
    })
}

/// `K = Å₊⁻¹ Å₋`, `K∨ = D⁻¹ K D` and the exact checks on `KD` and `K∨D∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrices {
    pub k: RationalMatrix,
    pub k_dual: RationalMatrix,
    pub kd: RationalMatrix,
    pub kd_dual: RationalMatrix,
    pub kd_symmetric: bool,
    pub kd_positive_definite: bool,
    pub kd_dual_symmetric: bool,
    pub kd_dual_positive_definite: bool,
}

fn diag(d: &[i64]) -> RationalMatrix {
    RationalMatrix::diagonal(
        &d.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect::<Vec<_>>(),
    )
}

pub fn compute_k(alpha: &TDatum) -> Result<KMatrices, LinalgError> {
    let ap = alpha.a_plus().eval_at_one();
    let am = alpha.a_minus().eval_at_one();
    let k = &ap.inverse()? * &am;
    let d = diag(alpha.d());
    let d_inv = d.inverse()?;
    let k_dual = &(&d_inv * &k) * &d;
    let delta = alpha.delta();
    let d_dual: Vec<i64> = alpha.d().iter().map(|&x| delta / x).collect();
    let kd = &k * &d;
    let kd_dual = &k_dual * &diag(&d_dual);
    Ok(KMatrices {
        kd_symmetric: kd.is_symmetric(),
        kd_positive_definite: kd.is_symmetric() && kd.is_positive_definite(),
        kd_dual_symmetric: kd_dual.is_symmetric(),
        kd_dual_positive_definite: kd_dual.is_symmetric() && kd_dual.is_positive_definite(),
        k,
        k_dual,
        kd,
        kd_dual,
    })
}

/// `Å₊` from the datum, evaluated at `z = 1`.
pub fn a_ring(alpha: &TDatum, sign: Sign) -> RationalMatrix {
    alpha.a(sign).eval_at_one()
}

/// Zero test shared by callers that only need the sign of a determinant.
pub fn is_singular(m: &RationalMatrix) -> bool {
    m.det().map(|x| x.is_zero()).unwrap_or(true)
}
