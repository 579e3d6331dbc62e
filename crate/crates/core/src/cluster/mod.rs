//! Exchange matrices, seed mutation and mutation loops.

mod dot;
mod matrix;
mod mloop;
mod poly;
mod seed;

pub use dot::quiver_dot;
pub use matrix::{label_string, mutate_matrix, ExchangeMatrix, Label};
pub use mloop::{analyze_loop, verify_loop, LoopAnalysis, MutationLoop};
pub use poly::ClusterPoly;
pub use seed::{mutate_seed, SymbolicSeed};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error("index {0} is out of range")]
    UnknownIndex(usize),
    #[error("dimension mismatch")]
    Shape,
    #[error("B is not skew-symmetrizable by d at ({i},{j})")]
    NotSkewSymmetrizable { i: usize, j: usize },
    #[error("block {block} is not a simultaneous mutation: indices {i} and {j}")]
    NotSimultaneous { block: usize, i: usize, j: usize },
    #[error("nu is not a permutation")]
    NotPermutation,
    #[error("symmetrizer is not nu-invariant at {i}")]
    SymmetrizerNotInvariant { i: usize },
    #[error("mu(B) differs from nu(B) at ({i},{j}): expected {expected}, found {found}")]
    RelabelMismatch {
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    #[error("exchange relation at {k} is not divisible by the old variable")]
    InexactDivision { k: usize },
    #[error("loop is incomplete: index {0} is never mutated")]
    Incomplete(usize),
}
