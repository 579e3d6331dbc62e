//! Exact computations with T-data and the mutation loops they correspond to.

pub mod analytic;
pub mod cluster;
pub mod correspondence;
pub mod dynamics;
pub mod laurent;
pub mod positivity;
pub mod qseries;
pub mod semifield;
pub mod tdatum;
