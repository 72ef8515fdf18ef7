//! Exact computations around bad representations into PSL(p, C): cyclotomic
//! matrices, centralizers, cohomology of finitely presented groups and the
//! cyclic quotient singularity test.

#![allow(clippy::needless_range_loop)]

pub mod cocycle_lab;
pub mod cyclo_field;
pub mod error;
pub mod group_engine;
pub mod linalg;
pub mod modp_module;
pub mod proj_matrix;
pub mod pseudo_components;
pub mod singularity_probe;

pub use cyclo_field::CycNum;
pub use error::{Error, Result};
pub use group_engine::{BadnessKind, BadnessVerdict, FinMatrixGroup};
pub use linalg::CycMat;
pub use modp_module::{FpSubspace, PairType, SymplecticSpace};
pub use proj_matrix::ProjMat;

/// Default closure cap, overridable through `BADLOCUS_CAP`.
pub const DEFAULT_CAP: usize = 100_000;

pub fn closure_cap() -> usize {
    std::env::var("BADLOCUS_CAP").ok().and_then(|s| s.parse().ok()).filter(|&c| c > 0).unwrap_or(DEFAULT_CAP)
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
