//! Subsets of `[n]`, sign helpers and simplicial complexes.

pub mod simplicial;
pub mod subset;

pub use simplicial::{GradedDims, SimplicialComplex};
pub use subset::{alpha, alpha_pair, beta_sign, Subset, MAX_N};
