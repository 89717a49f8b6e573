//! Bounded complexes of squarefree modules, explicit free and injective
//! complexes, resolutions, and Betti/Bass numbers.

pub mod complex;
pub mod numbers;
pub mod resolution;
pub mod summand;
pub mod table;

pub use complex::{ChainMap, SqComplex};
pub use numbers::{bass, bass_maximal, bass_maximal_table, bass_table, betti, betti_table, dual_cohomology};
pub use resolution::{minimal_injective_resolution, minimal_projective_resolution};
pub use summand::{Label, SummandComplex, SummandKind, SummandMap};
pub use table::{BassTable, BettiTable, GradedTable};
