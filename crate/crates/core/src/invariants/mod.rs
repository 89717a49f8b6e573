//! Invariants read off the dualities: Ext into the canonical module,
//! dimensions, Cohen-Macaulay type conditions, linear strands, Hochster's
//! formula, local cohomology Hilbert functions and characteristic cycles.

pub mod cm;
pub mod ext;
pub mod local;

pub use cm::{is_cohen_macaulay, is_componentwise_linear, is_sequentially_cm, strand_theorem_check, strand_theorem_sides};
pub use ext::{ext, ext_module_table, ext_table, krull_dim, proj_dim, ExtTable};
pub use local::{char_cycle, hochster, hochster_table, hochster_via_links, local_cohomology_hilbert, printed_link_index, CharCycle};
