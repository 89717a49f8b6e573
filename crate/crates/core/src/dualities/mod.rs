//! Alexander duality, the dualizing complex `D`, the free complex `F`,
//! `Hom` into the canonical module, the `(D∘A)^3` sign isomorphism, and the
//! exterior-algebra side (`E`, BGG's `L`, the Koszul-duality complex).

pub mod dadada;
pub mod exterior;
pub mod functors;

pub use dadada::{dadada_map, dadada_map_with_sign, dadada_sign};
pub use exterior::{bgg_l, koszul_df, to_exterior, to_exterior_cx, to_symmetric, to_symmetric_cx, SqEComplex, SqEModule};
pub use functors::{alexander, alexander_cx, dualize_d, functor_f, hom_to_omega};
