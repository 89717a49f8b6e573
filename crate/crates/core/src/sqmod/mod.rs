//! Squarefree modules as commuting cubes of linear maps, and their homomorphisms.

pub mod hom;
pub mod module;

pub use hom::SqHom;
pub use module::SqModule;
