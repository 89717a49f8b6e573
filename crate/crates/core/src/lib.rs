pub mod boolcomb;
pub mod cli;
pub mod corpus;
pub mod dualities;
pub mod error;
pub mod exactla;
pub mod invariants;
pub mod io;
pub mod sqcomplex;
pub mod sqmod;
pub mod suite;

pub use error::{Error, Result};
