//! One-factorisations of the hypercube built from a Hamming code, and tools
//! for checking how well unions of their factors connect.

pub mod analyze;
pub mod code;
pub mod construct;
pub mod cube;
pub mod error;
pub mod export;
pub mod format;
pub mod gf2;
pub mod limits;
pub mod tape;

pub use code::{build_context, CodeContext};
pub use construct::{ConstructionParams, ExplicitFactorisation, Factorisation, Mode};
pub use cube::{Direction, Edge, Vertex};
pub use error::{Error, Result};
pub use gf2::Gf2Vec;
pub use tape::RandomTape;
