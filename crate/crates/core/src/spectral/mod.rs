//! Numerics for Euclidean model operators with polynomial symbols.

pub mod envelope;
pub mod expansion;
pub mod heat;
pub mod plancherel;
pub mod quad;
pub mod riesz;
pub mod scaling;
pub mod special;
pub mod symbol;
pub mod trace;

pub use symbol::{ModelTriple, SymbolOperator};
