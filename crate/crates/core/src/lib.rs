//! Computable models of compactified configuration spaces of points in
//! Euclidean space: the canonical compactification with its unit-vector and
//! ratio coordinates, the simplicial variant that keeps only directions,
//! the f-tree stratification, chart maps, and associahedra.

pub mod assoc;
pub mod canonical;
pub mod cli;
pub mod dependence;
pub mod error;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod point;
pub mod ratio;
pub mod simplicial;
pub mod tree;
pub mod verdict;

pub use error::{Error, Result};
