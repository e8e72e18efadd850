//! Labelled rooted trees indexing the strata of the compactification,
//! together with the equivalent bookkeeping by nested subsets
//! (parenthesizations) and by exclusion relations.
//!
//! Leaf labels are 0-based in the Rust API (`0..n`); file formats and the
//! CLI present them 1-based.

mod enumerate;
mod exclusion;
mod ftree;
mod paren;
mod setmap;

pub use enumerate::{
    count_trees, enumerate_trees, for_each_tree, hasse_diagram, Variant, MAX_FULL_LEAVES,
    MAX_PLANAR_LEAVES,
};
pub use exclusion::ExclusionRelation;
pub use ftree::FTree;
pub use paren::Parenthesization;
pub use setmap::SetMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("subsets {0:?} and {1:?} are neither nested nor disjoint")]
    NotNested(Vec<usize>, Vec<usize>),
    #[error("invalid subset {0:?}: {1}")]
    BadSubset(Vec<usize>, &'static str),
    #[error("vertex {0} is not an internal edge terminal of the tree")]
    NotInternalEdge(usize),
    #[error("leaf counts differ: {0} vs {1}")]
    LeafCountMismatch(usize, usize),
    #[error("unsupported leaf count {n} for {variant} enumeration (allowed {min}..={max})")]
    OutOfRange {
        n: usize,
        variant: &'static str,
        min: usize,
        max: usize,
    },
    #[error("unknown leaf label {0}")]
    UnknownLabel(usize),
    #[error("empty label set")]
    EmptyLabels,
    #[error("exclusion relation violates axiom {axiom}: {detail}")]
    ExclusionAxiom { axiom: u8, detail: String },
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error("set map is not injective")]
    NotInjective,
    #[error("set map value {value} out of range for codomain of size {n}")]
    MapOutOfRange { value: usize, n: usize },
    #[error("set maps cannot be composed: {0}")]
    Incomposable(String),
}
