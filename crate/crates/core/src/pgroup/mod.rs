//! Finite p-groups from power-commutator presentations.

mod catalog;
mod group;
mod series;
mod spec;

use thiserror::Error;

pub use catalog::{canonical_label, catalog_instances, catalog_labels, catalog_lookup, CatalogParams};
pub use group::{direct_product, direct_product_bounded, group_from_spec, Group, COLLECTION_BOUND, DEFAULT_MAX_ORDER};
pub use series::{is_powerful, lazard_series, subgroup_generated, ElementSet, SubgroupChain};
pub use spec::{GroupSpec, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed word {0:?}")]
    BadWord(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("declared order {declared} but only {enumerated} elements reachable")]
    OrderMismatch { declared: usize, enumerated: usize },
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u32 },
    #[error("unknown catalog label {0:?}")]
    UnknownLabel(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("group order {0} exceeds the configured maximum")]
    OrderOverflow(usize),
}
