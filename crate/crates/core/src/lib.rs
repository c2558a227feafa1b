//! Filtered multiplicative bases of modular group algebras of small p-groups.

pub mod algebra;
pub mod cert;
pub mod constructions;
pub mod engine;
pub mod field;
pub mod jennings;
pub mod linalg;
pub mod obstruction;
pub mod pgroup;
pub mod quotient;
pub mod search;
pub mod verify;

pub use field::{field_make, FieldElem, FieldError, FieldOp, FieldSpec};
pub use pgroup::{catalog_lookup, direct_product, group_from_spec, CatalogParams, Group, GroupError, GroupSpec};
