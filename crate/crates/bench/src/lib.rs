//! Fixtures shared by the kernel benchmarks.

use fmb_core::{catalog_lookup, field_make, group_from_spec, CatalogParams, FieldSpec, Group};

pub fn group(label: &str) -> Group {
    group_from_spec(&catalog_lookup(label, &CatalogParams::none()).expect("catalog label")).expect("consistent")
}

pub fn field(p: u32, k: u32) -> FieldSpec {
    field_make(p, k, None).expect("small field")
}
