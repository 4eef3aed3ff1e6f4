//! Inputs shared by the benchmarks.

use std::sync::Arc;

use charsupp_core::families::{build_family, FamilySpec};
use charsupp_core::{parse_group_file, realize, Group};

/// A family member, ready for table computation.
pub fn family(spec: FamilySpec) -> Arc<Group> {
    Arc::new(build_family(&spec).expect("valid family"))
}

/// The order-512 fixture with derived length 3.
pub fn counterexample() -> Arc<Group> {
    let text = include_str!("../../../fixtures/smallgroup_512_2015.pc");
    Arc::new(realize(&parse_group_file(text).expect("fixture parses")).expect("fixture realizes"))
}
