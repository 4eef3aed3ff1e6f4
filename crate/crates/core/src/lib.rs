//! Exact character tables of finite p-groups and checks on the supports of
//! their irreducible characters.

pub mod character;
pub mod cyclo;
pub mod error;
pub mod families;
pub mod group;
pub mod presentation;
pub mod support;

pub use character::{Character, CharacterTable, ClassFunction};
pub use cyclo::{Cyclo, FieldTag};
pub use error::{Error, Result};
pub use presentation::{emit_group_file, parse_group_file, realize, GroupSpec};
pub use group::{Action, ClassPartition, Embedded, Group, Quotient, SeriesReport, Subgroup};
pub use support::{CheckEntry, Controls, Outcome, SigmaReport, SupportProfile};
