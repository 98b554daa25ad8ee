//! The orbit table, the closure poset, degeneration families and the
//! polynomial identities behind the normal forms.

pub mod data;
pub mod families;
pub mod identities;
pub mod labels;
pub mod poset;
pub mod records;

pub use identities::{identity_selftests, IdentityCheck};
pub use data::{canonical_json, data_file_is_current, DATA_VERSION};
pub use families::{degeneration_families, family_for, verify_families, verify_family, Family, FamilyCheck};
pub use labels::{OrbitBase, OrbitLabel, Series};
pub use poset::{closure_of, edges, is_in_closure, to_dot, EdgeSource, PosetEdge};
pub use records::{lookup, records, CriticalSignature, OrbitRecord, RealKey, LOW_AMBIENT_TABLE};
