//! Validated builders for the example objects.

mod algebras;
mod coideals;
mod fixtures;
mod groups;
mod quantum;

pub use algebras::{group_algebra, group_function_algebra, kac_paljutkin, sweedler};
pub use coideals::{kac_paljutkin_coideals, subgroup_coideal, subgroup_name};
pub use fixtures::{
    build_fixture, load_fixture, sha256_hex, CoidealFile, Fixture, Manifest, PresentedCoidealFile,
    BUILDER_VERSION, FIXTURE_NAMES, PRESENTED_CUTOFF,
};
pub use groups::GroupTable;
pub use quantum::{podles_nonstandard, podles_standard, suq2};
