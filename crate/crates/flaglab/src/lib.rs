//! Exhaustive checks over finite fields for `G = GL_n`: Bruhat positions,
//! partial flags, point sets of parabolic Lusztig and Deligne–Lusztig
//! varieties with their coverings, and the stabilizer, orbit and slice
//! statements attached to good-position certificates of `S_n`.
//!
//! Everything is enumerated point by point, so sizes are capped by
//! [`group::MAX_GROUP_ORDER`], [`flags::MAX_FLAGS`] and
//! [`subgroups::MAX_LEVI_ORDER`]; larger requests fail with
//! [`Error::Resource`].

pub mod bruhat;
pub mod checks;
pub mod dl;
pub mod error;
pub mod flags;
pub mod gf;
pub mod group;
pub mod lusztig;
pub mod mat;
pub mod report;
pub mod subgroups;
pub mod suites;

pub use bruhat::bruhat_position;
pub use error::{Error, Result};
pub use flags::{relative_position, FlagPoint, FlagVariety};
pub use gf::Gf;
pub use group::GlGroup;
pub use mat::Mat;
pub use report::Report;
pub use subgroups::SubgroupSets;
pub use suites::{run_flagcheck, run_slicecheck, FlagConfig, Suite};
