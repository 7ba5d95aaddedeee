//! β(1,0)-trees, the involution `h` on them, and the structure of its fixed
//! points, together with the companion world of rooted non-separable planar
//! maps.
//!
//! The crate is organised by object:
//!
//! - [`tree`]: labelled plane trees, validation, statistics, decompositions
//!   and exhaustive generation.
//! - [`involution`]: the recursive involution `h` and its statistic swap.
//! - [`fixed_points`]: the F0/F1/F2 description of `h`-fixed trees, direct
//!   enumeration and closed-form counts.
//! - [`series`]: exact truncated bivariate power series and the generating
//!   function identities tying fixed points to non-separable maps.
//! - [`maps`]: rooted planar maps as rotation systems, duality, rooted
//!   isomorphism codes.
//! - [`bijection`]: the standard bijection from trees to maps.
//! - [`symmetry`]: ternary, even and non-crossing trees under reflection.
//! - [`audit`]: the aggregate consistency checks run by `beta10 verify`.

pub mod audit;
pub mod bijection;
mod combinatorics;
pub mod fixed_points;
pub mod involution;
pub mod maps;
pub mod series;
pub mod symmetry;
pub mod tree;

pub use bijection::{tree_to_map, BijectionIndex};
pub use combinatorics::binomial;
pub use fixed_points::{classify, count_fixed, enumerate_fixed, is_fixed, FixedPointStructure};
pub use involution::h;
pub use maps::{CanonicalMapCode, RootedMap};
pub use series::TruncatedBiSeries;
pub use tree::{generate_all, BetaTree, TreeStats};
