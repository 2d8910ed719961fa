//! Exact computation of the discrete data behind basic gerbes over
//! non-simply connected compact simple Lie groups G/Z.
//!
//! The crate computes, in arbitrary-precision rational arithmetic: the
//! action of the center Z on the fundamental Weyl alcove, the lifted
//! 2-cocycle exponents e, the obstruction 3-cocycle U on Z, the minimal
//! level k at which the cohomological equation `delta u = U` becomes
//! solvable, explicit solutions u with their classification up to
//! coboundary, and exhaustive verification of the identities these objects
//! satisfy. No floating point is used anywhere; every check is an exact
//! equality.

pub mod center;
pub mod cohomology;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod root_data;
pub mod snf;

pub use error::{Error, Result};
pub use root_data::{Family, RootSystem};
