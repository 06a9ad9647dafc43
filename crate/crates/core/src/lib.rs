//! Exact polynomial de Rham theory on finite simplicial sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] and [`rational`]: exact sparse linear algebra over ℚ.
//! * [`sset`] and [`cochain`]: finite simplicial sets, normalized cochains, cup products.
//! * [`homalg`]: cohomology, induced maps, quasi-isomorphism tests, the cone contraction.
//! * [`polyform`]: polynomial differential forms on standard simplices.
//! * [`forms`]: forms on a simplicial set, integration, the Whitney section,
//!   the comparison maps through the tensor complex, and truncated cohomology.
//! * [`derham`]: the end-to-end de Rham check.
//! * [`bar`]: bar constructions, filtered complexes and spectral sequences.

pub mod bar;
pub mod cochain;
pub mod derham;
pub mod error;
pub mod forms;
pub mod homalg;
pub mod linalg;
pub mod polyform;
pub mod rational;
pub mod sset;

pub use error::{Error, Result};
pub use rational::Q;
