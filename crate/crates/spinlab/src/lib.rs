//! Computational spin geometry on the three-dimensional model spaces.
//!
//! The crate builds explicit matrix models of the irreducible SU(2)
//! representations, derives the Clifford-type homomorphisms between
//! neighbouring spin levels from tensor-product decompositions, and uses
//! them to construct and machine-verify higher spin Killing spinors and
//! Killing tensors on the round sphere, hyperbolic space and flat space.

pub mod clifford;
pub mod cone;
pub mod error;
pub mod identities;
pub mod killing;
pub mod linalg;
pub mod report;
pub mod spaces;
pub mod su2;
pub mod suite;
pub mod tensors;

pub use clifford::CliffordTriple;
pub use error::{Error, Result};
pub use linalg::{CMat, CVec};
pub use report::{IdentityCheck, VerificationReport};
pub use spaces::{Point, S3Point, Space, SpinorField};
pub use su2::{Basis, Irrep, SpinLabel};
pub use tensors::SymmetricTensorField;
