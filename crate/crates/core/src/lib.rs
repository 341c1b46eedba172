//! Exact-arithmetic kernel for symplectic left/right Leibniz algebras.

pub mod algebra;
pub mod catalog;
pub mod core_decomposition;
pub mod error;
pub mod exactlin;
pub mod extension;
pub mod report;
pub mod symplectic;

pub use algebra::{Algebra, Failure, IdentityReport};
pub use core_decomposition::{core, verify_core_properties, CoreDecomposition};
pub use error::{Error, LinError, Result};
pub use extension::{ExtensionData, RankOneData, SymplecticLie};
pub use exactlin::{Matrix, Rational, Subspace, Vector};
pub use report::{CheckReport, NamedCheck};
pub use symplectic::{Side, SkewForm, SymplecticAlgebra};
