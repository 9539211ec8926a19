//! Exact computations with finite-dimensional Leibniz algebras given by
//! structure constants over `Q` or `GF(p)`, centred on the
//! centraliser-transitive (CT) property.

pub mod algebra;
pub mod census;
pub mod ct;
pub mod error;
pub mod families;
pub mod field;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod report;
pub mod theorems;

pub use algebra::{make_algebra, AnyAlgebra, LeibnizAlgebra};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use linalg::{Matrix, Subspace};
