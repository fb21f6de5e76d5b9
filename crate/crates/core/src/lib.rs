//! Cauchy-type singular integrals on contours and arcs, the Hilbert transform
//! family, Plemelj limits and the flat-plate airfoil.

pub mod airfoil;
pub mod cauchy;
pub mod error;
pub mod function;
pub mod geometry;
pub mod hilbert;
pub mod plemelj;
pub mod singularity;

pub use error::{Error, Result};
pub use function::{BoundaryFunction, ComplexFn};
pub use num_complex::Complex64;
