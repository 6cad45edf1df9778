//! Exact computations with graded modules over F_p[X,Y,Z,T]: Gröbner bases,
//! minimal free resolutions, cohomology of the associated sheaves on P^3,
//! Rao modules, and the liaison constructions for curves built on them.

pub mod cohomology;
pub mod correspondences;
pub mod error;
pub mod liaison;
pub mod linalg;
pub mod poly;
pub mod resolution;
pub mod sharp;

pub use error::{Error, Result};
